import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fotrans.errors import BudgetExceededError, EmptyComparisonError
from fotrans.graphs import (ColoredGraph, Graph, complete, edgeless, path)
from fotrans.logic import parse
from fotrans.transduction import (Copy, Expand, Interpret, Interpretation,
                                  SubsetComplement, Transduction,
                                  apply_with_coloring, coloring_space_bound,
                                  compose, distance_shrink_ratio,
                                  dumps_transduction, identity_interpretation,
                                  identity_transduction, loads_transduction,
                                  output_set, perturbation, subsumes_on_corpus,
                                  witness_search)
from test_graphs import small_graphs


def bare(g):
    return ColoredGraph.bare(g)


COMPLEMENT_M = Transduction((SubsetComplement("M"),))
EXPAND_COMPLEMENT = Transduction((Expand(("M",)), SubsetComplement("M")))


class TestInterpretation:
    def test_identity(self):
        out, kept = identity_interpretation().apply(bare(path(4)))
        assert out == path(4) and kept == (0, 1, 2, 3)

    def test_symmetrization(self):
        # asymmetric edge formula still yields symmetric irreflexive edges
        interp = Interpretation(parse("true"), parse("E(x,y) & M(x)"))
        cg = ColoredGraph(path(3), {"M": {0}})
        out, _ = interp.apply(cg)
        assert out.edges == frozenset({(0, 1)})

    def test_irreflexive(self):
        # x=y only holds on the diagonal, which the constructor excludes
        interp = Interpretation(parse("true"), parse("x=y"))
        out, _ = interp.apply(bare(edgeless(3)))
        assert out.edges == frozenset()
        # tautological edge formulas give the complete graph, no loops
        interp = Interpretation(parse("true"), parse("x=x"))
        out, _ = interp.apply(bare(edgeless(3)))
        assert out == complete(3)

    def test_domain_restriction(self):
        interp = Interpretation(parse("M(x)"), parse("E(x,y)"))
        cg = ColoredGraph(path(4), {"M": {1, 2, 3}})
        out, kept = interp.apply(cg)
        assert kept == (1, 2, 3)
        assert out == path(3)

    def test_variable_conventions(self):
        with pytest.raises(ValueError):
            Interpretation(parse("M(z)"), parse("E(x,y)"))
        with pytest.raises(ValueError):
            Interpretation(parse("true"), parse("E(x,z)"))


class TestApply:
    def test_subset_complement_p3(self):
        cg = ColoredGraph(path(3), {"M": {0, 2}})
        assert apply_with_coloring(COMPLEMENT_M, cg, []).graph == complete(3)

    def test_involution(self):
        cg = ColoredGraph(path(3), {"M": {0, 2}})
        twice = compose(COMPLEMENT_M, COMPLEMENT_M)
        assert apply_with_coloring(twice, cg, []).graph == path(3)

    def test_identity_interpret(self):
        t = Transduction((Interpret(identity_interpretation()),))
        for g in (path(4), complete(3)):
            assert apply_with_coloring(t, bare(g), []).graph == g

    def test_interpret_drops_predicates(self):
        t = Transduction((Interpret(identity_interpretation()),))
        out = apply_with_coloring(t, ColoredGraph(path(2), {"M": {0}}), [])
        assert out.predicates == {}

    def test_choice_arity_mismatch(self):
        with pytest.raises(ValueError):
            apply_with_coloring(EXPAND_COMPLEMENT, bare(path(2)), [])
        with pytest.raises(ValueError):
            apply_with_coloring(COMPLEMENT_M, bare(path(2)), [frozenset()])

    @given(small_graphs(max_n=5), st.sets(st.integers(0, 4)))
    @settings(max_examples=60)
    def test_complement_involution_property(self, g, members):
        members = {v for v in members if v < g.n}
        cg = ColoredGraph(g, {"M": members})
        once = apply_with_coloring(COMPLEMENT_M, cg, []).graph
        again = apply_with_coloring(COMPLEMENT_M,
                                    ColoredGraph(once, {"M": members}), []).graph
        assert again == g


class TestOutputSet:
    def test_no_expansion_is_singleton(self):
        t = Transduction((Interpret(identity_interpretation()),))
        assert output_set(t, bare(path(3)), 100) == frozenset({path(3)})

    def test_perturbation_on_k1(self):
        t = EXPAND_COMPLEMENT
        assert output_set(t, bare(edgeless(1)), 100) == frozenset({edgeless(1)})

    def test_perturbation_on_p2(self):
        outs = output_set(EXPAND_COMPLEMENT, bare(path(2)), 100)
        assert outs == frozenset({path(2), edgeless(2)})

    def test_budget_is_loud(self):
        with pytest.raises(BudgetExceededError) as err:
            output_set(EXPAND_COMPLEMENT, bare(path(5)), 4)
        assert err.value.required == 32

    def test_unread_expansion_does_not_change_outputs(self):
        base = Transduction((Expand(("M",)), SubsetComplement("M")))
        padded = Transduction((Expand(("M", "Unused")), SubsetComplement("M")))
        for g in (path(2), path(3)):
            assert output_set(base, bare(g), 2 ** 10) == \
                output_set(padded, bare(g), 2 ** 10)

    def test_expansion_after_interpret(self):
        t = Transduction((
            Interpret(Interpretation(parse("M(x)"), parse("E(x,y)"))),
            Expand(("Z",)),
            SubsetComplement("Z"),
        ))
        # first stage keeps nothing (M absent), so Z ranges over 1 subset
        outs = output_set(t, bare(path(3)), 100)
        assert outs == frozenset({Graph(0, frozenset())})


class TestWitnessSearch:
    def test_identity_found(self):
        t = identity_transduction()
        res = witness_search(t, bare(path(3)), path(3), 100)
        assert res.found and res.choices == () and res.tried == 1

    def test_complement_witness(self):
        res = witness_search(EXPAND_COMPLEMENT, bare(path(3)), complete(3), 100)
        assert res.found
        assert res.choices == (frozenset({0, 2}),)
        assert res.expansion.pred("M") == frozenset({0, 2})

    def test_not_found(self):
        res = witness_search(identity_transduction(), bare(path(3)),
                             complete(3), 100)
        assert not res.found and res.tried == 1

    def test_reapplication_reproduces_target(self):
        res = witness_search(EXPAND_COMPLEMENT, bare(path(3)), complete(3), 100)
        out = apply_with_coloring(EXPAND_COMPLEMENT, bare(path(3)), res.choices)
        assert out.graph == complete(3)

    def test_iso_mode(self):
        # target labeled differently: complement of P3 with middle vertex 0
        target = Graph.from_edges(3, [(1, 2)])
        shifted = Graph.from_edges(3, [(0, 1)])
        res = witness_search(identity_transduction(),
                             bare(shifted), target, 10, iso=True)
        assert res.found
        res = witness_search(identity_transduction(),
                             bare(shifted), target, 10, iso=False)
        assert not res.found


class TestCompose:
    def test_concatenation(self):
        t = compose(Transduction((Expand(("M",)),)), COMPLEMENT_M)
        assert t == EXPAND_COMPLEMENT

    def test_identity_composes_neutrally(self):
        t = EXPAND_COMPLEMENT
        for g in (path(2), path(3)):
            assert output_set(compose(identity_transduction(), t),
                              bare(g), 100) == output_set(t, bare(g), 100)

    def test_double_copy_flagged(self):
        raw = compose(Transduction((Copy(2),)), Transduction((Copy(2),)))
        assert not raw.is_normalized
        assert Transduction((Copy(2), Expand(("M",)))).is_normalized
        assert not Transduction((Expand(("M",)), Copy(2))).is_normalized


class TestSubsumption:
    def test_reflexive(self, corpus4):
        res = subsumes_on_corpus(EXPAND_COMPLEMENT, EXPAND_COMPLEMENT,
                                 corpus4[:6], 2 ** 12)
        assert res.holds

    def test_perturbation_subsumes_identity(self):
        res = subsumes_on_corpus(EXPAND_COMPLEMENT, identity_transduction(),
                                 [bare(path(2)), bare(path(3))], 2 ** 10)
        assert res.holds

    def test_counterexample(self):
        res = subsumes_on_corpus(identity_transduction(), EXPAND_COMPLEMENT,
                                 [bare(path(2))], 2 ** 10)
        assert not res.holds
        cg, missing = res.counterexample
        assert cg.graph == path(2) and missing == edgeless(2)


class TestPerturbation:
    def test_empty_is_identity(self):
        assert perturbation([]) == identity_transduction()

    def test_single(self):
        t = perturbation(["M"])
        outs = output_set(t, bare(path(2)), 100)
        assert outs == frozenset({path(2), edgeless(2)})

    def test_full_set_complements(self):
        t = perturbation(["M"])
        g = path(3)
        out = apply_with_coloring(t, bare(g), [frozenset(range(3))]).graph
        assert out == Graph.from_edges(3, [(0, 2)])

    @given(small_graphs(max_n=4))
    @settings(max_examples=30)
    def test_output_count_bound(self, g):
        t = perturbation(["A", "B"])
        outs = output_set(t, bare(g), 2 ** 18)
        assert len(outs) <= 2 ** (2 * g.n)


class TestDistanceShrinkRatio:
    def test_identity_is_one(self):
        assert distance_shrink_ratio(identity_interpretation(),
                                     bare(path(4))) == 1

    def test_square_of_path(self):
        interp = Interpretation(parse("true"), parse("dist(x,y)<=2"))
        assert distance_shrink_ratio(interp, bare(path(5))) == Fraction(1, 2)

    def test_empty_comparison(self):
        interp = Interpretation(parse("true"), parse("false"))
        with pytest.raises(EmptyComparisonError):
            distance_shrink_ratio(interp, bare(path(3)))


class TestFileFormat:
    def test_round_trip(self):
        text = ('copy 2\n'
                'expand M N\n'
                'interpret nu "M(x)" eta "E(x,y) & !N(y)"\n'
                'complement M\n')
        t = loads_transduction(text)
        assert isinstance(t.steps[0], Copy) and t.steps[0].k == 2
        assert t.expansion_names == ("M", "N")
        assert loads_transduction(dumps_transduction(t)) == t

    def test_canonical_echo_is_stable(self):
        text = 'interpret nu "true" eta "E(x,y)"\n'
        t = loads_transduction(text)
        assert dumps_transduction(t) == text

    def test_empty_is_identity(self):
        assert loads_transduction("# nothing\n") == identity_transduction()

    def test_bad_lines(self):
        with pytest.raises(ValueError):
            loads_transduction("frobnicate M\n")
        with pytest.raises(ValueError):
            loads_transduction("expand\n")
        with pytest.raises(ValueError):
            loads_transduction('interpret nu "true"\n')

    def test_space_bound(self):
        t = Transduction((Copy(2), Expand(("M",))))
        assert coloring_space_bound(t, 3) == 2 ** 6
