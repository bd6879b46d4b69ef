import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fotrans.errors import FormulaSyntaxError, UnboundVariableError
from fotrans.graphs import (ColoredGraph, complete, cycle, diameter,
                            disjoint_union, edgeless, graphs_up_to, half_graph,
                            path)
from fotrans.logic import (FALSE, TRUE, And, DistLeq, EdgeAtom, Equals, Exists,
                           Forall, Iff, Implies, Not, Or, PredAtom, all_vars,
                           evaluate, expanded_quantifier_rank, fold_constants,
                           free_vars, is_r_local_on_corpus,
                           is_strongly_r_local_on_corpus, parse,
                           quantifier_rank, rename_free, solution_set, swap_xy,
                           to_text, zeta_formula)


def bare(g):
    return ColoredGraph.bare(g)


class TestParser:
    def test_atoms(self):
        assert parse("E(x,y)") == EdgeAtom("x", "y")
        assert parse("M(x)") == PredAtom("M", "x")
        assert parse("x=y") == Equals("x", "y")
        assert parse("dist(x,y)<=3") == DistLeq("x", "y", 3)
        assert parse("true") == TRUE
        assert parse("false") == FALSE

    def test_quantifier_scope_is_maximal(self):
        f = parse("ex y. E(x,y) & M(y)")
        assert f == Exists("y", And(EdgeAtom("x", "y"), PredAtom("M", "y")))
        f = parse("all x. ex y. E(x,y)")
        assert f == Forall("x", Exists("y", EdgeAtom("x", "y")))

    def test_precedence(self):
        f = parse("!E(x,y) & M(x) | M(y) -> x=y <-> true")
        assert isinstance(f, Iff)
        assert isinstance(f.left, Implies)
        assert isinstance(f.left.left, Or)
        assert isinstance(f.left.left.left, And)
        assert isinstance(f.left.left.left.left, Not)

    def test_implies_right_associative(self):
        f = parse("M(x) -> N(x) -> x=x")
        assert isinstance(f, Implies)
        assert isinstance(f.right, Implies)

    def test_syntax_errors_carry_position(self):
        with pytest.raises(FormulaSyntaxError) as err:
            parse("E(x,,y)")
        assert err.value.line == 1 and err.value.column == 5
        with pytest.raises(FormulaSyntaxError):
            parse("E(x)")
        with pytest.raises(FormulaSyntaxError):
            parse("M(x,y)")
        with pytest.raises(FormulaSyntaxError):
            parse("ex . E(x,y)")
        with pytest.raises(FormulaSyntaxError):
            parse("E(x,y) E(y,x)")
        with pytest.raises(FormulaSyntaxError):
            parse("dist(x,y)<4")


FORMULA_LEAVES = st.sampled_from([
    EdgeAtom("x", "y"), PredAtom("M", "x"), PredAtom("N", "y"),
    Equals("x", "y"), DistLeq("x", "y", 2), TRUE, FALSE,
])


def formula_nodes(children):
    return st.one_of(
        st.tuples(children).map(lambda t: Not(t[0])),
        st.tuples(children, children).map(lambda t: And(*t)),
        st.tuples(children, children).map(lambda t: Or(*t)),
        st.tuples(children, children).map(lambda t: Implies(*t)),
        st.tuples(children, children).map(lambda t: Iff(*t)),
        st.tuples(st.sampled_from(["x", "y", "z"]), children).map(
            lambda t: Exists(*t)),
        st.tuples(st.sampled_from(["x", "y", "z"]), children).map(
            lambda t: Forall(*t)),
    )


FORMULAS = st.recursive(FORMULA_LEAVES, formula_nodes, max_leaves=12)


class TestSerializer:
    @given(FORMULAS)
    @settings(max_examples=200)
    def test_round_trip(self, f):
        assert parse(to_text(f)) == f

    def test_negated_quantifier_needs_parens(self):
        f = And(Not(Exists("y", EdgeAtom("x", "y"))), PredAtom("M", "x"))
        assert parse(to_text(f)) == f


class TestEvaluate:
    def test_examples(self):
        assert evaluate(bare(path(3)), parse("E(x,y)"), {"x": 0, "y": 1})
        assert evaluate(bare(path(3)), parse("dist(x,y)<=2"), {"x": 0, "y": 2})
        assert evaluate(bare(half_graph(2)), parse("ex y. !E(x,y)"), {"x": 1})

    def test_missing_predicate_is_empty(self):
        assert not evaluate(bare(path(2)), parse("M(x)"), {"x": 0})

    def test_distance_infinite_across_components(self):
        g = bare(disjoint_union(edgeless(1), edgeless(1)))
        assert not evaluate(g, parse("dist(x,y)<=99"), {"x": 0, "y": 1})

    def test_unbound_variable(self):
        with pytest.raises(UnboundVariableError):
            evaluate(bare(path(2)), parse("E(x,y)"), {"x": 0})

    def test_quantifier_shadowing(self):
        f = parse("ex x. (M(x) & ex x. N(x))")
        g = ColoredGraph(edgeless(2), {"M": {0}, "N": {1}})
        assert evaluate(g, f, {})

    @given(FORMULAS)
    @settings(max_examples=60)
    def test_total_and_deterministic(self, f):
        g = ColoredGraph(path(3), {"M": {0}, "N": {2}})
        a = {v: 0 for v in free_vars(f)}
        assert evaluate(g, f, a) == evaluate(g, f, a)


class TestSolutionSet:
    def test_examples(self):
        assert solution_set(bare(path(3)), parse("E(x,y)"), ["x", "y"]) == \
            {(0, 1), (1, 0), (1, 2), (2, 1)}
        assert solution_set(bare(path(3)), FALSE, []) == set()

    def test_half_graph_pairs(self):
        g = bare(half_graph(2))
        pairs = {(u, v) for u, v in
                 solution_set(g, parse("E(x,y)"), ["x", "y"]) if u < 2 <= v}
        assert pairs == {(0, 2), (0, 3), (1, 3)}

    def test_vars_must_match(self):
        with pytest.raises(ValueError):
            solution_set(bare(path(2)), parse("E(x,y)"), ["x"])

    @given(st.integers(2, 4))
    def test_complement_property(self, n):
        g = bare(path(n))
        f = parse("E(x,y)")
        pos = solution_set(g, f, ["x", "y"])
        neg = solution_set(g, Not(f), ["x", "y"])
        everything = set(itertools.product(range(n), repeat=2))
        assert pos | neg == everything and not pos & neg


class TestZeta:
    def test_examples(self):
        assert to_text(zeta_formula(1, complete(2))) == "dist(x1,x2)<=1"
        assert to_text(zeta_formula(2, edgeless(2))) == "!dist(x1,x2)<=2"
        f = zeta_formula(1, path(3))
        text = to_text(f)
        assert text.count("dist") == 3 and text.count("!") == 1

    def test_satisfaction_forces_distance(self):
        pattern = path(3)
        r = 2
        f = zeta_formula(r, pattern)
        g = bare(cycle(6))
        bound = r * diameter(pattern)
        from fotrans.graphs import distance
        for tup in solution_set(g, f, ["x1", "x2", "x3"]):
            for a, b in itertools.combinations(tup, 2):
                assert 0 <= distance(g.graph, a, b) <= bound


class TestLocality:
    def test_edge_atom_is_0_local(self, corpus4):
        assert is_r_local_on_corpus(parse("E(x,y)"), 0, corpus4).holds

    def test_exists_neighbor(self, corpus4):
        report = is_r_local_on_corpus(parse("ex y. E(x,y)"), 0, corpus4)
        assert not report.holds
        assert report.witness is not None
        cg, tup = report.witness
        assert cg.graph.edges  # the witness has a neighbor outside the 0-ball
        assert is_r_local_on_corpus(parse("ex y. E(x,y)"), 1, corpus4).holds

    def test_strong_locality(self, corpus4):
        f = parse("E(x,y) & dist(x,y)<=1")
        assert is_strongly_r_local_on_corpus(f, 1, corpus4).holds
        report = is_strongly_r_local_on_corpus(
            parse("!E(x,y)"), 1, [bare(disjoint_union(edgeless(1), edgeless(1)))])
        assert not report.holds
        zeta = zeta_formula(2, complete(2))
        assert is_strongly_r_local_on_corpus(zeta, 2, corpus4).holds

    def test_strong_implies_local(self, corpus4):
        for text, r in (("E(x,y)", 1), ("dist(x,y)<=2", 2), ("x=y", 0)):
            f = parse(text)
            if is_strongly_r_local_on_corpus(f, r, corpus4).holds:
                assert is_r_local_on_corpus(f, r, corpus4).holds

    def test_sentences_are_rejected(self, corpus4):
        with pytest.raises(ValueError):
            is_r_local_on_corpus(parse("ex x. M(x)"), 1, corpus4)


class TestRanks:
    def test_quantifier_rank(self):
        assert quantifier_rank(parse("E(x,y)")) == 0
        assert quantifier_rank(parse("ex y. E(x,y)")) == 1
        assert quantifier_rank(parse("all x. ex y. E(x,y)")) == 2

    def test_dist_builtin_reported_separately(self):
        f = parse("dist(x,y)<=3")
        assert quantifier_rank(f) == 0
        assert expanded_quantifier_rank(f) == 2  # ceil(log2(4))
        assert expanded_quantifier_rank(parse("ex z. dist(x,z)<=7")) == 4


class TestRenaming:
    def test_swap(self):
        assert swap_xy(parse("E(x,y)")) == EdgeAtom("y", "x")

    def test_capture_avoided(self):
        f = Exists("x", And(EdgeAtom("x", "y"), PredAtom("M", "x")))
        swapped = rename_free(f, {"y": "x"})
        assert swapped.var != "x"
        assert free_vars(swapped) == {"x"}

    def test_for_diameter_bound(self):
        for g in (path(4), cycle(5)):
            d = diameter(g)
            f = DistLeq("x", "y", d)
            for a in range(g.n):
                for b in range(g.n):
                    assert evaluate(bare(g), f, {"x": a, "y": b})


class TestFolding:
    def test_fold_constants(self):
        assert fold_constants(parse("E(x,y) & true")) == EdgeAtom("x", "y")
        assert fold_constants(parse("E(x,y) | true")) == TRUE
        assert fold_constants(Not(Not(EdgeAtom("x", "y")))) == EdgeAtom("x", "y")
        assert fold_constants(Iff(parse("E(x,y)"), TRUE)) == EdgeAtom("x", "y")

    @given(FORMULAS)
    @settings(max_examples=60)
    def test_fold_preserves_semantics(self, f):
        g = ColoredGraph(path(3), {"M": {0}})
        a = {v: 1 for v in free_vars(f)}
        assert evaluate(g, fold_constants(f), a) == evaluate(g, f, a)

    def test_all_vars(self):
        assert all_vars(parse("ex z. E(x,z)")) == {"x", "z"}
