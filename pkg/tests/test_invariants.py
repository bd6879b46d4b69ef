import random

import pytest

from fotrans.errors import BudgetExceededError, SizeLimitError
from fotrans.graphs import (ColoredGraph, complete, complete_binary_tree,
                            cycle, edgeless, graphs_up_to, half_graph, path,
                            power, powerset_graph, random_graph)
from fotrans.invariants import (PatternWitness, bandwidth,
                                half_graph_pattern_max, independence_property,
                                is_star_coloring, order_property, pathwidth,
                                star_chromatic_number, treewidth,
                                verify_half_graph_witness,
                                verify_independence_witness,
                                verify_order_witness)
from fotrans.logic import parse
from oracles import (brute_bandwidth, brute_chromatic, brute_pathwidth,
                     brute_star_chromatic, brute_treewidth)


def bare(g):
    return ColoredGraph.bare(g)


E = parse("E(x,y)")


class TestWidthTable:
    def test_bandwidth(self):
        assert bandwidth(path(6)) == 1
        assert bandwidth(cycle(4)) == 2
        assert bandwidth(power(path(6), 3)) == 3

    def test_pathwidth(self):
        assert pathwidth(path(6)) == 1
        assert pathwidth(cycle(4)) == 2
        assert pathwidth(complete(4)) == 3

    def test_treewidth(self):
        assert treewidth(complete_binary_tree(2)) == 1
        assert treewidth(path(5)) == 1
        assert treewidth(cycle(5)) == 2
        assert treewidth(complete(4)) == 3

    def test_star_chromatic(self):
        assert star_chromatic_number(edgeless(5)) == 1
        assert star_chromatic_number(complete(3)) == 3
        assert star_chromatic_number(path(4)) == 3

    def test_orderings_are_certificates(self):
        value, order = bandwidth(cycle(5), with_ordering=True)
        pos = {v: i for i, v in enumerate(order)}
        assert max(abs(pos[u] - pos[v]) for u, v in cycle(5).edges) == value
        count, colors = star_chromatic_number(path(4), with_coloring=True)
        assert is_star_coloring(path(4), colors)
        assert max(colors) == count


class TestAgainstOracles:
    def test_widths_on_all_small_graphs(self):
        for g in graphs_up_to(5):
            assert bandwidth(g) == brute_bandwidth(g), g
            assert pathwidth(g) == brute_pathwidth(g), g
            assert treewidth(g) == brute_treewidth(g), g

    def test_widths_on_random_6_vertex_graphs(self):
        rng = random.Random(11)
        for _ in range(15):
            g = random_graph(6, rng.choice((0.3, 0.5, 0.7)), rng)
            assert bandwidth(g) == brute_bandwidth(g), g
            assert pathwidth(g) == brute_pathwidth(g), g
            assert treewidth(g) == brute_treewidth(g), g

    def test_star_chromatic_small(self):
        for g in graphs_up_to(4):
            assert star_chromatic_number(g) == brute_star_chromatic(g), g

    def test_star_at_least_chromatic(self):
        rng = random.Random(5)
        for _ in range(10):
            g = random_graph(5, 0.5, rng)
            assert star_chromatic_number(g) >= brute_chromatic(g)


class TestWidthProperties:
    def test_bandwidth_of_path_powers(self):
        for n in range(2, 9):
            for k in range(1, n - 1):
                assert bandwidth(power(path(n), k)) == k

    def test_inequalities(self):
        rng = random.Random(17)
        for _ in range(40):
            g = random_graph(rng.randrange(2, 9), rng.random(), rng)
            tw = treewidth(g)
            pw = pathwidth(g)
            bw = bandwidth(g)
            assert tw <= pw <= bw, g

    def test_size_caps(self):
        with pytest.raises(SizeLimitError):
            bandwidth(edgeless(13))
        with pytest.raises(SizeLimitError):
            pathwidth(edgeless(13))
        with pytest.raises(SizeLimitError):
            treewidth(edgeless(13))
        with pytest.raises(SizeLimitError):
            star_chromatic_number(edgeless(15))

    def test_cap_override(self, monkeypatch):
        monkeypatch.setenv("FOTRANS_MAX_VERTICES", "13")
        assert bandwidth(edgeless(13)) == 0


class TestHalfGraphPattern:
    def test_half_graphs_realize_their_length(self):
        for n in range(1, 6):
            best, witness = half_graph_pattern_max(bare(half_graph(n)), E, n + 1)
            assert best == n
            assert verify_half_graph_witness(bare(half_graph(n)), E, witness)

    def test_canonical_witness_on_h3(self):
        best, witness = half_graph_pattern_max(bare(half_graph(3)), E, 4)
        assert best == 3
        assert witness.a_tuples == ((0,), (1,), (2,))
        assert witness.b_tuples == ((3,), (4,), (5,))

    def test_edgeless_has_no_pattern(self):
        assert half_graph_pattern_max(bare(edgeless(6)), E, 3) == (0, None)

    def test_path8_caps_at_two(self):
        # oracle: a_1 would need three distinct neighbors, impossible in a path
        assert half_graph_pattern_max(bare(path(8)), E, 4)[0] == 2

    def test_cap_limits_search(self):
        best, _ = half_graph_pattern_max(bare(half_graph(5)), E, 3)
        assert best == 3


class TestOrderProperty:
    def test_false_formula_at_one(self):
        w = order_property(bare(path(2)), parse("false"), 1, 2 ** 10)
        assert w is not None and len(w.a_tuples) == 1

    def test_edgeless_fails(self):
        assert order_property(bare(edgeless(4)), E, 2, 2 ** 10) is None

    def test_marked_half_graph(self):
        phi = parse("all z. (B(z) -> (E(z,y) -> E(z,x)))")
        g = ColoredGraph(half_graph(3), {"B": {3, 4, 5}})
        w = order_property(g, phi, 3, 2 ** 20)
        assert w is not None
        assert w.a_tuples == ((0,), (1,), (2,))
        assert verify_order_witness(g, phi, w)

    def test_prefix_of_witness_verifies(self):
        phi = parse("all z. (B(z) -> (E(z,y) -> E(z,x)))")
        g = ColoredGraph(half_graph(4), {"B": {4, 5, 6, 7}})
        w = order_property(g, phi, 4, 2 ** 20)
        assert w is not None
        prefix = PatternWitness("order", w.a_tuples[:3])
        assert verify_order_witness(g, phi, prefix)

    def test_check_diagonal_flag(self):
        phi = parse("all z. (B(z) -> (E(z,y) -> E(z,x)))")
        g = ColoredGraph(half_graph(3), {"B": {3, 4, 5}})
        # the construction's formula holds reflexively, so the diagonal
        # reading rejects it
        assert order_property(g, phi, 3, 2 ** 20, check_diagonal=True) is None

    def test_budget(self):
        with pytest.raises(BudgetExceededError):
            order_property(bare(half_graph(4)), E, 4, 10)


class TestIndependenceProperty:
    def test_powerset_graph(self):
        for n in (1, 2, 3):
            g = bare(powerset_graph(n))
            w = independence_property(g, E, n, 2 ** 22)
            assert w is not None
            assert verify_independence_witness(g, E, w)

    def test_edgeless_fails_at_one(self):
        assert independence_property(bare(edgeless(8)), E, 1, 2 ** 10) is None

    def test_complete_succeeds_without_distinctness(self):
        # b for the empty trace may coincide with a_1 (E is irreflexive)
        w = independence_property(bare(complete(4)), E, 1, 2 ** 10)
        assert w is not None

    def test_complete_fails_with_distinctness(self):
        assert independence_property(bare(complete(4)), E, 1, 2 ** 10,
                                     distinct=True) is None

    def test_budget(self):
        with pytest.raises(BudgetExceededError):
            independence_property(bare(powerset_graph(3)), E, 3, 100)
