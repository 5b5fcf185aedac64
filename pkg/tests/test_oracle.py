"""
Unit tests for the brute-force oracles and size bounds
"""
import unittest
from itertools import combinations
from math import comb

from hypothesis import given, settings

from src.edge_alternating import EdgeAltGraph
from src.errors import EnumerationCapExceeded
from src.generators import pnk
from src.graph import Graph
from src.oracle import (Colosseum, arena_size, brute_force_pathwidth, brute_force_treewidth, build_colosseum,
                        check_universal_consistency, claw_free_upper_bound, colosseum_lower_bound, colosseum_size,
                        general_graph_searching, pnk_colosseum_lower_bound, treedepth_recursive, winning_configs,
                        winning_region)
from tests.graph_strategies import clique, cycle, graphs, path, star


def _subset_colosseum(graph: Graph, k: int) -> int:
    return sum(1 for c in range(1, graph.full + 1) if graph.neighborhood(c).bit_count() <= k)


class TestGameSolver(unittest.TestCase):
    """Test the memoised recursive game."""

    def test_clique_needs_n_searchers(self):
        self.assertTrue(general_graph_searching(clique(4), 4))
        self.assertFalse(general_graph_searching(clique(4), 3))

    def test_path_needs_two(self):
        self.assertTrue(general_graph_searching(path(4), 2))
        self.assertFalse(general_graph_searching(path(4), 1))

    def test_edgeless_needs_one(self):
        self.assertTrue(general_graph_searching(Graph.from_edges(3, []), 1))

    @settings(max_examples=40, deadline=None)
    @given(graphs(max_n=7))
    def test_agrees_with_elimination_orderings(self, g):
        tw = brute_force_treewidth(g)
        self.assertTrue(general_graph_searching(g, tw + 1))
        if tw > 0:
            self.assertFalse(general_graph_searching(g, tw))


class TestColosseum(unittest.TestCase):
    """Test colosseum enumeration and arcs."""

    def test_winning_configs_are_low_degree_singletons(self):
        self.assertEqual(winning_configs(star(3), 2), {0b0010, 0b0100, 0b1000})

    @settings(max_examples=40, deadline=None)
    @given(graphs(max_n=7))
    def test_separator_enumeration_matches_subsets(self, g):
        """Test separator-driven counting equals the plain subset count."""
        for k in range(0, g.n + 1):
            self.assertEqual(colosseum_size(g, k), _subset_colosseum(g, k))

    def test_build_orders_by_popcount(self):
        h = build_colosseum(path(4), 2)
        sizes = [c.bit_count() for c in h.vertices]
        self.assertEqual(sizes, sorted(sizes))

    def test_arcs(self):
        """Test fly arcs need a free searcher and reveals need two components."""
        g = path(3)
        h = build_colosseum(g, 2)
        existential, universal = h.labelled_arcs()
        self.assertIn((0b111, 0b101), existential)
        self.assertEqual({(0b101, 0b001), (0b101, 0b100)}, {a for a in universal if a[0] == 0b101})
        # N({a, b}) = {c}: one searcher, so a fly-move is allowed
        self.assertIn((0b011, 0b001), existential)

    def test_cap(self):
        with self.assertRaises(EnumerationCapExceeded):
            Colosseum(path(8), cap=5)

    def test_winning_region_on_path(self):
        g = path(4)
        h = build_colosseum(g, 2)
        region = winning_region(h, winning_configs(g, 2))
        self.assertIn(g.full, region)
        h1 = build_colosseum(g, 1)
        self.assertNotIn(g.full, winning_region(h1, winning_configs(g, 1)))


class TestUniversalConsistency(unittest.TestCase):
    """Test the closure property on small colosseums."""

    @settings(max_examples=25, deadline=None)
    @given(graphs(max_n=7))
    def test_holds_at_least_winning_k(self, g):
        k = brute_force_treewidth(g) + 1
        h = build_colosseum(g, k)
        report = check_universal_consistency(h, winning_configs(g, k))
        self.assertTrue(report.consistent, report.violation)

    def test_cycle(self):
        g = cycle(6)
        report = check_universal_consistency(build_colosseum(g, 3), winning_configs(g, 3))
        self.assertTrue(report)
        self.assertTrue(report.complete)

    def test_universal_child_outside_region(self):
        """Test a winning vertex whose reveal reaches a losing sink is flagged."""
        h = EdgeAltGraph()
        s, g, x = (h.add_vertex(label) for label in ('s', 'g', 'x'))
        h.add_existential(s, g)
        h.add_universal(s, g)
        h.add_universal(s, x)
        self.assertEqual(winning_region(h, {'g'}), {'s', 'g'})
        report = check_universal_consistency(h, {'g'})
        self.assertFalse(report)
        self.assertTrue(report.complete)
        self.assertIn("universal child of 's' outside the winning region", report.violation)

    def test_missing_sub_fan(self):
        """Test a three-way reveal without any winning two-way reveal is flagged."""
        h = EdgeAltGraph()
        v = h.add_vertex('v')
        for goal in ('a', 'b', 'c'):
            h.add_universal(v, h.add_vertex(goal))
        report = check_universal_consistency(h, {'a', 'b', 'c'})
        self.assertFalse(report.consistent)
        self.assertIn("sub-fan of 'v'", report.violation)

    def test_fan_out_cap_marks_incomplete(self):
        h = EdgeAltGraph()
        v = h.add_vertex('v')
        for goal in ('a', 'b', 'c'):
            h.add_universal(v, h.add_vertex(goal))
        with self.assertLogs('src.oracle', level='WARNING'):
            report = check_universal_consistency(h, {'a', 'b', 'c'}, fan_out_cap=2)
        self.assertTrue(report)
        self.assertFalse(report.complete)
        self.assertEqual(report.skipped, 1)


class TestBruteForceParameters(unittest.TestCase):
    """Test the exhaustive parameter solvers on known families."""

    def test_clique(self):
        self.assertEqual(brute_force_treewidth(clique(5)), 4)
        self.assertEqual(brute_force_pathwidth(clique(5)), 4)
        self.assertEqual(treedepth_recursive(clique(5)), 5)

    def test_trees(self):
        self.assertEqual(brute_force_treewidth(star(4)), 1)
        self.assertEqual(brute_force_pathwidth(path(6)), 1)
        self.assertEqual(brute_force_treewidth(cycle(6)), 2)

    def test_path_treedepth_is_log(self):
        """Test td(P_n) = ceil(log2(n + 1))."""
        for n, expected in [(1, 1), (2, 2), (3, 2), (4, 3), (7, 3), (8, 4)]:
            self.assertEqual(treedepth_recursive(path(n)), expected)

    def test_single_vertex(self):
        g = Graph.from_edges(1, [])
        self.assertEqual(brute_force_treewidth(g), 0)
        self.assertEqual(brute_force_pathwidth(g), 0)

    @settings(max_examples=40, deadline=None)
    @given(graphs(max_n=7))
    def test_width_chain(self, g):
        """Test tw <= pw <= td - 1."""
        tw, pw, td = brute_force_treewidth(g), brute_force_pathwidth(g), treedepth_recursive(g)
        self.assertLessEqual(tw, pw)
        self.assertLessEqual(pw, td - 1)


class TestBounds(unittest.TestCase):
    """Test closed-form size formulas."""

    def test_arena_size(self):
        self.assertEqual(arena_size(11, 6), 660)
        self.assertEqual(arena_size(14, 6), 6864)

    def test_pnk_arena(self):
        for n, k in [(4, 2), (6, 2), (6, 3)]:
            self.assertEqual(arena_size(n * k + 2, 2 * k), 2 * comb(n * k + 2, 2 * k + 1))

    def test_pnk_colosseum_lower_bound(self):
        for n, k in [(4, 2), (6, 2)]:
            g = pnk(n, k)
            self.assertGreaterEqual(colosseum_size(g, 2 * k), pnk_colosseum_lower_bound(n, k))
        self.assertEqual(pnk_colosseum_lower_bound(6, 2), sum(comb(12, i) for i in range(1, 5)))

    @settings(max_examples=25, deadline=None)
    @given(graphs(max_n=7))
    def test_degree_class_lower_bound(self, g):
        for k in range(1, g.n + 1):
            self.assertGreaterEqual(colosseum_size(g, k), colosseum_lower_bound(g, k))

    def test_claw_free_upper_bound_formula(self):
        self.assertEqual(claw_free_upper_bound(3, 2), 3 * 4 + 3 * 16)


if __name__ == '__main__':
    unittest.main()
