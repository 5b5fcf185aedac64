"""
Unit tests for pit discovery
"""
import io
import os
import unittest

import networkx as nx
import numpy as np
from hypothesis import given, settings

from src import corpus
from src.edge_alternating import WeightScheme, constant, distance
from src.errors import MemoryBudgetExceeded
from src.generators import pnk
from src.graph import Graph
from src.oracle import build_colosseum, pnk_colosseum_lower_bound, winning_configs, winning_region
from src.pit import Pit, PitDiscovery, compare_glue_variants, discover
from tests.graph_strategies import clique, cycle, graphs, path, star


class TestPitDiscovery(unittest.TestCase):
    """Test discovery against the full colosseum."""

    def assertMatchesColosseum(self, g: Graph, k: int):
        pit = discover(g, k)
        colosseum = build_colosseum(g, k)
        region = winning_region(colosseum, winning_configs(g, k))
        self.assertEqual(set(pit.vertices), region, f"k={k}")
        self.assertEqual(pit.labelled_arcs(), colosseum.induced(region).labelled_arcs(), f"k={k}")

    def test_defaults(self):
        self.assertTrue(PitDiscovery.GLUE_NON_ADJACENT)
        self.assertEqual(PitDiscovery.MEMORY_BUDGET_BYTES, 2 * 1024 ** 3)

    def test_rejects_zero_searchers(self):
        with self.assertRaises(ValueError):
            PitDiscovery(path(3), 0)

    def test_single_vertex(self):
        pit = discover(Graph.from_edges(1, []), 1)
        self.assertTrue(pit.wins)
        self.assertEqual(pit.goals(), {1})

    def test_path_of_three(self):
        """Test pit(P_3, 2) has V, {a,c} and the glued-up configurations."""
        pit = discover(path(3), 2)
        self.assertTrue(pit.wins)
        self.assertIn(0b101, pit)
        self.assertEqual(pit.origins[pit.index[0b101]], Pit.REVEAL)
        self.assertNotIn(0b010, pit)

    def test_clique_too_few_searchers(self):
        pit = discover(clique(5), 4)
        self.assertFalse(pit.wins)
        self.assertEqual(len(pit), 0)
        self.assertIsNone(pit.start)

    def test_fixed_graphs(self):
        for g in [path(5), cycle(6), star(4), clique(4), Graph.from_edges(4, [(0, 1), (2, 3)])]:
            for k in range(1, g.n + 1):
                self.assertMatchesColosseum(g, k)

    @settings(max_examples=40, deadline=None)
    @given(graphs(max_n=7))
    def test_equals_winning_region(self, g):
        """Test pit vertices are B(Q) in the colosseum and arcs are induced."""
        for k in range(1, g.n + 1):
            self.assertMatchesColosseum(g, k)

    def test_petersen_against_colosseum(self):
        g = Graph.from_edges(10, nx.petersen_graph().edges())
        for k in (4, 5):
            self.assertMatchesColosseum(g, k)

    def test_no_dead_vertices(self):
        """Test every pit vertex reaches the goals inside the pit itself."""
        for g in [path(5), cycle(6), star(4), Graph.from_edges(10, nx.petersen_graph().edges())]:
            for k in range(1, g.n + 1):
                pit = discover(g, k)
                self.assertEqual(winning_region(pit, pit.goals()), set(pit.vertices), k)

    def test_deterministic(self):
        g = cycle(7)
        first, second = discover(g, 3), discover(g, 3)
        self.assertEqual(first.vertices, second.vertices)
        self.assertEqual(first.existential, second.existential)
        self.assertEqual(first.universal, second.universal)


class TestSearcherMonotonicity(unittest.TestCase):
    """Test pits for fewer searchers sit inside pits for more."""

    TREEDEPTH_WEIGHTS = WeightScheme('td', constant(1), constant(0), 1, lambda d: True)

    @settings(max_examples=30, deadline=None)
    @given(graphs(max_n=7))
    def test_smaller_pit_is_induced(self, g):
        pits = [discover(g, k) for k in range(1, g.n + 1)]
        for smaller, larger in zip(pits, pits[1:]):
            self.assertTrue(set(smaller.vertices) <= set(larger.vertices))
            existential, universal = smaller.labelled_arcs()
            induced_existential, induced_universal = larger.induced(smaller.vertices).labelled_arcs()
            self.assertEqual(universal, induced_universal)
            # fly arcs need |N(C)| < k
            self.assertTrue(existential <= induced_existential)
        self.assertTrue(set(pits[0].vertices) <= set(pits[-1].vertices))

    @settings(max_examples=30, deadline=None)
    @given(graphs(max_n=7))
    def test_distance_never_drops_with_fewer_searchers(self, g):
        pits = [discover(g, k) for k in range(1, g.n + 1)]
        labels = [distance(pit, pit.goal_ids(), self.TREEDEPTH_WEIGHTS) for pit in pits]
        for i in range(len(pits) - 1):
            smaller, larger = pits[i], pits[i + 1]
            for config in smaller.vertices:
                self.assertGreaterEqual(labels[i][smaller.index[config]], labels[i + 1][larger.index[config]])


class TestDiscoveryOptions(unittest.TestCase):
    """Test budget, trace and gluing options."""

    def test_memory_budget(self):
        with self.assertRaises(MemoryBudgetExceeded) as ctx:
            discover(clique(4), 4, memory_budget=1)
        self.assertEqual(ctx.exception.k, 4)
        self.assertEqual(ctx.exception.reached, 1)

    def test_trace_one_line_per_configuration(self):
        trace = io.StringIO()
        pit = discover(path(4), 2, trace=trace)
        lines = trace.getvalue().splitlines()
        self.assertEqual(len(lines), len(pit))
        self.assertEqual(lines[0], 'seed 1 1')

    def test_literal_gluing_finds_superset(self):
        """Test the disjoint-only rule never loses a strict configuration."""
        only_strict, _ = compare_glue_variants(cycle(6), 3)
        self.assertEqual(only_strict, set())

    def test_literal_gluing_on_small_corpus(self):
        """Test strict gluing loses nothing on the named graphs with at most 12 vertices."""
        small = [item for item in corpus.load_manifest() if item.n <= 12]
        self.assertEqual({item.slug for item in small}, {'grotzsch', 'chvatal', 'goldner_harary', 'icosahedral'})
        for item in small:
            only_strict, _ = compare_glue_variants(corpus.load(item.slug), item.k)
            self.assertEqual(only_strict, set(), item.slug)

    def test_literal_gluing_can_add_configurations(self):
        strict = set(discover(path(4), 2).vertices)
        literal = set(discover(path(4), 2, glue_non_adjacent=False).vertices)
        self.assertTrue(strict <= literal)


@unittest.skipUnless(os.environ.get('PITWIDTH_SLOW'), 'set PITWIDTH_SLOW=1 to run')
class TestPitGrowth(unittest.TestCase):
    """Test pit size on P_(n,2) with four searchers grows polynomially in n."""

    def test_quadratic_fit(self):
        ns = list(range(8, 41, 4))
        sizes = []
        for n in ns:
            pit = discover(pnk(n, 2), 4)
            self.assertTrue(pit.wins)
            sizes.append(len(pit))
            self.assertLess(len(pit), pnk_colosseum_lower_bound(n, 2))
        x = np.array(ns[:3], dtype=float)
        coeffs, *_ = np.linalg.lstsq(np.column_stack([x * x, x]), np.array(sizes[:3], dtype=float), rcond=None)
        c1, c2 = np.abs(coeffs)
        for n, size in zip(ns[3:], sizes[3:]):
            self.assertLessEqual(size, 2 * (c1 * n * n + c2 * n), n)


if __name__ == '__main__':
    unittest.main()
