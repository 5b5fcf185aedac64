"""
Unit tests for edge-alternating graphs, distances and strategies
"""
import unittest
from functools import lru_cache

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from src.edge_alternating import (INFINITY, EdgeAltGraph, WeightScheme, constant, distance, extract_strategy,
                                  forbid_arcs, format_weight, topological_order, weight_add)
from src.errors import NoStrategyError, StructuralError
from tests.graph_strategies import edge_alternating_dags


def _graph(existential, universal):
    h = EdgeAltGraph()
    for u, v in existential + universal:
        h.add_vertex(u)
        h.add_vertex(v)
    for u, v in existential:
        h.add_existential(h.index[u], h.index[v])
    for u, v in universal:
        h.add_universal(h.index[u], h.index[v])
    return h


def _scheme(we=0, wa=0, c0=0):
    return WeightScheme('test', constant(we), constant(wa), c0, lambda d: d < INFINITY)


class TestWeights(unittest.TestCase):
    """Test saturating weight arithmetic."""

    def test_weight_add_saturates(self):
        self.assertEqual(weight_add(2, 3), 5)
        self.assertEqual(weight_add(INFINITY, 1), INFINITY)
        self.assertEqual(weight_add(INFINITY - 1, 5), INFINITY)

    def test_format_weight(self):
        self.assertEqual(format_weight(INFINITY), 'inf')
        self.assertEqual(format_weight(3), '3')


class TestDistance(unittest.TestCase):
    """Test edge-alternating distance labels."""

    def setUp(self):
        # s picks a; a must handle both goals; b is a dead end
        self.h = _graph(existential=[('s', 'a'), ('s', 'b')],
                        universal=[('a', 'g1'), ('a', 'g2')])
        self.q = self.h.ids(['g1', 'g2'])
        self.s = self.h.index['s']

    def test_zero_weights(self):
        d = distance(self.h, self.q, _scheme())
        self.assertEqual(d[self.s], 0)

    def test_universal_weight_counts_once_per_level(self):
        d = distance(self.h, self.q, _scheme(wa=1))
        self.assertEqual(d[self.s], 1)

    def test_empty_universal_set_is_unreachable(self):
        """Test a sink outside Q gets infinite distance."""
        d = distance(self.h, self.q, _scheme())
        self.assertEqual(d[self.h.index['b']], INFINITY)

    def test_goals_get_c0(self):
        d = distance(self.h, self.q, _scheme(c0=1, we=1))
        self.assertEqual(d[self.h.index['g1']], 1)
        self.assertEqual(d[self.s], 2)

    def test_universal_takes_worst_child(self):
        h = _graph(existential=[('x', 'g')], universal=[('a', 'x'), ('a', 'g')])
        d = distance(h, h.ids(['g']), _scheme(we=5))
        self.assertEqual(d[h.index['a']], 5)

    def test_infinite_universal_weight_blocks(self):
        d = distance(self.h, self.q, _scheme(wa=INFINITY))
        self.assertEqual(d[self.s], INFINITY)

    def test_forbid_existential_arc(self):
        scheme = forbid_arcs(_scheme(), existential=lambda u, v: v == self.h.index['a'])
        d = distance(self.h, self.q, scheme)
        self.assertEqual(d[self.s], INFINITY)

    def test_forbid_reveal(self):
        scheme = forbid_arcs(_scheme(), reveal_at=lambda u: u == self.h.index['a'])
        self.assertEqual(distance(self.h, self.q, scheme)[self.s], INFINITY)


def _recursive_distance(h, q, weight, c0):
    @lru_cache(maxsize=None)
    def d(v):
        if v in q:
            return c0
        options = [min(INFINITY, d(w) + weight(v, w)) for w in h.existential[v]]
        if h.universal[v]:
            options.append(max(min(INFINITY, d(w) + weight(v, w)) for w in h.universal[v]))
        return min(options, default=INFINITY)

    return [d(v) for v in range(len(h))]


class TestDistanceOnRandomDags(unittest.TestCase):
    """Test distance labels on random DAGs of up to twelve vertices."""

    @settings(max_examples=80, deadline=None)
    @given(edge_alternating_dags(), st.integers(min_value=0, max_value=1))
    def test_matches_recursive_definition(self, dag, c0):
        h, q, weights = dag
        weight = lambda u, v: weights[(u, v)]
        d = distance(h, q, WeightScheme('test', weight, weight, c0, lambda x: x < INFINITY))
        self.assertEqual([int(x) for x in d], _recursive_distance(h, q, weight, c0))

    @settings(max_examples=80, deadline=None)
    @given(edge_alternating_dags(), st.data())
    def test_monotone_under_weight_increase(self, dag, data):
        h, q, weights = dag
        raised = {arc: weight_add(w, data.draw(st.integers(min_value=0, max_value=2))) for arc, w in weights.items()}
        low = distance(h, q, WeightScheme('low', lambda u, v: weights[(u, v)], lambda u, v: weights[(u, v)],
                                          0, lambda x: True))
        high = distance(h, q, WeightScheme('high', lambda u, v: raised[(u, v)], lambda u, v: raised[(u, v)],
                                           0, lambda x: True))
        self.assertTrue(np.all(high >= low))


class TestTopologicalOrder(unittest.TestCase):
    """Test ordering and cycle detection."""

    def test_arcs_point_forward(self):
        h = _graph(existential=[('s', 'a'), ('a', 'g')], universal=[('s', 'g')])
        order = topological_order(h)
        position = {v: i for i, v in enumerate(order)}
        for u, v in h.eedges() + h.aedges():
            self.assertLess(position[u], position[v])

    def test_cycle_raises(self):
        h = _graph(existential=[('a', 'b'), ('b', 'a')], universal=[])
        with self.assertRaises(StructuralError):
            topological_order(h)


class TestStrategy(unittest.TestCase):
    """Test strategy extraction."""

    def test_tie_prefers_existential(self):
        """Test equal existential and universal options resolve to the fly-move."""
        h = _graph(existential=[('s', 'g1')], universal=[('s', 'g1'), ('s', 'g2')])
        q = h.ids(['g1', 'g2'])
        labels = distance(h, q, _scheme())
        dag = extract_strategy(h, h.index['s'], q, _scheme(), labels)
        self.assertEqual(dag.nodes[h.index['s']].kind, 'exists')
        self.assertTrue(dag.is_edge_alternating_path(h, q))

    def test_universal_strategy_weight(self):
        h = _graph(existential=[('s', 'a'), ('s', 'b')], universal=[('a', 'g1'), ('a', 'g2')])
        q = h.ids(['g1', 'g2'])
        scheme = _scheme(wa=1)
        labels = distance(h, q, scheme)
        dag = extract_strategy(h, h.index['s'], q, scheme, labels)
        self.assertEqual(dag.max_path_weight(scheme), labels[h.index['s']])
        self.assertEqual(dag.max_universal_arcs(), 1)
        self.assertEqual(sorted(h.vertices[g] for g in dag.goals()), ['g1', 'g2'])

    def test_unreachable_raises(self):
        h = _graph(existential=[('s', 'b')], universal=[])
        q = set()
        labels = distance(h, q, _scheme())
        with self.assertRaises(NoStrategyError):
            extract_strategy(h, h.index['s'], q, _scheme(), labels)


class TestInduced(unittest.TestCase):
    """Test induced subgraphs."""

    def test_induced_drops_outside_arcs(self):
        h = _graph(existential=[('s', 'a'), ('a', 'g')], universal=[('s', 'x')])
        sub = h.induced(['s', 'a'])
        self.assertEqual(len(sub), 2)
        self.assertEqual(sub.labelled_arcs(), ({('s', 'a')}, set()))


if __name__ == '__main__':
    unittest.main()
