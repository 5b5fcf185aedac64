"""
Brute-force reference implementations of the search game.

These are test oracles and the ``stats`` backend: the memoised recursive game
solver, full colosseum construction, the backward winning-region computation,
closed-form size bounds and exhaustive parameter solvers for small graphs.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Dict, Hashable, Iterator, List, Optional, Set

from src.edge_alternating import EdgeAltGraph, topological_order
from src.errors import EnumerationCapExceeded
from src.graph import Graph, VertexSet, config_key, iter_bits, popcount

logger = logging.getLogger(__name__)


def winning_configs(graph: Graph, k: int) -> Set[VertexSet]:
    """Singletons {v} with |N(v)| < k."""
    return {1 << v for v in range(graph.n) if graph.degree(v) < k}


def general_graph_searching(graph: Graph, k: int) -> bool:
    """Decide whether k searchers win the monotone game on ``graph``.

    Memoised on the contaminated set C alone, since after implicit searcher
    removal the searchers always stand on N(C). Evaluated with an explicit
    stack and short-circuiting.

    Args:
        graph: input graph
        k: number of searchers

    Returns:
        bool: True iff tw(graph) <= k - 1
    """
    memo: Dict[VertexSet, bool] = {0: True}
    start = graph.full
    stack = [start]
    while stack:
        c = stack[-1]
        if c in memo:
            stack.pop()
            continue
        components = graph.connected_components(c)
        if len(components) > 1:
            # reveal-move: every component must be won
            children, short = components, False
        elif graph.neighborhood(c).bit_count() < k:
            # fly-move: some placement must win
            children, short = [c & ~(1 << v) for v in iter_bits(c)], True
        else:
            memo[c] = False
            stack.pop()
            continue
        for child in children:
            result = memo.get(child)
            if result is None:
                stack.append(child)
                break
            if result == short:
                memo[c] = short
                stack.pop()
                break
        else:
            memo[c] = not short
            stack.pop()
    return memo[start]


class Colosseum:
    """Enumerates colosseum(G, k): all C != {} with |N(C)| <= k."""

    ENUMERATION_CAP = 26

    def __init__(self, graph: Graph, cap: Optional[int] = None):
        self.graph = graph
        self.cap = self.ENUMERATION_CAP if cap is None else cap
        if graph.n > self.cap:
            raise EnumerationCapExceeded(graph.n, self.cap)

    def configurations(self, k: int) -> Iterator[VertexSet]:
        """Yield every colosseum vertex exactly once.

        Each configuration C is a union of components of G - N(C), so it is
        found from its separator S = N(C) by combining components of G - S.
        """
        graph = self.graph
        for size in range(0, min(k, graph.n) + 1):
            for separator in combinations(range(graph.n), size):
                s = 0
                for v in separator:
                    s |= 1 << v
                components = graph.connected_components(graph.full & ~s)
                borders = [graph.neighborhood(comp) for comp in components]
                for pick in range(1, 1 << len(components)):
                    c = border = 0
                    for i in iter_bits(pick):
                        c |= components[i]
                        border |= borders[i]
                    if border == s:
                        yield c

    def size(self, k: int) -> int:
        return sum(1 for _ in self.configurations(k))

    def build(self, k: int) -> EdgeAltGraph:
        """Materialise vertices in ascending popcount order, then the arcs."""
        graph = self.graph
        h = EdgeAltGraph(order_key=config_key)
        for c in sorted(self.configurations(k), key=lambda x: (x.bit_count(), x)):
            h.add_vertex(c)
        index = h.index
        for u, c in enumerate(h.vertices):
            if graph.neighborhood(c).bit_count() < k:
                for v in iter_bits(c):
                    target = index.get(c & ~(1 << v))
                    if target is not None:
                        h.add_existential(u, target)
            components = graph.connected_components(c)
            if len(components) >= 2:
                for comp in components:
                    h.add_universal(u, index[comp])
        logger.debug("colosseum(k=%d): %d vertices, %d arcs", k, len(h), h.arc_count)
        return h


def build_colosseum(graph: Graph, k: int, cap: Optional[int] = None) -> EdgeAltGraph:
    return Colosseum(graph, cap).build(k)


def colosseum_size(graph: Graph, k: int, cap: Optional[int] = None) -> int:
    return Colosseum(graph, cap).size(k)


def winning_region(h: EdgeAltGraph, q: Set[Hashable]) -> Set[Hashable]:
    """B(Q) by a backward sweep over a topological order.

    Args:
        h: acyclic edge-alternating graph
        q: labels of target sinks

    Returns:
        set: labels of all vertices with an edge-alternating path into Q
    """
    targets = h.ids(q)
    won = [False] * len(h)
    for v in reversed(topological_order(h)):
        if v in targets or any(won[w] for w in h.existential[v]):
            won[v] = True
        elif h.universal[v] and all(won[w] for w in h.universal[v]):
            won[v] = True
    return {h.vertices[v] for v in range(len(h)) if won[v]}


def arena_size(n: int, k: int) -> int:
    """Size of the folklore arena for n vertices and k searchers."""
    return 2 * comb(n, k + 1)


@dataclass
class ConsistencyReport:
    consistent: bool
    complete: bool
    checked: int
    skipped: int
    violation: Optional[str] = None

    def __bool__(self):
        return self.consistent


class UniversalConsistency:
    """Checks the closure property that lets discovery glue pairs."""

    FAN_OUT_CAP = 12

    def __init__(self, fan_out_cap: Optional[int] = None):
        self.fan_out_cap = self.FAN_OUT_CAP if fan_out_cap is None else fan_out_cap

    def check(self, h: EdgeAltGraph, q: Set[Hashable]) -> ConsistencyReport:
        region = h.ids(winning_region(h, q))
        targets = h.ids(q)
        by_fan: Dict[frozenset, List[int]] = {}
        for v in range(len(h)):
            if h.universal[v]:
                by_fan.setdefault(frozenset(h.universal[v]), []).append(v)
        checked = skipped = 0
        for v in sorted(region - targets):
            fan = h.universal[v]
            if not fan:
                continue
            if not set(fan) <= region:
                return ConsistencyReport(False, True, checked, skipped,
                                         f"universal child of {h.vertices[v]!r} outside the winning region")
            if len(fan) > self.fan_out_cap:
                skipped += 1
                continue
            checked += 1
            for size in range(2, len(fan) + 1):
                for subset in combinations(fan, size):
                    owners = by_fan.get(frozenset(subset), ())
                    if not any(w in region for w in owners):
                        return ConsistencyReport(False, True, checked, skipped,
                                                 f"no winning vertex realises a sub-fan of {h.vertices[v]!r}")
        if skipped:
            logger.warning("universal consistency: %d vertices above fan-out cap %d not checked",
                           skipped, self.fan_out_cap)
        return ConsistencyReport(True, skipped == 0, checked, skipped)


def check_universal_consistency(h: EdgeAltGraph, q: Set[Hashable],
                                fan_out_cap: Optional[int] = None) -> ConsistencyReport:
    return UniversalConsistency(fan_out_cap).check(h, q)


def colosseum_lower_bound(graph: Graph, k: int) -> int:
    """Sum over i <= k of C(|V_i|, i), V_i the vertices of degree >= i."""
    degrees = [graph.degree(v) for v in range(graph.n)]
    return sum(comb(sum(1 for d in degrees if d >= i), i) for i in range(1, k + 1))


def claw_free_upper_bound(n: int, k: int) -> int:
    return sum(comb(n, i) * 4 ** i for i in range(1, k + 1))


def pnk_colosseum_lower_bound(n: int, k: int) -> int:
    return sum(comb(n * k, i) for i in range(1, 2 * k + 1))


def _reach_count(graph: Graph, inside: VertexSet, v: int) -> int:
    """Vertices outside ``inside`` + v reachable from v through ``inside``."""
    seen = 1 << v
    frontier = 1 << v
    reached = 0
    while frontier:
        grown = 0
        for u in iter_bits(frontier):
            grown |= graph.adjacency[u]
        grown &= ~seen
        seen |= grown
        reached |= grown & ~inside
        frontier = grown & inside
    return popcount(reached)


def brute_force_treewidth(graph: Graph) -> int:
    """Treewidth by exhaustive elimination orderings, memoised on prefixes."""

    @lru_cache(maxsize=None)
    def tw(eliminated: VertexSet) -> int:
        if not eliminated:
            return -1
        best = graph.n
        for v in iter_bits(eliminated):
            rest = eliminated & ~(1 << v)
            best = min(best, max(tw(rest), _reach_count(graph, rest, v)))
        return best

    return max(tw(graph.full), 0) if graph.n else -1


def brute_force_pathwidth(graph: Graph) -> int:
    """Pathwidth as the vertex separation number over all orderings."""
    full = graph.full

    @lru_cache(maxsize=None)
    def vs(placed: VertexSet) -> int:
        if not placed:
            return 0
        separation = graph.neighborhood(full & ~placed).bit_count()
        return max(separation, min(vs(placed & ~(1 << v)) for v in iter_bits(placed)))

    return vs(full) if graph.n else -1


def treedepth_recursive(graph: Graph, c: Optional[VertexSet] = None) -> int:
    """Treedepth by the component/removal recursion, memoised on C."""
    memo: Dict[VertexSet, int] = {}

    def td(s: VertexSet) -> int:
        if s in memo:
            return memo[s]
        if s.bit_count() <= 1:
            value = s.bit_count()
        else:
            components = graph.connected_components(s)
            if len(components) > 1:
                value = max(td(comp) for comp in components)
            else:
                value = 1 + min(td(s & ~(1 << v)) for v in iter_bits(s))
        memo[s] = value
        return value

    return td(graph.full if c is None else c)
