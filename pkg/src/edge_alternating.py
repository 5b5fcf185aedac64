"""
Edge-alternating graphs and weighted distance queries on them.

An edge-alternating graph has an existential arc set (the active player picks
one) and a universal arc set (the player must handle all of them). Vertices are
addressed by dense ids; each id carries a hashable label, which is a
configuration bitset for colosseums and pits.
"""
import heapq
import logging
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Dict, Hashable, Iterable, List, Optional, Set, Tuple

import numpy as np

from src.errors import NoStrategyError, StructuralError

logger = logging.getLogger(__name__)

INFINITY = int(np.iinfo(np.int64).max)


def weight_add(a: int, b: int) -> int:
    """Saturating addition; INFINITY absorbs."""
    if a >= INFINITY or b >= INFINITY:
        return INFINITY
    return min(a + b, INFINITY)


def format_weight(w: int) -> str:
    return 'inf' if w >= INFINITY else str(w)


class EdgeAltGraph:
    """Vertices with existential and universal successor lists."""

    def __init__(self, order_key: Optional[Callable[[Hashable], Any]] = None):
        """Create an empty graph.

        Args:
            order_key: canonical sort key on labels used for deterministic
                tie-breaking; defaults to insertion order
        """
        self.vertices: List[Hashable] = []
        self.index: Dict[Hashable, int] = {}
        self.existential: List[List[int]] = []
        self.universal: List[List[int]] = []
        self.order_key = order_key

    def add_vertex(self, label: Hashable) -> int:
        vid = self.index.get(label)
        if vid is None:
            vid = len(self.vertices)
            self.vertices.append(label)
            self.index[label] = vid
            self.existential.append([])
            self.universal.append([])
        return vid

    def add_existential(self, u: int, v: int):
        self.existential[u].append(v)

    def add_universal(self, u: int, v: int):
        self.universal[u].append(v)

    def sort_key(self, vid: int):
        if self.order_key is None:
            return vid
        return self.order_key(self.vertices[vid])

    def eedges(self) -> List[Tuple[int, int]]:
        return [(u, v) for u, succ in enumerate(self.existential) for v in succ]

    def aedges(self) -> List[Tuple[int, int]]:
        return [(u, v) for u, succ in enumerate(self.universal) for v in succ]

    def labelled_arcs(self) -> Tuple[Set[Tuple[Hashable, Hashable]], Set[Tuple[Hashable, Hashable]]]:
        """Existential and universal arcs as label pairs, for comparisons."""
        names = self.vertices
        return ({(names[u], names[v]) for u, v in self.eedges()},
                {(names[u], names[v]) for u, v in self.aedges()})

    def sinks(self) -> List[int]:
        return [v for v in range(len(self.vertices)) if not self.existential[v] and not self.universal[v]]

    def ids(self, labels: Iterable[Hashable]) -> Set[int]:
        """Ids of those labels present in the graph."""
        return {self.index[x] for x in labels if x in self.index}

    def induced(self, labels: Iterable[Hashable]) -> 'EdgeAltGraph':
        """Subgraph induced by the given labels, keeping canonical order."""
        wanted = set(labels)
        keep = [x for x in self.vertices if x in wanted]
        sub = EdgeAltGraph(self.order_key)
        for x in keep:
            sub.add_vertex(x)
        for x in keep:
            u = self.index[x]
            for v in self.existential[u]:
                if self.vertices[v] in sub.index:
                    sub.add_existential(sub.index[x], sub.index[self.vertices[v]])
            for v in self.universal[u]:
                if self.vertices[v] in sub.index:
                    sub.add_universal(sub.index[x], sub.index[self.vertices[v]])
        return sub

    @property
    def arc_count(self) -> int:
        return sum(map(len, self.existential)) + sum(map(len, self.universal))

    def __len__(self):
        return len(self.vertices)

    def __contains__(self, label):
        return label in self.index


def topological_order(h: EdgeAltGraph) -> List[int]:
    """Kahn's algorithm over E and A with canonical tie-breaking.

    Args:
        h: edge-alternating graph

    Returns:
        list: vertex ids, every arc pointing forward

    Raises:
        StructuralError: if h contains a directed cycle
    """
    n = len(h)
    indegree = [0] * n
    for u in range(n):
        for v in h.existential[u]:
            indegree[v] += 1
        for v in h.universal[u]:
            indegree[v] += 1
    ready = [(h.sort_key(v), v) for v in range(n) if indegree[v] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        _, u = heapq.heappop(ready)
        order.append(u)
        for succ in (h.existential[u], h.universal[u]):
            for v in succ:
                indegree[v] -= 1
                if indegree[v] == 0:
                    heapq.heappush(ready, (h.sort_key(v), v))
    if len(order) != n:
        raise StructuralError(f"edge-alternating graph has a cycle ({n - len(order)} vertices unordered)")
    return order


ArcWeight = Callable[[int, int], int]


def constant(w: int) -> ArcWeight:
    return lambda u, v: w


@dataclass(frozen=True)
class WeightScheme:
    """Arc weights, sink constant and acceptance test for one parameter."""

    name: str
    existential: ArcWeight
    universal: ArcWeight
    c0: int
    accept: Callable[[int], bool]
    bound: Optional[int] = None

    def describe(self) -> str:
        return f"{self.name}(c0={format_weight(self.c0)})"


def forbid_arcs(scheme: WeightScheme,
                existential: Optional[Callable[[int, int], bool]] = None,
                reveal_at: Optional[Callable[[int], bool]] = None) -> WeightScheme:
    """Restrict a scheme: chosen fly-moves and reveals weigh INFINITY.

    Args:
        scheme: scheme to restrict
        existential: predicate on an existential arc (u, v); True forbids it
        reveal_at: predicate on a vertex u; True forbids all its universal arcs

    Returns:
        WeightScheme: the restricted scheme
    """
    we, wa = scheme.existential, scheme.universal
    if existential is not None:
        def we(u, v, _base=scheme.existential):
            return INFINITY if existential(u, v) else _base(u, v)
    if reveal_at is not None:
        def wa(u, v, _base=scheme.universal):
            return INFINITY if reveal_at(u) else _base(u, v)
    return replace(scheme, existential=we, universal=wa)


def distance(h: EdgeAltGraph, q: Set[int], scheme: WeightScheme,
             order: Optional[List[int]] = None) -> np.ndarray:
    """Edge-alternating distance d(v, Q) for every vertex.

    Members of Q get ``c0``. Any other vertex takes the minimum of its best
    existential child and its worst universal child; an empty universal set
    counts as INFINITY, so non-Q sinks are unreachable.

    Args:
        h: acyclic edge-alternating graph
        q: ids of target sinks
        scheme: weights
        order: precomputed topological order (optional)

    Returns:
        np.ndarray: int64 distances indexed by vertex id
    """
    order = topological_order(h) if order is None else order
    d = np.full(len(h), INFINITY, dtype=np.int64)
    we, wa = scheme.existential, scheme.universal
    for v in reversed(order):
        if v in q:
            d[v] = scheme.c0
            continue
        best = INFINITY
        for w in h.existential[v]:
            best = min(best, weight_add(int(d[w]), we(v, w)))
        if h.universal[v]:
            worst = 0
            for w in h.universal[v]:
                worst = max(worst, weight_add(int(d[w]), wa(v, w)))
            best = min(best, worst)
        d[v] = best
    return d


@dataclass(frozen=True)
class StrategyNode:
    vertex: int
    kind: str  # 'exists', 'forall' or 'goal'
    children: Tuple[int, ...]
    distance: int


@dataclass
class StrategyDag:
    """An edge-alternating path from ``root`` into Q with chosen moves."""

    root: int
    nodes: Dict[int, StrategyNode] = field(default_factory=dict)

    def children(self, v: int) -> Tuple[int, ...]:
        return self.nodes[v].children

    def goals(self) -> List[int]:
        return [v for v, node in self.nodes.items() if node.kind == 'goal']

    def is_edge_alternating_path(self, h: EdgeAltGraph, q: Set[int]) -> bool:
        """Check the path conditions against ``h``."""
        members = set(self.nodes)
        if self.root not in members:
            return False
        for v, node in self.nodes.items():
            if node.kind == 'goal':
                if v not in q:
                    return False
            elif node.kind == 'exists':
                if len(node.children) != 1 or node.children[0] not in h.existential[v]:
                    return False
                if node.children[0] not in members:
                    return False
            elif node.kind == 'forall':
                if not h.universal[v] or set(h.universal[v]) != set(node.children):
                    return False
                if not set(node.children) <= members:
                    return False
            else:
                return False
        return True

    def max_path_weight(self, scheme: WeightScheme) -> int:
        """Largest accumulated weight over root-to-goal paths."""
        memo: Dict[int, int] = {}
        for v in reversed(self._order()):
            node = self.nodes[v]
            if node.kind == 'goal':
                memo[v] = scheme.c0
                continue
            weight = scheme.existential if node.kind == 'exists' else scheme.universal
            memo[v] = max(weight_add(memo[w], weight(v, w)) for w in node.children)
        return memo[self.root]

    def max_universal_arcs(self) -> int:
        """Most universal arcs used along any root-to-goal path."""
        memo: Dict[int, int] = {}
        for v in reversed(self._order()):
            node = self.nodes[v]
            if node.kind == 'goal':
                memo[v] = 0
            else:
                step = 1 if node.kind == 'forall' else 0
                memo[v] = step + max(memo[w] for w in node.children)
        return memo[self.root]

    def _order(self) -> List[int]:
        order, seen, stack = [], set(), [(self.root, False)]
        while stack:
            v, expanded = stack.pop()
            if expanded:
                order.append(v)
                continue
            if v in seen:
                continue
            seen.add(v)
            stack.append((v, True))
            for w in self.nodes[v].children:
                if w not in seen:
                    stack.append((w, False))
        order.reverse()
        return order

    def __len__(self):
        return len(self.nodes)


def extract_strategy(h: EdgeAltGraph, s: int, q: Set[int], scheme: WeightScheme,
                     labels: np.ndarray) -> StrategyDag:
    """Backtrack distance labels from ``s`` into a strategy.

    Args:
        h: edge-alternating graph
        s: source vertex id
        q: ids of target sinks
        scheme: weights the labels were computed with
        labels: output of :func:`distance`

    Returns:
        StrategyDag: rooted at s, every root-to-goal weight at most d(s, Q)

    Raises:
        NoStrategyError: if d(s, Q) is infinite
    """
    if labels[s] >= INFINITY:
        raise NoStrategyError(f"vertex {s} cannot reach the target set")
    dag = StrategyDag(root=s)
    we, wa = scheme.existential, scheme.universal
    stack = [s]
    while stack:
        v = stack.pop()
        if v in dag.nodes:
            continue
        dv = int(labels[v])
        if v in q:
            dag.nodes[v] = StrategyNode(v, 'goal', (), dv)
            continue
        best, best_key, choice = INFINITY, None, None
        for w in h.existential[v]:
            via = weight_add(int(labels[w]), we(v, w))
            key = (via, h.sort_key(w))
            if via < INFINITY and (best_key is None or key < best_key):
                best, best_key, choice = via, key, w
        if choice is not None and best <= dv:
            dag.nodes[v] = StrategyNode(v, 'exists', (choice,), dv)
            stack.append(choice)
        elif h.universal[v]:
            kids = tuple(sorted(h.universal[v], key=h.sort_key))
            dag.nodes[v] = StrategyNode(v, 'forall', kids, dv)
            stack.extend(kids)
        else:
            raise StructuralError(f"labels inconsistent at vertex {v}")
    return dag
