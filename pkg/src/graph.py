"""
Immutable graphs over bitset vertex sets.

A vertex set is a plain Python ``int`` whose bit ``v`` is set when vertex ``v``
belongs to the set. Ints are arbitrary precision, so the same code serves
graphs with more than 64 vertices, and equality and hashing are by value.
"""
import logging
from typing import Dict, Hashable, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from src.errors import OrderCycleError

logger = logging.getLogger(__name__)

VertexSet = int


def iter_bits(s: VertexSet) -> Iterator[int]:
    """Yield the members of ``s`` in ascending order."""
    while s:
        low = s & -s
        yield low.bit_length() - 1
        s ^= low


def to_list(s: VertexSet) -> List[int]:
    return list(iter_bits(s))


def from_iterable(vertices: Iterable[int]) -> VertexSet:
    s = 0
    for v in vertices:
        s |= 1 << v
    return s


def popcount(s: VertexSet) -> int:
    return s.bit_count()


def lowest(s: VertexSet) -> int:
    """Smallest member of a non-empty set."""
    return (s & -s).bit_length() - 1


def config_key(s: VertexSet) -> Tuple[int, int]:
    """Canonical configuration order: larger sets first, then by value."""
    return (-s.bit_count(), s)


class Graph:
    """Simple undirected graph on dense vertex ids ``0..n-1``."""

    __slots__ = ('n', 'adjacency', 'labels', 'full')

    def __init__(self, n: int, adjacency: Sequence[VertexSet], labels: Optional[Sequence[str]] = None):
        if len(adjacency) != n:
            raise ValueError(f"expected {n} adjacency rows, got {len(adjacency)}")
        self.n = n
        self.adjacency: Tuple[VertexSet, ...] = tuple(adjacency)
        self.labels: Optional[Tuple[str, ...]] = tuple(labels) if labels is not None else None
        self.full: VertexSet = (1 << n) - 1
        for v, row in enumerate(self.adjacency):
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            if row >> n:
                raise ValueError(f"neighbor of {v} out of range")
            for u in iter_bits(row):
                if not self.adjacency[u] >> v & 1:
                    raise ValueError(f"adjacency not symmetric between {v} and {u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]],
                   labels: Optional[Sequence[str]] = None) -> 'Graph':
        """Build a graph from 0-indexed edges; duplicates are merged.

        Args:
            n: vertex count
            edges: pairs of vertex ids
            labels: optional original vertex names

        Returns:
            Graph: the simple graph with the given edges
        """
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for {n} vertices")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows, labels)

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> 'Graph':
        """Convert a networkx graph, numbering nodes in iteration order."""
        nodes: List[Hashable] = list(g.nodes())
        index: Dict[Hashable, int] = {node: i for i, node in enumerate(nodes)}
        edges = [(index[u], index[v]) for u, v in g.edges() if u != v]
        return cls.from_edges(len(nodes), edges, [str(node) for node in nodes])

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g

    def edges(self) -> List[Tuple[int, int]]:
        """All edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adjacency[u] >> (u + 1) << (u + 1))]

    @property
    def m(self) -> int:
        return sum(row.bit_count() for row in self.adjacency) // 2

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()

    def min_degree(self) -> int:
        return min((self.degree(v) for v in range(self.n)), default=0)

    def neighborhood(self, c: VertexSet) -> VertexSet:
        """Open neighborhood N(C): vertices outside ``c`` adjacent to it."""
        adj = self.adjacency
        nb = 0
        for v in iter_bits(c):
            nb |= adj[v]
        return nb & ~c

    def connected_components(self, c: VertexSet) -> List[VertexSet]:
        """Components of G[C] ordered by their smallest vertex."""
        adj = self.adjacency
        components = []
        rest = c
        while rest:
            component = frontier = rest & -rest
            while frontier:
                grown = 0
                for v in iter_bits(frontier):
                    grown |= adj[v]
                frontier = grown & rest & ~component
                component |= frontier
            components.append(component)
            rest &= ~component
        return components

    def is_connected(self, c: Optional[VertexSet] = None) -> bool:
        c = self.full if c is None else c
        return len(self.connected_components(c)) <= 1

    def is_claw_free(self) -> bool:
        """Return True iff G has no induced K_{1,3}."""
        adj = self.adjacency
        for center in range(self.n):
            nbrs = to_list(adj[center])
            for i, a in enumerate(nbrs):
                for j in range(i + 1, len(nbrs)):
                    b = nbrs[j]
                    if adj[a] >> b & 1:
                        continue
                    # third leaf above b, independent of a and b
                    leaves = adj[center] & ~adj[a] & ~adj[b]
                    if leaves >> (b + 1):
                        return False
        return True

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v + 1)

    def __eq__(self, other):
        if isinstance(other, Graph):
            return self.n == other.n and self.adjacency == other.adjacency
        return NotImplemented

    def __hash__(self):
        return hash((self.n, self.adjacency))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


class PartialOrder:
    """Strict partial order stored as transitively closed predecessor sets."""

    __slots__ = ('n', 'predecessors')

    def __init__(self, n: int, predecessors: Sequence[VertexSet]):
        self.n = n
        self.predecessors: Tuple[VertexSet, ...] = tuple(predecessors)

    @classmethod
    def empty(cls, n: int) -> 'PartialOrder':
        return cls(n, [0] * n)

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[Tuple[int, int]]) -> 'PartialOrder':
        """Close the relation ``u < v`` transitively.

        Args:
            n: vertex count
            pairs: 0-indexed pairs (u, v) meaning u precedes v

        Returns:
            PartialOrder: the transitive closure

        Raises:
            OrderCycleError: if the pairs contain a cycle
        """
        dg = nx.DiGraph()
        dg.add_nodes_from(range(n))
        dg.add_edges_from(pairs)
        if not nx.is_directed_acyclic_graph(dg):
            cycle = [u for u, _ in nx.find_cycle(dg)]
            raise OrderCycleError(cycle)
        closure = nx.transitive_closure_dag(dg)
        return cls(n, [from_iterable(closure.predecessors(v)) for v in range(n)])

    def precedes(self, u: int, v: int) -> bool:
        return bool(self.predecessors[v] >> u & 1)

    def pairs(self) -> List[Tuple[int, int]]:
        return [(u, v) for v in range(self.n) for u in iter_bits(self.predecessors[v])]

    def minimal_elements(self, c: VertexSet) -> VertexSet:
        """Members of ``c`` without a predecessor inside ``c``."""
        preds = self.predecessors
        return from_iterable(v for v in iter_bits(c) if not preds[v] & c)

    def is_extended_by(self, other: 'PartialOrder') -> bool:
        """True if every pair of this order also holds in ``other``."""
        return all(mine & ~theirs == 0 for mine, theirs in zip(self.predecessors, other.predecessors))

    def __len__(self):
        return sum(p.bit_count() for p in self.predecessors)
