"""
Positive-instance driven discovery of the pit.

The pit is the colosseum restricted to the searchers' winning region. It is
built backwards from the winning singletons: reverse fly-moves add one vertex
to a configuration, reverse reveal-moves glue two known configurations. The
colosseum itself is never enumerated.
"""
import logging
from collections import deque
from typing import Deque, List, Optional, Set, TextIO, Tuple

import numpy as np

from src.edge_alternating import EdgeAltGraph
from src.errors import MemoryBudgetExceeded
from src.graph import Graph, VertexSet, config_key, iter_bits, to_list

logger = logging.getLogger(__name__)

WORD_BITS = 64
WORD_MASK = (1 << WORD_BITS) - 1


class Pit(EdgeAltGraph):
    """pit(G, k) with per-vertex neighborhoods and discovery origins."""

    SEED, FLY, REVEAL = 'seed', 'fly', 'reveal'

    def __init__(self, graph: Graph, k: int):
        super().__init__(order_key=config_key)
        self.graph = graph
        self.k = k
        self.borders: List[VertexSet] = []
        self.origins: List[str] = []

    def add_configuration(self, c: VertexSet, border: VertexSet, origin: str) -> int:
        vid = self.add_vertex(c)
        self.borders.append(border)
        self.origins.append(origin)
        return vid

    @property
    def start(self) -> Optional[int]:
        """Id of the all-contaminated configuration V(G), if winning."""
        return self.index.get(self.graph.full)

    @property
    def wins(self) -> bool:
        return self.graph.full in self.index

    def goal_ids(self) -> Set[int]:
        return {vid for vid, origin in enumerate(self.origins) if origin == self.SEED}

    def goals(self) -> Set[VertexSet]:
        return {self.vertices[vid] for vid in self.goal_ids()}


def _to_words(x: int, words: int) -> np.ndarray:
    return np.array([(x >> (WORD_BITS * i)) & WORD_MASK for i in range(words)], dtype=np.uint64)


class PitDiscovery:
    """Three-phase discovery: seed Q, close under reverse moves, add arcs."""

    MEMORY_BUDGET_BYTES = 2 * 1024 ** 3
    # python int, dict slot, list slots and two packed rows per configuration
    BYTES_PER_CONFIGURATION = 160
    GLUE_NON_ADJACENT = True
    INITIAL_CAPACITY = 1024

    def __init__(self, graph: Graph, k: int, memory_budget: Optional[int] = None,
                 glue_non_adjacent: Optional[bool] = None, trace: Optional[TextIO] = None):
        """Prepare discovery of pit(graph, k).

        Args:
            graph: input graph
            k: number of searchers, at least 1
            memory_budget: bytes of configuration storage before aborting
            glue_non_adjacent: glue only configurations with no edge between them
            trace: optional text stream receiving one line per configuration
        """
        if k < 1:
            raise ValueError(f"need at least one searcher, got k={k}")
        self.graph = graph
        self.k = k
        self.pit = Pit(graph, k)
        self.queue: Deque[int] = deque()
        self.trace = trace
        self.glue_non_adjacent = self.GLUE_NON_ADJACENT if glue_non_adjacent is None else glue_non_adjacent
        self.words = max(1, -(-graph.n // WORD_BITS))
        budget = self.MEMORY_BUDGET_BYTES if memory_budget is None else memory_budget
        self.max_configurations = max(1, budget // (self.BYTES_PER_CONFIGURATION + 16 * self.words))
        self._configs = np.zeros((self.INITIAL_CAPACITY, self.words), dtype=np.uint64)
        self._borders = np.zeros((self.INITIAL_CAPACITY, self.words), dtype=np.uint64)

    def insert(self, c: VertexSet, t: int, origin: str = Pit.FLY, border: Optional[VertexSet] = None) -> bool:
        """Add C to the pit and the queue if it is new and |N(C)| <= t."""
        if c in self.pit.index:
            return False
        if border is None:
            border = self.graph.neighborhood(c)
        if border.bit_count() > t:
            return False
        count = len(self.pit)
        if count >= self.max_configurations:
            raise MemoryBudgetExceeded(count, self.k)
        if count == len(self._configs):
            self._grow()
        vid = self.pit.add_configuration(c, border, origin)
        self._configs[vid] = _to_words(c, self.words)
        self._borders[vid] = _to_words(border, self.words)
        self.queue.append(vid)
        if self.trace is not None:
            members = ' '.join(str(v + 1) for v in to_list(c))
            self.trace.write(f"{origin} {members} {border.bit_count()}\n")
        return True

    def _grow(self):
        capacity = 2 * len(self._configs)
        for name in ('_configs', '_borders'):
            grown = np.zeros((capacity, self.words), dtype=np.uint64)
            old = getattr(self, name)
            grown[:len(old)] = old
            setattr(self, name, grown)

    def reverse_fly_expand(self, vid: int):
        """Offer C + v for every v in N(C) with threshold k - 1."""
        c = self.pit.vertices[vid]
        border = self.pit.borders[vid]
        adjacency = self.graph.adjacency
        for v in iter_bits(border):
            grown = c | (1 << v)
            self.insert(grown, self.k - 1, Pit.FLY, (border | adjacency[v]) & ~grown)

    def reverse_reveal_expand(self, vid: int):
        """Offer C + C' for every known C' that C may be glued to."""
        c = self.pit.vertices[vid]
        border = self.pit.borders[vid]
        count = len(self.pit)
        configs = self._configs[:count]
        borders = self._borders[:count]
        cw = _to_words(c, self.words)
        nw = _to_words(border, self.words)
        if self.glue_non_adjacent:
            # disjoint and no edge between the two sides: N(C) misses C'
            apart = ~np.any(configs & (cw | nw), axis=1)
            union_borders = borders | nw
        else:
            apart = ~np.any(configs & cw, axis=1)
            union_borders = (borders | nw) & ~(configs | cw)
        sizes = np.bitwise_count(union_borders).sum(axis=1)
        candidates = np.flatnonzero(apart & (sizes <= self.k))
        vertices, known = self.pit.vertices, self.pit.borders
        for other in candidates.tolist():
            union = c | vertices[other]
            self.insert(union, self.k, Pit.REVEAL, (border | known[other]) & ~union)

    def discover_edges(self):
        """Add the colosseum arcs among discovered configurations."""
        pit, graph, k = self.pit, self.graph, self.k
        index = pit.index
        for vid, c in enumerate(pit.vertices):
            if pit.borders[vid].bit_count() < k:
                for v in iter_bits(c):
                    target = index.get(c & ~(1 << v))
                    if target is not None:
                        pit.add_existential(vid, target)
            components = graph.connected_components(c)
            if len(components) >= 2 and all(comp in index for comp in components):
                for comp in components:
                    pit.add_universal(vid, index[comp])

    def run(self) -> Pit:
        """Run all three phases and return the pit.

        Returns:
            Pit: the discovered pit with arcs

        Raises:
            MemoryBudgetExceeded: if the configuration budget runs out
        """
        for v in range(self.graph.n):
            self.insert(1 << v, self.k - 1, Pit.SEED)
        while self.queue:
            vid = self.queue.popleft()
            self.reverse_fly_expand(vid)
            self.reverse_reveal_expand(vid)
        self.discover_edges()
        logger.info("pit(k=%d): %d configurations, %d arcs, start %s",
                    self.k, len(self.pit), self.pit.arc_count,
                    'winning' if self.pit.wins else 'losing')
        return self.pit


def discover(graph: Graph, k: int, **options) -> Pit:
    return PitDiscovery(graph, k, **options).run()


def compare_glue_variants(graph: Graph, k: int) -> Tuple[Set[VertexSet], Set[VertexSet]]:
    """Vertex sets found only by the strict and only by the literal gluing rule."""
    strict = set(discover(graph, k, glue_non_adjacent=True).vertices)
    literal = set(discover(graph, k, glue_non_adjacent=False).vertices)
    only_strict, only_literal = strict - literal, literal - strict
    if only_strict or only_literal:
        logger.warning("gluing variants differ at k=%d: %d only strict, %d only literal",
                       k, len(only_strict), len(only_literal))
    return only_strict, only_literal
