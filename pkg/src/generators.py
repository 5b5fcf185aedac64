"""
Graph generators: seeded random models, the P_{n,k} family and claw-free
test instances.

Random models delegate to networkx with an integer seed, which drives a
Mersenne Twister ``random.Random``; the same seed gives the same graph on
every platform.
"""
import logging
import random
from typing import List, Optional

import networkx as nx

from src.graph import Graph

logger = logging.getLogger(__name__)

MODELS = ('er', 'ws', 'ba', 'pnk')


def _relabel(g: nx.Graph) -> Graph:
    g = nx.convert_node_labels_to_integers(g, ordering='sorted')
    return Graph.from_edges(g.number_of_nodes(), g.edges())


def erdos_renyi(n: int, p: float, seed: int) -> Graph:
    """Every pair independently with probability p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must lie in [0, 1], got {p}")
    return _relabel(nx.gnp_random_graph(n, p, seed=seed))


def watts_strogatz(n: int, big_k: int, p: float, seed: int) -> Graph:
    """Ring lattice with ``big_k`` neighbors on each side, rewired with probability p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"rewiring probability must lie in [0, 1], got {p}")
    if 2 * big_k >= n:
        raise ValueError(f"ring lattice with K={big_k} per side needs more than {2 * big_k} vertices")
    return _relabel(nx.watts_strogatz_graph(n, 2 * big_k, p, seed=seed))


def barabasi_albert(n: int, big_k: int, seed: int) -> Graph:
    """Preferential attachment of ``big_k`` edges per new vertex onto a K-clique."""
    if not 1 <= big_k <= n:
        raise ValueError(f"need 1 <= K <= n, got K={big_k}, n={n}")
    seed_graph = nx.complete_graph(big_k)
    if big_k == n:
        return _relabel(seed_graph)
    return _relabel(nx.barabasi_albert_graph(n, big_k, seed=seed, initial_graph=seed_graph))


def pnk(n: int, k: int) -> Graph:
    """P_{n,k}: a path of n cliques of size k between two pendant vertices.

    Vertex 0 and vertex n*k + 1 are the pendants; clique X_i holds the
    vertices (i-1)*k + 1 .. i*k. Each clique is joined completely to the
    next one.
    """
    if n < 1 or k < 1:
        raise ValueError(f"P_(n,k) needs n, k >= 1, got n={n}, k={k}")
    groups: List[List[int]] = [[0]]
    groups += [list(range((i - 1) * k + 1, i * k + 1)) for i in range(1, n + 1)]
    groups.append([n * k + 1])
    edges = []
    for i, group in enumerate(groups):
        if 1 <= i <= n:
            edges += [(u, v) for u in group for v in group if u < v]
        if i + 1 < len(groups):
            edges += [(u, v) for u in group for v in groups[i + 1]]
    if n < 2 * k:
        logger.warning("P_(%d,%d) is below n >= 2k where tw = pw = 2k - 1 is known", n, k)
    return Graph.from_edges(n * k + 2, edges)


def generalized_petersen(n: int, k: int) -> Graph:
    """GP(n, k): outer n-cycle, spokes, inner star polygon with step k."""
    edges = []
    for i in range(n):
        edges.append((i, (i + 1) % n))
        edges.append((i, n + i))
        edges.append((n + i, n + (i + k) % n))
    return Graph.from_edges(2 * n, edges)


def claw_free(seed: int, max_n: int = 14) -> Graph:
    """A connected claw-free graph: a path, a cycle or a line graph.

    Line graphs are taken of small connected random graphs and rejected if
    they exceed ``max_n`` vertices.
    """
    rng = random.Random(seed)
    shape = rng.choice(('path', 'cycle', 'line'))
    if shape == 'path':
        return _relabel(nx.path_graph(rng.randint(2, max_n)))
    if shape == 'cycle':
        return _relabel(nx.cycle_graph(rng.randint(3, max_n)))
    while True:
        base = nx.gnp_random_graph(rng.randint(4, 8), 0.5, seed=rng.getrandbits(32))
        size = base.number_of_edges()
        if size and nx.is_connected(base) and size <= max_n:
            return _relabel(nx.line_graph(base))


def generate(model: str, n: int, seed: int = 0, p: Optional[float] = None,
             big_k: Optional[int] = None, k: Optional[int] = None) -> Graph:
    """Dispatch to a model by name, checking which parameters it needs.

    Raises:
        ValueError: on unknown models or missing/invalid parameters
    """
    if model == 'er':
        if p is None:
            raise ValueError("er needs --p")
        return erdos_renyi(n, p, seed)
    if model == 'ws':
        if p is None or big_k is None:
            raise ValueError("ws needs --p and --K")
        return watts_strogatz(n, big_k, p, seed)
    if model == 'ba':
        if big_k is None:
            raise ValueError("ba needs --K")
        return barabasi_albert(n, big_k, seed)
    if model == 'pnk':
        if k is None:
            raise ValueError("pnk needs --k")
        return pnk(n, k)
    raise ValueError(f"unknown model {model!r}")
