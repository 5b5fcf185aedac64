"""
Named-graph corpus with the expected search-game statistics.

Graphs are built from their standard definitions and shipped as ``.col``
files under ``data/graphs``. ``data/named_graphs.csv`` records for each graph
the vertex and edge counts, the least winning number of searchers and the pit,
arena and colosseum sizes at that count. Provenance is ``reproduced`` when the
solver recomputes all four sizes exactly and ``unchecked`` when the graph is too
large to recompute in the test suite.
"""
import csv
import logging
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Callable, Dict, List, Optional

import networkx as nx

from src.formats import parse_graph
from src.generators import generalized_petersen
from src.graph import Graph

logger = logging.getLogger(__name__)

DATA_DIR = Path(__file__).resolve().parent.parent / 'data'
MANIFEST = DATA_DIR / 'named_graphs.csv'


def _relabel(g: nx.Graph, ordering: str = 'sorted') -> Graph:
    g = nx.convert_node_labels_to_integers(g, ordering=ordering)
    return Graph.from_edges(g.number_of_nodes(), g.edges())


def _from_dict(adjacency: Dict[int, List[int]]) -> Graph:
    g = nx.Graph()
    g.add_nodes_from(range(1 + max(max(u, *vs) for u, vs in adjacency.items())))
    g.add_edges_from((u, v) for u, vs in adjacency.items() for v in vs)
    return Graph.from_edges(g.number_of_nodes(), g.edges())


def goldner_harary() -> Graph:
    return _from_dict({0: [1, 3, 4], 1: [2, 3, 4, 5, 6, 7, 10], 2: [3, 7], 3: [7, 8, 9, 10],
                       4: [3, 5, 9, 10], 5: [10], 6: [7, 10], 7: [8, 10], 8: [10], 9: [10]})


def sierpinski_gasket(level: int = 3) -> Graph:
    """Level-``level`` gasket on lattice points, vertices in sorted order."""
    triangles = []

    def split(x: int, y: int, size: int, depth: int):
        if depth == 1:
            triangles.append(((x, y), (x + size, y), (x, y + size)))
            return
        half = size // 2
        split(x, y, half, depth - 1)
        split(x + half, y, half, depth - 1)
        split(x, y + half, half, depth - 1)

    split(0, 0, 2 ** (level - 1), level)
    points = sorted({p for t in triangles for p in t})
    index = {p: i for i, p in enumerate(points)}
    edges = [(index[a], index[b]) for t in triangles for a, b in combinations(t, 2)]
    return Graph.from_edges(len(points), edges)


def blanusa_second_snark() -> Graph:
    g = nx.Graph()
    g.add_edges_from([('c0', (0, 0)), ('c0', (1, 4)), ('c0', 'c1'), ('c1', (0, 3)), ('c1', (1, 1)),
                      ((0, 2), (0, 5)), ((0, 6), (0, 4)), ((0, 7), (0, 1)),
                      ((1, 7), (1, 2)), ((1, 0), (1, 6)), ((1, 3), (1, 5))])
    nx.add_cycle(g, [(0, i) for i in range(5)])
    nx.add_cycle(g, [(1, i) for i in range(5)])
    nx.add_cycle(g, [(0, 5), (0, 6), (0, 7), (1, 5), (1, 6), (1, 7)])
    return _relabel(g, ordering='default')


def flower_snark(n: int = 5) -> Graph:
    """J_n: hubs a_i on b_i, c_i, d_i; b forms an n-cycle, c and d one 2n-cycle."""
    a, b, c, d = (lambda i: i), (lambda i: n + i), (lambda i: 2 * n + i), (lambda i: 3 * n + i)
    edges = []
    for i in range(n):
        edges += [(a(i), b(i)), (a(i), c(i)), (a(i), d(i)), (b(i), b((i + 1) % n))]
    ring = [c(i) for i in range(n)] + [d(i) for i in range(n)]
    edges += [(ring[i], ring[(i + 1) % (2 * n)]) for i in range(2 * n)]
    return Graph.from_edges(4 * n, edges)


def hoffman() -> Graph:
    return _from_dict({0: [1, 7, 8, 13], 1: [2, 9, 14], 2: [3, 8, 10], 3: [4, 9, 15], 4: [5, 10, 11],
                       5: [6, 12, 14], 6: [7, 11, 13], 7: [12, 15], 8: [12, 14], 9: [11, 13],
                       10: [12, 15], 11: [14], 13: [15]})


def friendship(n: int = 10) -> Graph:
    edges = []
    for i in range(n):
        edges += [(0, 2 * i + 1), (0, 2 * i + 2), (2 * i + 1, 2 * i + 2)]
    return Graph.from_edges(2 * n + 1, edges)


def poussin() -> Graph:
    g = nx.Graph()
    g.add_edges_from((u, v) for u, vs in {2: [7, 8, 3, 4], 1: [7, 6], 0: [6, 5, 4], 3: [5]}.items() for v in vs)
    nx.add_cycle(g, range(3))
    nx.add_cycle(g, range(3, 9))
    nx.add_cycle(g, range(9, 14))
    nx.add_path(g, [8, 12, 7, 11, 6, 10, 5, 9, 3, 13, 8, 12])
    g.add_edges_from((14, i) for i in range(9, 14))
    return _relabel(g)


def markstroem() -> Graph:
    g = nx.Graph()
    nx.add_cycle(g, range(9))
    nx.add_path(g, [0, 9, 10, 11, 2, 1, 11])
    nx.add_path(g, [3, 12, 13, 14, 5, 4, 14])
    nx.add_path(g, [6, 15, 16, 17, 8, 7, 17])
    for triangle in ([10, 9, 18], [12, 13, 19], [15, 16, 20], [21, 22, 23]):
        nx.add_cycle(g, triangle)
    g.add_edges_from([(19, 22), (18, 21), (20, 23)])
    return _relabel(g)


def clebsch() -> Graph:
    """Folded 5-cube: the 4-cube plus antipodal edges."""
    edges = [(u, u ^ (1 << i)) for u in range(16) for i in range(4) if u < u ^ (1 << i)]
    edges += [(u, u ^ 15) for u in range(8)]
    return Graph.from_edges(16, edges)


def folkman() -> Graph:
    """Edges of K_5 joined to both copies of their two endpoints."""
    pairs = list(combinations(range(5), 2))
    edges = []
    for p, (x, y) in enumerate(pairs):
        for copy in (0, 1):
            edges += [(p, 10 + 5 * copy + x), (p, 10 + 5 * copy + y)]
    return Graph.from_edges(20, edges)


def errera() -> Graph:
    return _from_dict({0: [1, 7, 14, 15, 16], 1: [2, 9, 14, 15], 2: [3, 8, 9, 10, 14], 3: [4, 9, 10, 11],
                       4: [5, 10, 11, 12], 5: [6, 11, 12, 13], 6: [7, 8, 12, 13, 16], 7: [13, 15, 16],
                       8: [10, 12, 14, 16], 9: [11, 13, 15], 10: [12], 11: [13], 13: [15], 14: [16]})


def shrikhande() -> Graph:
    """Cayley graph of Z4 x Z4 with connection set +-(0,1), +-(1,0), +-(1,1)."""
    steps = [(0, 1), (1, 0), (1, 1)]
    edges = []
    for x in range(4):
        for y in range(4):
            for dx, dy in steps:
                edges.append((4 * x + y, 4 * ((x + dx) % 4) + (y + dy) % 4))
    return Graph.from_edges(16, edges)


def paley(p: int = 17) -> Graph:
    squares = {(i * i) % p for i in range(1, p)}
    return Graph.from_edges(p, [(u, v) for u, v in combinations(range(p), 2) if (v - u) % p in squares])


def goethals_seidel() -> Graph:
    """Complement of the 4 x 4 rook's graph, strongly regular (16, 9, 4, 6)."""
    rook = nx.cartesian_product(nx.complete_graph(4), nx.complete_graph(4))
    return _relabel(nx.complement(rook))


CONSTRUCTORS: Dict[str, Callable[[], Graph]] = {
    'grotzsch': lambda: _relabel(nx.mycielski_graph(4)),
    'heawood': lambda: _relabel(nx.heawood_graph()),
    'chvatal': lambda: _relabel(nx.chvatal_graph()),
    'goldner_harary': goldner_harary,
    'sierpinski_gasket': sierpinski_gasket,
    'blanusa_second_snark': blanusa_second_snark,
    'icosahedral': lambda: _relabel(nx.icosahedral_graph()),
    'pappus': lambda: _relabel(nx.pappus_graph()),
    'desargues': lambda: _relabel(nx.desargues_graph()),
    'dodecahedral': lambda: _relabel(nx.dodecahedral_graph()),
    'flower_snark': flower_snark,
    'generalized_petersen': lambda: generalized_petersen(10, 4),
    'hoffman': hoffman,
    'friendship_10': friendship,
    'poussin': poussin,
    'markstroem': markstroem,
    'mcgee': lambda: _relabel(nx.LCF_graph(24, [12, 7, -7], 8)),
    'naru': lambda: generalized_petersen(12, 5),
    'clebsch': clebsch,
    'folkman': folkman,
    'errera': errera,
    'shrikhande': shrikhande,
    'paley': paley,
    'goethals_seidel': goethals_seidel,
}


@dataclass(frozen=True)
class CorpusEntry:
    slug: str
    name: str
    n: int
    m: int
    k: int
    pit: int
    arena: int
    colosseum: int
    provenance: str
    bundled: Optional[str] = None

    @property
    def treewidth(self) -> int:
        return self.k - 1

    @property
    def verified(self) -> bool:
        return self.provenance == 'reproduced'


def load_manifest(path: Path = MANIFEST) -> List[CorpusEntry]:
    """Manifest rows in file order."""
    entries = []
    with open(path, newline='') as f:
        for row in csv.DictReader(f):
            entries.append(CorpusEntry(
                slug=row['slug'], name=row['name'],
                n=int(row['n']), m=int(row['m']), k=int(row['k']),
                pit=int(row['pit']), arena=int(row['arena']), colosseum=int(row['colosseum']),
                provenance=row['provenance'], bundled=row['file'] or None))
    return entries


def entry(name: str) -> CorpusEntry:
    """Look up a manifest row by slug or display name, case-insensitively."""
    wanted = name.lower().replace(' ', '_').replace('-', '_')
    for item in load_manifest():
        if wanted in (item.slug, item.name.lower().replace(' ', '_')):
            return item
    raise KeyError(f"no named graph {name!r}")


def build(name: str) -> Graph:
    """Construct a named graph from its definition."""
    return CONSTRUCTORS[entry(name).slug]()


def load(name: str) -> Graph:
    """A named graph, read from its bundled file when one ships."""
    item = entry(name)
    if item.bundled:
        return parse_graph((DATA_DIR / item.bundled).read_text())
    return CONSTRUCTORS[item.slug]()


def names() -> List[str]:
    return [item.slug for item in load_manifest()]
