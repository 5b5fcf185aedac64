"""
Size statistics: pit, arena and colosseum at the least winning searcher
count, per-k growth sweeps and random-model benchmarks.
"""
import csv
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, TextIO, Tuple

import numpy as np

from src import corpus
from src.errors import EnumerationCapExceeded
from src.generators import generate
from src.graph import Graph
from src.oracle import Colosseum, arena_size
from src.pit import Pit, discover

logger = logging.getLogger(__name__)

HEADER = ['graph', 'n', 'm', 'k', 'pit', 'arena', 'colosseum']
BENCH_HEADER = ['trial', 'seed', 'n', 'm', 'k', 'pit', 'arena', 'colosseum']
MISSING = '-'


@dataclass
class StatsRow:
    graph: str
    n: int
    m: int
    k: int
    pit: int
    arena: int
    colosseum: Optional[int]

    def cells(self) -> List[str]:
        col = MISSING if self.colosseum is None else str(self.colosseum)
        return [self.graph, str(self.n), str(self.m), str(self.k), str(self.pit), str(self.arena), col]


def _colosseum(graph: Graph, k: int, cap: Optional[int]) -> Optional[int]:
    """Subsets C with |N(C)| <= k, the empty set included as in the published tables."""
    try:
        return Colosseum(graph, cap).size(k) + 1
    except EnumerationCapExceeded as exc:
        logger.info("colosseum skipped: %s", exc)
        return None


def _require_vertices(graph: Graph):
    if graph.n == 0:
        raise ValueError("graph has no vertices")


def minimal_pit(graph: Graph, **options) -> Pit:
    """pit(G, k) for the least k whose pit contains V(G), i.e. k = tw + 1."""
    _require_vertices(graph)
    k = graph.min_degree() + 1
    while True:
        pit = discover(graph, k, **options)
        if pit.wins:
            return pit
        k += 1


def stats_row(name: str, graph: Graph, cap: Optional[int] = None, **options) -> StatsRow:
    pit = minimal_pit(graph, **options)
    return StatsRow(name, graph.n, graph.m, pit.k, len(pit), arena_size(graph.n, pit.k),
                    _colosseum(graph, pit.k, cap))


def growth_rows(name: str, graph: Graph, cap: Optional[int] = None, start: int = 2, **options) -> List[StatsRow]:
    """One row per k from ``start`` up to the least winning k.

    When the least winning k is below ``start`` the sweep is that single row.
    """
    _require_vertices(graph)
    rows = []
    start = max(1, start)
    k = min(start, graph.min_degree() + 1)
    while True:
        pit = discover(graph, k, **options)
        if pit.wins or k >= start:
            rows.append(StatsRow(name, graph.n, graph.m, k, len(pit), arena_size(graph.n, k),
                                 _colosseum(graph, k, cap)))
        if pit.wins:
            return rows
        k += 1


def compare_with_entry(row: StatsRow, item: corpus.CorpusEntry) -> List[str]:
    """Columns where a reproduced row differs from the recorded manifest row.

    A colosseum skipped by the enumeration cap is not compared. Each
    difference is logged as a warning.
    """
    recorded = {'k': item.k, 'pit': item.pit, 'arena': item.arena, 'colosseum': item.colosseum}
    mismatched = []
    for column, expected in recorded.items():
        got = getattr(row, column)
        if got is None or got == expected:
            continue
        mismatched.append(column)
        logger.warning("%s: reproduced %s=%d differs from recorded %d", item.name, column, got, expected)
    return mismatched


def write_rows(rows: Iterable[StatsRow], out: TextIO, header: bool = True):
    writer = csv.writer(out, lineterminator='\n')
    if header:
        writer.writerow(HEADER)
    for row in rows:
        writer.writerow(row.cells())


@dataclass
class BenchResult:
    trial: int
    seed: int
    row: StatsRow
    seconds: float


def _run_trial(model: str, n: int, seed: int, trial: int, p: Optional[float], big_k: Optional[int],
               cap: Optional[int]) -> BenchResult:
    graph = generate(model, n, seed=seed, p=p, big_k=big_k)
    started = time.perf_counter()
    row = stats_row(f"{model}-{seed}", graph, cap)
    return BenchResult(trial, seed, row, time.perf_counter() - started)


class Bench:
    """Runs seeded trials of a random model and averages the sizes."""

    TRIALS = 25

    def __init__(self, model: str, n: int, seed: int = 0, trials: Optional[int] = None,
                 p: Optional[float] = None, big_k: Optional[int] = None,
                 cap: Optional[int] = None, jobs: int = 1):
        self.model = model
        self.n = n
        self.seed = seed
        self.trials = self.TRIALS if trials is None else trials
        self.p = p
        self.big_k = big_k
        self.cap = cap
        self.jobs = jobs

    def seeds(self) -> List[int]:
        return [self.seed + i for i in range(self.trials)]

    def run(self) -> List[BenchResult]:
        """Trials in seed order, in parallel when ``jobs`` > 1."""
        args = [(self.model, self.n, seed, i, self.p, self.big_k, self.cap) for i, seed in enumerate(self.seeds())]
        if self.jobs <= 1:
            results = [_run_trial(*a) for a in args]
        else:
            with ProcessPoolExecutor(max_workers=self.jobs) as pool:
                results = list(pool.map(_run_trial, *zip(*args)))
        for result in results:
            logger.info("trial %d (seed %d): k=%d pit=%d in %.2fs", result.trial, result.seed,
                        result.row.k, result.row.pit, result.seconds)
        return results

    @staticmethod
    def means(results: List[BenchResult]) -> List[str]:
        rows = [r.row for r in results]
        pit = np.mean([r.pit for r in rows])
        arena = np.mean([r.arena for r in rows])
        cols = [r.colosseum for r in rows]
        col = MISSING if any(c is None for c in cols) else f"{np.mean(cols):.1f}"
        return [f"{pit:.1f}", f"{arena:.1f}", col]

    def write(self, results: List[BenchResult], out: TextIO, timing: bool = True):
        writer = csv.writer(out, lineterminator='\n')
        writer.writerow(BENCH_HEADER + (['seconds'] if timing else []))
        for r in results:
            cells = [str(r.trial), str(r.seed)] + r.row.cells()[1:]
            writer.writerow(cells + ([f"{r.seconds:.3f}"] if timing else []))
        total = [f"{sum(r.seconds for r in results):.3f}"] if timing else []
        writer.writerow(['mean', '', '', '', ''] + self.means(results) + total)


def iter_named(names: Optional[List[str]] = None) -> Iterator[Tuple[corpus.CorpusEntry, Graph]]:
    """(manifest row, graph) for the named corpus, optionally filtered by slug.

    Raises:
        KeyError: if a requested slug is not in the corpus
    """
    entries = corpus.load_manifest()
    unknown = sorted(set(names or []) - {item.slug for item in entries})
    if unknown:
        raise KeyError(f"no named graph {', '.join(unknown)}")
    selected = [item for item in entries if not names or item.slug in names]
    return ((item, corpus.load(item.slug)) for item in selected)
