"""
Parameter drivers: weight schemes per parameter, single-k decisions and
iterative deepening to the exact value with a validated witness.
"""
import logging
from dataclasses import dataclass
from typing import Optional

from src.decomposition import TreeDecomposition, decomposition_from_strategy, validate_decomposition
from src.edge_alternating import INFINITY, StrategyDag, WeightScheme, constant, distance, extract_strategy, \
    forbid_arcs, format_weight
from src.errors import MemoryBudgetExceeded, QueryError, StructuralError
from src.graph import Graph, PartialOrder
from src.pit import Pit, discover
from src.query import ParameterKind, ParameterQuery

logger = logging.getLogger(__name__)


def scheme_for(query: ParameterQuery, k: int, pit: Pit) -> WeightScheme:
    """Weights and acceptance test deciding ``query`` on ``pit``.

    Args:
        query: parameter to decide
        k: number of searchers the pit was built for
        pit: pit(G, k)

    Returns:
        WeightScheme: scheme whose ``accept`` is evaluated at d(V(G), Q)

    Raises:
        QueryError: if the query does not fit the pit's graph
    """
    zero = constant(0)
    kind = query.kind
    if kind is ParameterKind.TREEWIDTH:
        return WeightScheme('tw', zero, zero, 0, lambda d: d < INFINITY)
    if kind is ParameterKind.PATHWIDTH:
        return WeightScheme('pw', zero, constant(INFINITY), 0, lambda d: d == 0)
    if kind is ParameterKind.TREEDEPTH:
        return WeightScheme('td', constant(1), zero, 1, lambda d: d <= k, bound=k)
    if kind is ParameterKind.BRANCHED_TREEWIDTH:
        q = query.q
        return WeightScheme('twq', zero, constant(1), 0, lambda d: d <= q, bound=q)

    order = query.order if query.order is not None else PartialOrder.empty(pit.graph.n)
    if order.n != pit.graph.n:
        raise QueryError(f"order covers {order.n} vertices but the graph has {pit.graph.n}")
    configs, preds = pit.vertices, order.predecessors

    def misplaced(u: int, v: int) -> bool:
        # placed vertex must be minimal among the contaminated ones
        c = configs[u]
        placed = (c & ~configs[v]).bit_length() - 1
        return bool(preds[placed] & c)

    base = WeightScheme('dtw', zero, zero, 0, lambda d: d < INFINITY)
    return forbid_arcs(base, existential=misplaced)


@dataclass
class Decision:
    k: int
    winnable: bool
    distance: int
    strategy: Optional[StrategyDag]
    pit: Pit

    def __str__(self):
        verdict = 'win' if self.winnable else 'lose'
        return f"k={self.k}: {verdict} (d={format_weight(self.distance)}, pit={len(self.pit)})"


def decide(graph: Graph, k: int, query: ParameterQuery, pit: Optional[Pit] = None, **options) -> Decision:
    """Decide the query with k searchers.

    k searchers decide width <= k - 1 for tw, pw, twq and dtw, and
    depth <= k for td.

    Args:
        graph: input graph
        k: number of searchers
        query: parameter to decide
        pit: a precomputed pit(graph, k) to reuse
        **options: forwarded to :class:`PitDiscovery` when the pit is built

    Returns:
        Decision: verdict, distance label of V(G) and a strategy when winnable
    """
    if pit is None:
        pit = discover(graph, k, **options)
    start = pit.start
    if start is None:
        logger.debug("k=%d: V(G) not in pit", k)
        return Decision(k, False, INFINITY, None, pit)

    scheme = scheme_for(query, k, pit)
    goals = pit.goal_ids()
    labels = distance(pit, goals, scheme)
    d = int(labels[start])
    if not scheme.accept(d):
        logger.debug("k=%d: %s rejects d=%s", k, scheme.name, format_weight(d))
        return Decision(k, False, d, None, pit)

    strategy = extract_strategy(pit, start, goals, scheme, labels)
    if query.kind is ParameterKind.BRANCHED_TREEWIDTH and strategy.max_universal_arcs() > query.q:
        raise StructuralError(f"strategy uses {strategy.max_universal_arcs()} reveals on a path, q={query.q}")
    return Decision(k, True, d, strategy, pit)


@dataclass
class ComputeResult:
    value: int
    witness: TreeDecomposition
    k: int
    decision: Decision


def compute(graph: Graph, query: ParameterQuery, **options) -> ComputeResult:
    """Exact parameter value by iterative deepening over the searcher count.

    Starts at k = min degree + 1, which no parameter here can undercut.

    Args:
        graph: nonempty input graph
        query: parameter to compute
        **options: forwarded to pit discovery

    Returns:
        ComputeResult: value, validated witness and the accepting k

    Raises:
        MemoryBudgetExceeded: carrying the best proven lower bound
        StructuralError: if the witness fails validation
    """
    if graph.n == 0:
        raise ValueError("graph has no vertices")
    k = graph.min_degree() + 1
    lower = graph.min_degree() + (1 if query.kind.is_depth else 0)
    while True:
        try:
            decision = decide(graph, k, query, **options)
        except MemoryBudgetExceeded as exc:
            raise MemoryBudgetExceeded(exc.reached, k, lower) from exc
        logger.info("%s %s", query.name, decision)
        if decision.winnable:
            break
        lower = query.value_for(k) + 1
        k += 1

    value = query.value_for(k)
    witness = decomposition_from_strategy(graph, decision.pit, decision.strategy, query)
    report = validate_decomposition(graph, witness, query, claimed=value)
    if not report.valid:
        raise StructuralError(f"{query.name} witness invalid: {'; '.join(report.violations)}")
    return ComputeResult(value, witness, k, decision)
