"""
Tree decompositions: construction from searcher strategies and validation.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from src.edge_alternating import StrategyDag
from src.errors import StructuralError
from src.graph import Graph, PartialOrder, VertexSet, iter_bits, to_list
from src.pit import Pit
from src.query import ParameterKind, ParameterQuery

logger = logging.getLogger(__name__)


@dataclass
class TreeDecomposition:
    """Rooted tree of bags; ``parent[i] < i`` and node 0 is the root."""

    parent: List[int]
    bags: List[VertexSet]
    n: int
    shape: str = 'tree'  # 'tree', 'path' or 'nested'
    declared_width: Optional[int] = None

    def add(self, bag: VertexSet, parent: int) -> int:
        self.parent.append(parent)
        self.bags.append(bag)
        return len(self.bags) - 1

    def children(self) -> List[List[int]]:
        kids: List[List[int]] = [[] for _ in self.bags]
        for node, par in enumerate(self.parent):
            if par >= 0:
                kids[par].append(node)
        return kids

    @property
    def width(self) -> int:
        return max((bag.bit_count() for bag in self.bags), default=0) - 1

    def tree_edges(self) -> List[tuple]:
        return [(par, node) for node, par in enumerate(self.parent) if par >= 0]

    def tree_depth(self) -> int:
        """Nodes on the longest root-to-leaf path."""
        depth = [0] * len(self.bags)
        for node, par in enumerate(self.parent):
            depth[node] = 1 if par < 0 else depth[par] + 1
        return max(depth, default=0)

    def branch_count(self) -> int:
        """Most nodes with two or more children on any root-to-leaf path."""
        kids = self.children()
        branching = [0] * len(self.bags)
        for node, par in enumerate(self.parent):
            above = 0 if par < 0 else branching[par]
            branching[node] = above + (1 if len(kids[node]) > 1 else 0)
        return max(branching, default=0)

    def __len__(self):
        return len(self.bags)


def nested_from_forest(forest_parent: Dict[int, Optional[int]], n: int) -> TreeDecomposition:
    """Turn an elimination forest into a strictly nested decomposition.

    Each forest node becomes a bag holding itself and all its ancestors. A
    forest with several roots hangs below an extra root with an empty bag.
    """
    roots = sorted(v for v, par in forest_parent.items() if par is None)
    td = TreeDecomposition([], [], n, shape='nested')
    node_of: Dict[int, int] = {}
    if len(roots) > 1:
        td.add(0, -1)
    kids: Dict[Optional[int], List[int]] = {}
    for v, par in forest_parent.items():
        kids.setdefault(par, []).append(v)
    stack = [(v, 0 if len(roots) > 1 else -1) for v in reversed(roots)]
    while stack:
        v, par = stack.pop()
        above = td.bags[par] if par >= 0 else 0
        node_of[v] = td.add(above | (1 << v), par)
        for child in sorted(kids.get(v, ()), reverse=True):
            stack.append((child, node_of[v]))
    return td


def decomposition_from_strategy(graph: Graph, pit: Pit, strategy: StrategyDag,
                                query: ParameterQuery) -> TreeDecomposition:
    """Build the witness decomposition a winning strategy describes.

    A fly-move from C placing v yields the bag N(C) + v, a reveal at C yields
    the bag N(C) with one subtree per component, and a winning singleton {v}
    yields N(v) + v. For treedepth the placements form an elimination forest
    instead, which is returned in nested-bag form.

    Args:
        graph: the input graph
        pit: the pit the strategy lives in
        strategy: extracted strategy rooted at V(G)
        query: parameter the strategy was extracted for

    Returns:
        TreeDecomposition: the witness

    Raises:
        StructuralError: if the strategy is not a valid path in the pit
    """
    if pit.vertices[strategy.root] != graph.full:
        raise StructuralError("strategy does not start at the full vertex set")
    if query.kind is ParameterKind.TREEDEPTH:
        return nested_from_forest(_elimination_forest(pit, strategy), graph.n)

    td = TreeDecomposition([], [], graph.n)
    stack = [(strategy.root, -1)]
    while stack:
        vid, par = stack.pop()
        node = strategy.nodes.get(vid)
        if node is None:
            raise StructuralError(f"strategy node {vid} missing")
        c, border = pit.vertices[vid], pit.borders[vid]
        if node.kind == 'goal':
            td.add(border | c, par)
        elif node.kind == 'exists':
            child = node.children[0]
            placed = c & ~pit.vertices[child]
            if placed.bit_count() != 1:
                raise StructuralError(f"fly-move at {to_list(c)} does not place one vertex")
            stack.append((child, td.add(border | placed, par)))
        else:
            me = td.add(border, par)
            for child in reversed(node.children):
                stack.append((child, me))
    if query.kind is ParameterKind.PATHWIDTH:
        td.shape = 'path'
    return td


def _elimination_forest(pit: Pit, strategy: StrategyDag) -> Dict[int, Optional[int]]:
    forest: Dict[int, Optional[int]] = {}
    stack = [(strategy.root, None)]
    while stack:
        vid, above = stack.pop()
        node = strategy.nodes[vid]
        c = pit.vertices[vid]
        if node.kind == 'goal':
            forest[c.bit_length() - 1] = above
        elif node.kind == 'exists':
            placed = c & ~pit.vertices[node.children[0]]
            v = placed.bit_length() - 1
            forest[v] = above
            stack.append((node.children[0], v))
        else:
            for child in node.children:
                stack.append((child, above))
    return forest


@dataclass
class ValidationReport:
    valid: bool
    width: int
    depth: int
    branch_count: int
    mixed_depth: int
    value: int
    violations: List[str] = field(default_factory=list)


def validate_decomposition(graph: Graph, td: TreeDecomposition, query: ParameterQuery,
                           claimed: Optional[int] = None) -> ValidationReport:
    """Check a decomposition against the graph and the query's shape rules.

    Args:
        graph: the graph being decomposed
        td: candidate decomposition
        query: parameter whose shape rules apply
        claimed: parameter value the decomposition should certify

    Returns:
        ValidationReport: measurements plus every violation found
    """
    violations: List[str] = []
    size = len(td)
    if size == 0:
        violations.append("decomposition has no bags")
        return ValidationReport(False, -1, 0, 0, 0, -1, violations)
    roots = [i for i, par in enumerate(td.parent) if par < 0]
    if roots != [0] or any(not (0 <= par < i) for i, par in enumerate(td.parent) if i):
        violations.append("bags do not form a tree rooted at the first bag")
    for i, bag in enumerate(td.bags):
        if bag >> graph.n:
            violations.append(f"bag {i + 1} names a vertex outside the graph")

    for v in range(graph.n):
        holders = [i for i, bag in enumerate(td.bags) if bag >> v & 1]
        if not holders:
            violations.append(f"vertex {graph.label(v)} is in no bag")
            continue
        tops = [i for i in holders if td.parent[i] < 0 or not td.bags[td.parent[i]] >> v & 1]
        if len(tops) > 1:
            violations.append(f"bags holding vertex {graph.label(v)} are not connected")
    for u, v in graph.edges():
        pair = (1 << u) | (1 << v)
        if not any(bag & pair == pair for bag in td.bags):
            violations.append(f"edge {graph.label(u)}-{graph.label(v)} is in no bag")

    width = td.width
    if td.declared_width is not None and td.declared_width != width:
        violations.append(f"declared width {td.declared_width} but largest bag gives {width}")
    kids = td.children()
    branch = td.branch_count()
    kind = query.kind
    value = width
    if kind is ParameterKind.PATHWIDTH and any(len(k) > 1 for k in kids):
        violations.append("decomposition is not a path")
    if kind is ParameterKind.TREEDEPTH:
        value = width + 1
        for i, par in enumerate(td.parent):
            if par >= 0 and not (td.bags[par] & ~td.bags[i] == 0 and td.bags[par] != td.bags[i]):
                violations.append(f"bag {i + 1} does not strictly contain its parent bag")
                break
    if kind is ParameterKind.BRANCHED_TREEWIDTH and branch > query.q:
        violations.append(f"{branch} branching nodes on a root-leaf path exceed q={query.q}")
    if kind is ParameterKind.DEPENDENCY_TREEWIDTH and query.order is not None:
        violations.extend(_dependency_violations(graph, td, query.order))
    if claimed is not None and value > claimed:
        violations.append(f"{query.name} witness has value {value} above the claimed {claimed}")

    depth = td.tree_depth()
    return ValidationReport(not violations, width, depth, branch, max(width, depth), value, violations)


def _dependency_violations(graph: Graph, td: TreeDecomposition, order: PartialOrder) -> List[str]:
    """Vertices introduced strictly above one of their predecessors."""
    first: Dict[int, int] = {}
    for i, bag in enumerate(td.bags):
        for v in iter_bits(bag):
            first.setdefault(v, i)
    ancestors: List[set] = []
    for i, par in enumerate(td.parent):
        ancestors.append(set() if par < 0 else ancestors[par] | {par})
    found = []
    for u, v in order.pairs():
        if u in first and v in first and first[v] in ancestors[first[u]]:
            found.append(f"vertex {graph.label(v)} is introduced above its predecessor {graph.label(u)}")
    return found
