"""
Readers and writers for PACE ``.gr``, DIMACS ``.col``, PACE ``.td`` and
dependency order files. Files number vertices from 1; memory from 0.
"""
import logging
import sys
from typing import Iterator, List, Optional, Set, TextIO, Tuple

import networkx as nx

from src.decomposition import TreeDecomposition
from src.errors import GraphFormatError, OrderCycleError
from src.graph import Graph, PartialOrder, iter_bits

logger = logging.getLogger(__name__)

HEADERS = {'tw': 'gr', 'edge': 'col'}


def _lines(text: str) -> Iterator[Tuple[int, List[str]]]:
    """Non-blank, non-comment lines as (1-based line number, tokens)."""
    for number, line in enumerate(text.splitlines(), 1):
        parts = line.split()
        if parts and parts[0] != 'c':
            yield number, parts


def _int(token: str, number: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphFormatError(f"expected an integer, got {token!r}", number) from None


def _vertex(token: str, n: int, number: int) -> int:
    v = _int(token, number)
    if not 1 <= v <= n:
        raise GraphFormatError(f"vertex {v} out of range 1..{n}", number)
    return v - 1


def _parse_edges(text: str, kind: str) -> Graph:
    n = declared = None
    edges: List[Tuple[int, int]] = []
    seen: Set[Tuple[int, int]] = set()
    for number, parts in _lines(text):
        if parts[0] == 'p':
            if n is not None:
                raise GraphFormatError("second header line", number)
            if len(parts) != 4 or parts[1] not in HEADERS:
                raise GraphFormatError(f"unknown header {' '.join(parts)!r}", number)
            if HEADERS[parts[1]] != kind:
                raise GraphFormatError(f"header 'p {parts[1]}' in a .{kind} file", number)
            n, declared = _int(parts[2], number), _int(parts[3], number)
            if n < 0 or declared < 0:
                raise GraphFormatError("negative vertex or edge count", number)
            continue
        if n is None:
            raise GraphFormatError("edge before header line", number)
        if kind == 'col':
            if parts[0] != 'e':
                raise GraphFormatError(f"unknown line type {parts[0]!r}", number)
            parts = parts[1:]
        if len(parts) != 2:
            raise GraphFormatError("edge line needs two vertices", number)
        u, v = _vertex(parts[0], n, number), _vertex(parts[1], n, number)
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u + 1}", number)
        edge = (min(u, v), max(u, v))
        if edge in seen:
            logger.warning("line %d: duplicate edge %d-%d merged", number, edge[0] + 1, edge[1] + 1)
        seen.add(edge)
        edges.append(edge)
    if n is None:
        raise GraphFormatError("missing header line")
    if len(edges) != declared:
        raise GraphFormatError(f"header declares {declared} edges but {len(edges)} are listed")
    return Graph.from_edges(n, sorted(seen))


def parse_gr(text: str) -> Graph:
    """Parse a PACE graph (``p tw n m`` and ``u v`` lines)."""
    return _parse_edges(text, 'gr')


def parse_col(text: str) -> Graph:
    """Parse a DIMACS graph (``p edge n m`` and ``e u v`` lines)."""
    return _parse_edges(text, 'col')


def parse_graph(text: str) -> Graph:
    """Parse either format, chosen by the header line."""
    for number, parts in _lines(text):
        if parts[0] == 'p' and len(parts) > 1 and parts[1] in HEADERS:
            return _parse_edges(text, HEADERS[parts[1]])
        raise GraphFormatError(f"expected 'p tw' or 'p edge' header, got {' '.join(parts)!r}", number)
    raise GraphFormatError("missing header line")


def read_text(path: str, stdin: Optional[TextIO] = None) -> str:
    """Contents of ``path``; ``-`` reads standard input."""
    if path == '-':
        return (stdin or sys.stdin).read()
    with open(path, 'r') as f:
        return f.read()


def read_graph(path: str) -> Graph:
    return parse_graph(read_text(path))


def write_gr(graph: Graph) -> str:
    lines = [f"p tw {graph.n} {graph.m}"]
    lines += [f"{u + 1} {v + 1}" for u, v in graph.edges()]
    return '\n'.join(lines) + '\n'


def write_col(graph: Graph) -> str:
    lines = [f"p edge {graph.n} {graph.m}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in graph.edges()]
    return '\n'.join(lines) + '\n'


def write_td(td: TreeDecomposition) -> str:
    """Serialise in PACE ``.td`` form: header, bag lines, then tree edges."""
    lines = [f"s td {len(td)} {td.width + 1} {td.n}"]
    for i, bag in enumerate(td.bags):
        lines.append(' '.join(['b', str(i + 1)] + [str(v + 1) for v in iter_bits(bag)]))
    lines += [f"{par + 1} {node + 1}" for par, node in td.tree_edges()]
    return '\n'.join(lines) + '\n'


def parse_td(text: str) -> TreeDecomposition:
    """Parse a ``.td`` file and root its tree at bag 1.

    The header's width claim is kept as ``declared_width`` so the validator
    can compare it against the bags.

    Raises:
        GraphFormatError: on malformed lines, missing bags or tree edges
            that do not form a tree
    """
    header = None
    bags: dict = {}
    edges: List[Tuple[int, int]] = []
    for number, parts in _lines(text):
        if parts[0] == 's':
            if header is not None:
                raise GraphFormatError("second solution line", number)
            if len(parts) != 5 or parts[1] != 'td':
                raise GraphFormatError(f"unknown header {' '.join(parts)!r}", number)
            header = tuple(_int(p, number) for p in parts[2:])
            continue
        if header is None:
            raise GraphFormatError("line before 's td' header", number)
        count, _, n = header
        if parts[0] == 'b':
            if len(parts) < 2:
                raise GraphFormatError("bag line needs an id", number)
            bag_id = _int(parts[1], number)
            if not 1 <= bag_id <= count:
                raise GraphFormatError(f"bag id {bag_id} out of range 1..{count}", number)
            if bag_id in bags:
                raise GraphFormatError(f"bag {bag_id} defined twice", number)
            bag = 0
            for token in parts[2:]:
                bag |= 1 << _vertex(token, n, number)
            bags[bag_id] = bag
        elif len(parts) == 2:
            edges.append((_int(parts[0], number), _int(parts[1], number)))
        else:
            raise GraphFormatError(f"unknown line {' '.join(parts)!r}", number)
    if header is None:
        raise GraphFormatError("missing 's td' header")
    count, max_bag, n = header
    if len(bags) != count:
        raise GraphFormatError(f"header declares {count} bags but {len(bags)} are listed")

    tree = nx.Graph()
    tree.add_nodes_from(range(1, count + 1))
    tree.add_edges_from(edges)
    if count and (tree.number_of_nodes() != count or not nx.is_tree(tree)):
        raise GraphFormatError("tree edges do not form a tree over the bags")
    td = TreeDecomposition([], [], n, declared_width=max_bag - 1)
    if count:
        node_of = {1: td.add(bags[1], -1)}
        for par, child in nx.bfs_edges(tree, 1, sort_neighbors=sorted):
            node_of[child] = td.add(bags[child], node_of[par])
    return td


def parse_order(text: str, graph: Graph) -> PartialOrder:
    """Parse ``u < v`` lines into the transitively closed order.

    Raises:
        GraphFormatError: on malformed lines or unknown vertices
        OrderCycleError: if the pairs contain a cycle
    """
    pairs = []
    for number, parts in _lines(text):
        if len(parts) != 3 or parts[1] != '<':
            raise GraphFormatError("expected '<u> < <v>'", number)
        pairs.append((_vertex(parts[0], graph.n, number), _vertex(parts[2], graph.n, number)))
    try:
        return PartialOrder.from_pairs(graph.n, pairs)
    except OrderCycleError as exc:
        raise OrderCycleError([v + 1 for v in exc.cycle]) from None


def write_order(order: PartialOrder) -> str:
    return ''.join(f"{u + 1} < {v + 1}\n" for u, v in sorted(order.pairs()))
