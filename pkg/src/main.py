#!/usr/bin/env python3
"""
pitwidth command line: exact treewidth, pathwidth, treedepth, q-branched and
dependency treewidth, pit statistics, generators and witness verification.
"""
import argparse
import logging
import os
import sys
from contextlib import ExitStack
from pathlib import Path
from typing import List, Optional, TextIO

# Add parent directory to path for imports
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src import corpus
from src.decomposition import validate_decomposition
from src.errors import GraphFormatError, MemoryBudgetExceeded, PitWidthError, QueryError
from src.formats import parse_graph, parse_order, parse_td, read_text, write_col, write_gr, write_order, write_td
from src.generators import claw_free, generate
from src.graph import Graph
from src.parameters import compute, decide
from src.query import ParameterKind, ParameterQuery
from src.stats import Bench, compare_with_entry, growth_rows, iter_named, stats_row, write_rows

logger = logging.getLogger('pitwidth')

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_MEMORY = 2
EXIT_USAGE = 64


class UsageError(Exception):
    """Bad command-line arguments."""


class ArgumentParser(argparse.ArgumentParser):
    """argparse with the usage exit status of the tool."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class PitWidthCli:
    """Runs one subcommand and reports on stdout."""

    GREEN, RED, RESET = '\033[32m', '\033[31m', '\033[0m'

    def __init__(self, out: Optional[TextIO] = None):
        self.out = out or sys.stdout
        self.plain = 'NO_COLOR' in os.environ
        self.color = not self.plain and hasattr(self.out, 'isatty') and self.out.isatty()

    def mark(self, ok: bool) -> str:
        """Status mark: check/cross, plain words under NO_COLOR."""
        if self.plain:
            return 'ok' if ok else 'FAIL'
        symbol = '✓' if ok else '✗'
        if self.color:
            return f"{self.GREEN if ok else self.RED}{symbol}{self.RESET}"
        return symbol

    def emit(self, text: str):
        print(text, file=self.out)

    @staticmethod
    def discovery_options(args, stack: ExitStack) -> dict:
        options = {}
        if getattr(args, 'memory_budget', None) is not None:
            options['memory_budget'] = args.memory_budget
        if getattr(args, 'literal_glue', False):
            options['glue_non_adjacent'] = False
        if getattr(args, 'trace', None):
            options['trace'] = stack.enter_context(open(args.trace, 'w'))
        return options

    @staticmethod
    def named_graph(name: str) -> Graph:
        try:
            return corpus.load(name)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from exc

    @staticmethod
    def require_vertices(graph: Graph, name: str = 'graph'):
        if graph.n == 0:
            raise UsageError(f"{name} has no vertices")

    @staticmethod
    def generated(model: str, n: int, **params) -> Graph:
        try:
            return generate(model, n, **params)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc

    def load_graph(self, args) -> Graph:
        if getattr(args, 'named', None):
            return self.named_graph(args.named)
        return parse_graph(read_text(args.input))

    @staticmethod
    def query(args, graph: Graph) -> ParameterQuery:
        order = None
        if args.order:
            if args.param != ParameterKind.DEPENDENCY_TREEWIDTH.value:
                raise QueryError("--order only applies to --param dtw")
            order = parse_order(read_text(args.order), graph)
        return ParameterQuery.parse(args.param, args.q, order)

    def cmd_solve(self, args) -> int:
        graph = self.load_graph(args)
        self.require_vertices(graph)
        query = self.query(args, graph)
        with ExitStack() as stack:
            options = self.discovery_options(args, stack)
            if args.decide is not None:
                if args.decide < 1:
                    raise UsageError("--decide needs at least one searcher")
                decision = decide(graph, args.decide, query, **options)
                bound = query.value_for(args.decide)
                self.emit(f"{query.name} {'<=' if decision.winnable else '>'} {bound}")
                return EXIT_OK
            try:
                result = compute(graph, query, **options)
            except MemoryBudgetExceeded as exc:
                print(f"error: {exc}", file=sys.stderr)
                self.emit(f"{query.name} >= {exc.lower_bound}")
                return EXIT_MEMORY
        self.emit(f"{query.name} = {result.value}")
        if args.output_td:
            Path(args.output_td).write_text(write_td(result.witness))
        if args.output_order and query.order is not None:
            Path(args.output_order).write_text(write_order(query.order))
        return EXIT_OK

    def cmd_verify(self, args) -> int:
        graph = parse_graph(read_text(args.graph))
        query = self.query(args, graph)
        td = parse_td(read_text(args.td))
        if td.n != graph.n:
            raise GraphFormatError(f"decomposition covers {td.n} vertices, graph has {graph.n}")
        report = validate_decomposition(graph, td, query, claimed=args.claimed)
        verdict = 'VALID' if report.valid else 'INVALID'
        self.emit(f"{self.mark(report.valid)} {verdict} {query.name} width={report.width} "
                  f"depth={report.depth} branch_count={report.branch_count} value={report.value}")
        for violation in report.violations:
            self.emit(f"  {violation}")
        return EXIT_OK if report.valid else EXIT_INVALID

    def cmd_stats(self, args) -> int:
        if args.corpus == 'named':
            try:
                graphs = ((item, item.name, graph) for item, graph in iter_named(args.graphs))
            except KeyError as exc:
                raise UsageError(exc.args[0]) from exc
        else:
            folder = Path(args.corpus)
            if not folder.is_dir():
                raise UsageError(f"{folder} is neither 'named' nor a directory")
            files = sorted(p for p in folder.iterdir() if p.suffix in ('.gr', '.col'))
            graphs = ((None, p.stem, parse_graph(p.read_text())) for p in files)
        with ExitStack() as stack:
            options = self.discovery_options(args, stack)
            out = stack.enter_context(open(args.output, 'w')) if args.output else self.out
            write_rows([], out)
            for item, name, graph in graphs:
                self.require_vertices(graph, name)
                if args.growth:
                    rows = growth_rows(name, graph, args.max_n, **options)
                else:
                    rows = [stats_row(name, graph, args.max_n, **options)]
                write_rows(rows, out, header=False)
                if item is not None:
                    compare_with_entry(rows[-1], item)
                logger.info("%s done", name)
        return EXIT_OK

    def cmd_gen(self, args) -> int:
        if args.model == 'named':
            if not args.name:
                raise UsageError("--model named needs --name")
            graph = self.named_graph(args.name)
        elif args.model == 'clawfree':
            graph = claw_free(args.seed)
        else:
            if args.n is None:
                raise UsageError(f"--model {args.model} needs --n")
            graph = self.generated(args.model, args.n, seed=args.seed, p=args.p, big_k=args.K, k=args.k)
        text = write_col(graph) if args.format == 'col' else write_gr(graph)
        if args.output and args.output != '-':
            Path(args.output).write_text(text)
        else:
            self.out.write(text)
        return EXIT_OK

    def cmd_bench(self, args) -> int:
        self.require_vertices(self.generated(args.model, args.n, seed=args.seed, p=args.p, big_k=args.K),
                              f"{args.model} with --n {args.n}")
        bench = Bench(args.model, args.n, seed=args.seed, trials=args.trials, p=args.p, big_k=args.K,
                      cap=args.max_n, jobs=args.jobs)
        results = bench.run()
        with ExitStack() as stack:
            out = stack.enter_context(open(args.output, 'w')) if args.output else self.out
            bench.write(results, out, timing=not args.no_timing)
        return EXIT_OK


def seed_value(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError(f"seed must be a 64-bit unsigned integer, got {text}")
    return value


def add_query_flags(parser):
    parser.add_argument('--param', required=True, choices=[kind.value for kind in ParameterKind],
                        help='parameter to compute')
    parser.add_argument('--q', type=int, help='branch budget for twq')
    parser.add_argument('--order', help='dependency order file for dtw (lines "u < v")')


def add_discovery_flags(parser):
    parser.add_argument('--memory-budget', type=int, help='bytes of pit storage before aborting')
    parser.add_argument('--literal-glue', action='store_true',
                        help='glue disjoint configurations even when adjacent')
    parser.add_argument('--trace', help='write one line per discovered configuration to this file')


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog='pitwidth', description='Exact width parameters by positive-instance driven search')
    parser.add_argument('-v', '--verbose', action='store_true', help='progress on stderr')
    parser.add_argument('--debug', action='store_true', help='debug logging on stderr')
    sub = parser.add_subparsers(dest='command', required=True, parser_class=ArgumentParser)

    solve = sub.add_parser('solve', help='compute or decide a parameter')
    add_query_flags(solve)
    solve.add_argument('--input', default='-', help='graph file (.gr or .col), - for stdin')
    solve.add_argument('--named', help='use a graph of the named corpus instead of --input')
    solve.add_argument('--output-td', help='write the witness decomposition here')
    solve.add_argument('--output-order', help='write the closed dependency order here')
    solve.add_argument('--decide', type=int, metavar='K', help='only decide with K searchers')
    add_discovery_flags(solve)

    verify = sub.add_parser('verify', help='validate a .td file')
    verify.add_argument('--graph', required=True, help='graph file')
    verify.add_argument('--td', required=True, help='decomposition file')
    verify.add_argument('--claimed', type=int, help='value the decomposition must not exceed')
    add_query_flags(verify)

    stats = sub.add_parser('stats', help='pit, arena and colosseum sizes')
    stats.add_argument('--corpus', default='named', help="'named' or a directory of graph files")
    stats.add_argument('--graphs', nargs='*', help='restrict the named corpus to these slugs')
    stats.add_argument('--growth', action='store_true', help='one row per k from 2 (or a lower optimum) to the optimum')
    stats.add_argument('--max-n', type=int, help='largest n for colosseum enumeration')
    stats.add_argument('--output', help='CSV file (default stdout)')
    add_discovery_flags(stats)

    gen = sub.add_parser('gen', help='generate a graph')
    gen.add_argument('--model', required=True, choices=['er', 'ws', 'ba', 'pnk', 'named', 'clawfree'])
    gen.add_argument('--n', type=int, help='vertices (er/ws/ba) or cliques (pnk)')
    gen.add_argument('--p', type=float, help='edge or rewiring probability')
    gen.add_argument('--K', type=int, help='lattice neighbors per side (ws) or edges per vertex (ba)')
    gen.add_argument('--k', type=int, help='clique size (pnk)')
    gen.add_argument('--seed', type=seed_value, default=0)
    gen.add_argument('--name', help='named graph to export')
    gen.add_argument('--format', choices=['gr', 'col'], default='gr')
    gen.add_argument('--output', help='output file (default stdout)')

    bench = sub.add_parser('bench', help='mean sizes over seeded random graphs')
    bench.add_argument('--model', required=True, choices=['er', 'ws', 'ba'])
    bench.add_argument('--n', type=int, default=25)
    bench.add_argument('--p', type=float)
    bench.add_argument('--K', type=int)
    bench.add_argument('--trials', type=int, default=Bench.TRIALS)
    bench.add_argument('--seed', type=seed_value, default=0)
    bench.add_argument('--max-n', type=int, help='largest n for colosseum enumeration')
    bench.add_argument('--jobs', type=int, default=1, help='worker processes')
    bench.add_argument('--no-timing', action='store_true', help='omit wall-clock columns')
    bench.add_argument('--output', help='CSV file (default stdout)')
    return parser


def main(argv: Optional[List[str]] = None, out: Optional[TextIO] = None) -> int:
    """Main CLI entry point."""
    args = build_parser().parse_args(argv)
    level = logging.DEBUG if args.debug else logging.INFO if args.verbose else logging.WARNING
    logging.basicConfig(stream=sys.stderr, level=level, format='%(levelname)s %(name)s: %(message)s')

    cli = PitWidthCli(out)
    command = getattr(cli, f"cmd_{args.command}")
    try:
        return command(args)
    except (GraphFormatError, QueryError, UsageError, OSError) as exc:
        print(f"pitwidth: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MemoryBudgetExceeded as exc:
        print(f"pitwidth: error: {exc}", file=sys.stderr)
        return EXIT_MEMORY
    except PitWidthError as exc:
        print(f"pitwidth: error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == '__main__':
    sys.exit(main())
