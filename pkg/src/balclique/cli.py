"""Command-line interface: ``balclique <subcommand> [options]``.

Exit codes: 0 success, 1 input/parse failure, 2 usage error, 3 time budget
exhausted (a ``{"status": "timeout", ...}`` record is printed first).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from typing import TextIO

from .enumeration import (
    BASIC,
    STAR,
    EnumOptions,
    SearchStats,
    SearchTimeout,
    enumerate_cliques,
    enumerate_parallel,
)
from .graph import (
    GraphError,
    SignedGraph,
    degeneracy,
    dump_edge_list,
    format_clique,
    graph_stats,
    load_edge_list,
    random_base_edges,
    synthesize_signed,
)
from .maximum import BASELINE, SSP, SSP_STAR, DEFAULT_SLOW_THRESHOLD, search_maximum
from .oracle import OracleTooLarge, brute_enum, brute_max
from .reduction import edge_reduction, edge_reduction_plus, reduce_for_enumeration, vertex_reduction

EXIT_INPUT = 1
EXIT_TIMEOUT = 3

MAX_ALGOS = {"baseline": BASELINE, "ssp": SSP, "ssp-star": SSP_STAR}
ENUM_ALGOS = {"basic": BASIC, "star": STAR}


class UsageError(Exception):
    pass


def positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {text}")
    return value


def non_negative_float(text: str) -> float:
    value = float(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a value >= 0, got {text}")
    return value


def on_off(text: str) -> bool:
    if text not in ("on", "off"):
        raise argparse.ArgumentTypeError("expected 'on' or 'off'")
    return text == "on"


def ratio(text: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a ratio like 4:1, got {text!r}")
    if a < 0 or b < 0 or a + b == 0:
        raise argparse.ArgumentTypeError(f"bad group ratio {text!r}")
    return a, b


def common_flags() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--input", default="-", help="signed edge list path, '-' for stdin")
    p.add_argument("--format", choices=["triple", "snap-sign"], default="triple")
    p.add_argument("--output", choices=["text", "jsonl", "count"], default="text")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=positive_int, default=1)
    p.add_argument("--time-budget-secs", type=non_negative_float, default=0.0,
                   help="0 means unlimited")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="balclique",
        description="Maximal and maximum balanced cliques in signed networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True,
                                metavar="{enum,max,reduce,stats,gen,bench}")
    parent = common_flags()

    p = sub.add_parser("enum", parents=[parent], help="enumerate maximal balanced cliques")
    p.add_argument("--k", type=positive_int, required=True)
    p.add_argument("--algo", choices=sorted(ENUM_ALGOS), default="star")
    p.add_argument("--pivot", type=on_off, default=None, metavar="{on,off}")
    p.add_argument("--et", type=on_off, default=None, metavar="{on,off}")
    p.add_argument("--order", choices=["degeneracy", "id"], default="degeneracy")
    p.add_argument("--reduce", type=on_off, default=True, metavar="{on,off}",
                   help="peel the graph with vertex and edge reduction first (default on)")
    p.add_argument("--store", choices=["naive", "partitioned"], default="naive",
                   help=argparse.SUPPRESS)

    p = sub.add_parser("max", parents=[parent], help="find a maximum balanced clique")
    p.add_argument("--k", type=positive_int, required=True)
    p.add_argument("--algo", choices=list(MAX_ALGOS), default="ssp-star")
    p.add_argument("--slow-threshold-secs", type=non_negative_float, default=DEFAULT_SLOW_THRESHOLD)
    p.add_argument("--trace-regions", action="store_true")

    p = sub.add_parser("reduce", parents=[parent], help="write a reduced edge list")
    p.add_argument("--k", type=positive_int, required=True)
    p.add_argument("--mode", choices=["vertex", "edge", "both", "plus"], default="both")
    p.add_argument("--kappa-lo", type=positive_int, default=None)
    p.add_argument("--kappa-hi", type=positive_int, default=None)

    sub.add_parser("stats", parents=[parent], help="print graph statistics")

    p = sub.add_parser("gen", parents=[parent], help="generate a synthetic signed graph")
    p.add_argument("--n", type=positive_int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--base", default=None,
                   help="unsigned edge list 'u v' to sign instead of a random G(n, m)")
    p.add_argument("--ratio", type=ratio, default=(4, 1), help="group size ratio (default 4:1)")

    p = sub.add_parser("bench", parents=[parent], help="time one algorithm run")
    p.add_argument("--k", type=positive_int, default=2)
    p.add_argument("--algo", choices=sorted(ENUM_ALGOS) + list(MAX_ALGOS), default="ssp-star")
    p.add_argument("--repeat", type=positive_int, default=1)
    p.add_argument("--slow-threshold-secs", type=non_negative_float, default=DEFAULT_SLOW_THRESHOLD)
    p.add_argument("--trace-regions", action="store_true")

    p = sub.add_parser("oracle", parents=[parent])
    p.add_argument("--k", type=positive_int, required=True)
    p.add_argument("--mode", choices=["enum", "max"], default="enum")
    p.add_argument("--cap", type=positive_int, default=20)
    return parser


def read_graph(args) -> SignedGraph:
    if args.input == "-":
        return load_edge_list(sys.stdin, args.format)
    with open(args.input, encoding="utf-8") as fh:
        return load_edge_list(fh, args.format)


def timeout_record(command: str, stats: SearchStats, budget: float) -> str:
    return json.dumps({"status": "timeout", "command": command,
                       "frames": stats.frames, "budget_secs": budget})


def cmd_enum(args, out: TextIO) -> int:
    g = read_graph(args)
    base = ENUM_ALGOS[args.algo]
    opts = EnumOptions(
        pivot=base.pivot if args.pivot is None else args.pivot,
        early_termination=base.early_termination if args.et is None else args.et,
        order_by_degree=base.order_by_degree,
        root_order=args.order,
    )
    count = 0

    def sink(c):
        nonlocal count
        count += 1
        if args.output != "count":
            out.write(format_clique(g, c, args.output) + "\n")

    stats = SearchStats(args.time_budget_secs)
    try:
        if args.threads > 1 and args.store == "naive":
            enumerate_parallel(g, args.k, sink, opts, args.threads, reduce=args.reduce, stats=stats)
        else:
            enumerate_cliques(g, args.k, sink, opts, reduce=args.reduce,
                              stats=stats, backend=args.store)
    except SearchTimeout:
        out.write(timeout_record("enum", stats, args.time_budget_secs) + "\n")
        return EXIT_TIMEOUT
    if args.output == "count":
        out.write(f"{count}\n")
    return 0


def trace_line(row, output: str) -> str:
    if output == "jsonl":
        return json.dumps({"region": row.as_dict()})
    return (f"region index={row.index} kappa_lo={row.kappa_lo} kappa_hi={row.kappa_hi} "
            f"m_pos={row.m_pos} m_neg={row.m_neg} epsilon={row.epsilon} "
            f"| seconds={row.seconds:.6f}")


def cmd_max(args, out: TextIO) -> int:
    g = read_graph(args)
    stats = SearchStats(args.time_budget_secs)
    try:
        report = search_maximum(g, args.k, MAX_ALGOS[args.algo],
                                slow_threshold=args.slow_threshold_secs, stats=stats)
    except SearchTimeout:
        out.write(timeout_record("max", stats, args.time_budget_secs) + "\n")
        return EXIT_TIMEOUT
    if args.trace_regions:
        for row in report.regions:
            out.write(trace_line(row, args.output) + "\n")
    c = report.clique
    if args.output == "count":
        out.write(f"{0 if c is None else len(c)}\n")
    elif args.output == "jsonl":
        if c is None:
            out.write(json.dumps({"result": None}) + "\n")
        else:
            rec = json.loads(format_clique(g, c, "jsonl"))
            rec["size"] = len(c)
            out.write(json.dumps(rec) + "\n")
    else:
        out.write("no result\n" if c is None else format_clique(g, c) + "\n")
    return 0


def cmd_reduce(args, out: TextIO) -> int:
    g = read_graph(args)
    if args.mode == "vertex":
        h = vertex_reduction(g, args.k)
    elif args.mode == "edge":
        h = edge_reduction(g, args.k)
    elif args.mode == "both":
        h = reduce_for_enumeration(g, args.k)
    else:
        lo = args.kappa_lo if args.kappa_lo is not None else args.k
        hi = args.kappa_hi if args.kappa_hi is not None else lo
        if lo > hi:
            raise UsageError("--kappa-lo must not exceed --kappa-hi")
        h = edge_reduction_plus(g, lo, hi)
    dump_edge_list(h, out, args.format)
    return 0


def cmd_stats(args, out: TextIO) -> int:
    g = read_graph(args)
    rec = graph_stats(g).as_dict()
    rec["sigma_all"] = degeneracy(g, "all_edges").sigma
    rec["sigma_pos"] = degeneracy(g, "positive_only").sigma
    if args.output == "jsonl":
        out.write(json.dumps(rec) + "\n")
    else:
        for key, value in rec.items():
            out.write(f"{key} {value}\n")
    return 0


def read_base_edges(path: str) -> list[tuple[int, int]]:
    edges = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) < 2:
                raise GraphError(f"line {lineno}: expected 'u v'")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise GraphError(f"line {lineno}: base edge lists need integer ids")
            if u != v:
                edges.append((u, v))
    return edges


def cmd_gen(args, out: TextIO) -> int:
    if args.base is not None:
        edges = read_base_edges(args.base)
        n = args.n
    else:
        if args.n is None or args.m is None:
            raise UsageError("gen needs --n and --m (or --base)")
        edges = random_base_edges(args.n, args.m, random.Random(args.seed))
        n = args.n
    g = synthesize_signed(edges, args.ratio, args.seed, n)
    dump_edge_list(g, out, args.format)
    return 0


def cmd_bench(args, out: TextIO) -> int:
    g = read_graph(args)
    for run in range(args.repeat):
        stats = SearchStats(args.time_budget_secs)
        rec = {"run": run, "algo": args.algo, "k": args.k, "n": g.n,
               "m_pos": g.m_pos, "m_neg": g.m_neg}
        started = time.perf_counter()
        regions = []
        try:
            if args.algo in ENUM_ALGOS:
                rec["cliques"] = enumerate_cliques(g, args.k, lambda c: None,
                                                   ENUM_ALGOS[args.algo], reduce=True, stats=stats)
            else:
                report = search_maximum(g, args.k, MAX_ALGOS[args.algo],
                                        slow_threshold=args.slow_threshold_secs, stats=stats)
                rec["size"] = 0 if report.clique is None else len(report.clique)
                regions = report.regions
        except SearchTimeout:
            out.write(timeout_record("bench", stats, args.time_budget_secs) + "\n")
            return EXIT_TIMEOUT
        rec["frames"] = stats.frames
        rec["timing"] = {"seconds": round(time.perf_counter() - started, 6)}
        if args.trace_regions:
            for row in regions:
                out.write(trace_line(row, args.output) + "\n")
        if args.output == "jsonl":
            out.write(json.dumps(rec) + "\n")
        else:
            timing = rec.pop("timing")
            fields = " ".join(f"{k}={v}" for k, v in rec.items())
            out.write(f"bench {fields} | seconds={timing['seconds']:.6f}\n")
    return 0


def cmd_oracle(args, out: TextIO) -> int:
    g = read_graph(args)
    if args.mode == "max":
        c = brute_max(g, args.k, args.cap)
        out.write("no result\n" if c is None else format_clique(g, c, args.output if args.output != "count" else "text") + "\n")
        return 0
    found = sorted(brute_enum(g, args.k, args.cap), key=lambda c: c.sort_key())
    if args.output == "count":
        out.write(f"{len(found)}\n")
    else:
        for c in found:
            out.write(format_clique(g, c, args.output) + "\n")
    return 0


COMMANDS = {
    "enum": cmd_enum, "max": cmd_max, "reduce": cmd_reduce, "stats": cmd_stats,
    "gen": cmd_gen, "bench": cmd_bench, "oracle": cmd_oracle,
}


def main(argv: list[str] | None = None, out: TextIO | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = out if out is not None else sys.stdout
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"balclique {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (OSError, GraphError, OracleTooLarge) as exc:
        print(f"balclique {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
