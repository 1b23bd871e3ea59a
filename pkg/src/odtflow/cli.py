"""Command-line interface: mine, verify, benchmark, and synthesize.

Exit codes: 0 success, 1 usage or I/O failure, 2 verification mismatch,
3 timeout.  Log verbosity comes from the ``ODT_LOG`` environment variable
(standard level names; default WARNING).
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import random
import sys
import time
from typing import Optional, Sequence

from . import synth
from .approx import mine_approx, mine_weighted
from .errors import MiningTimeout, OdtError
from .exact import MiningResult, OptimizationFlags, cost_breakdown, mine_all
from .ingest import (
    AtomicPatternSet,
    TripsTable,
    extract_atomic_patterns,
    load_graph,
    load_trips,
)
from .model import MiningParams, ODTPattern, ODTTriple, RegionGraph, TimeDomain
from .oracle import OracleConfig, filter_by_domain, filter_by_sizes, oracle_patterns
from .variants import mine_bounded, mine_constrained, mine_ranked

logger = logging.getLogger("odtflow.cli")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MISMATCH = 2
EXIT_TIMEOUT = 3

ALGOS = (
    "baseline",
    "av",
    "avfc",
    "avfcin",
    "opt",
    "bounded",
    "constrained",
    "rank",
    "approx",
    "wapprox",
)
_FLAG_ALGOS = ("baseline", "av", "avfc", "avfcin", "opt")


class UsageError(OdtError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # noqa: A003 - argparse hook
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="odtflow", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_instance_args(p: _Parser) -> None:
        p.add_argument("--graph", required=True, help="edge-list file")
        p.add_argument("--trips", required=True, help="trips CSV")
        p.add_argument("--slots", type=int, default=48, help="atomic slots per period")
        p.add_argument("--slot-width", type=int, default=30, help="minutes per slot for HH:MM input")
        p.add_argument("--period", default=None, help="keep only rows with this period label")

    mine = sub.add_parser("mine", help="mine patterns with a chosen algorithm")
    add_instance_args(mine)
    mine.add_argument("--algo", required=True, choices=ALGOS)
    mine.add_argument("--sa", type=float, required=True, help="atomic support fraction s_a")
    mine.add_argument("--sr", type=float, default=None, help="minimum ratio threshold s_r")
    mine.add_argument("--bounds", default=None, help="BO,BD,BT component size caps")
    mine.add_argument("--origins", default=None, help="file of allowed origin region names")
    mine.add_argument("--dests", default=None, help="file of allowed destination region names")
    mine.add_argument("--timerange", default=None, help="A,B inclusive slot window")
    mine.add_argument("--rescope-sa", action="store_true", help="recompute s_a inside the constrained domain")
    mine.add_argument("--top-k", type=int, default=None, help="patterns kept per level (rank)")
    mine.add_argument("--maxl", type=int, default=None, help="maximum level (rank)")
    mine.add_argument("--rank-engine", choices=("optrank", "baserank"), default="optrank")
    mine.add_argument("--sizes", default=None, help="SO,SD,ST component sizes (approx)")
    mine.add_argument("--samples", type=int, default=None, help="sample/verification budget M")
    mine.add_argument("--seed", type=int, default=0)
    mine.add_argument("--threads", type=int, default=1)
    mine.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    mine.add_argument("--out", default="-", help="output path, '-' for stdout")
    mine.add_argument("--timeout", type=float, default=None, help="seconds before aborting")
    mine.add_argument("--instrument", action="store_true", help="emit a cost breakdown to stderr")

    verify = sub.add_parser("verify", help="compare an algorithm against the brute-force reference")
    add_instance_args(verify)
    verify.add_argument("--algo", default="all", choices=_FLAG_ALGOS + ("all", "bounded", "constrained"))
    verify.add_argument("--sa", type=float, required=True)
    verify.add_argument("--sr", type=float, required=True)
    verify.add_argument("--bounds", default=None)
    verify.add_argument("--origins", default=None)
    verify.add_argument("--dests", default=None)
    verify.add_argument("--timerange", default=None)
    verify.add_argument("--threads", type=int, default=1)
    verify.add_argument("--corrupt-atomic", action="store_true", help=argparse.SUPPRESS)

    bench = sub.add_parser("bench", help="parameter sweeps reported as CSV")
    add_instance_args(bench)
    bench.add_argument("--algos", required=True, help="comma-separated algorithm list")
    bench.add_argument("--sa-list", required=True, help="comma-separated s_a values")
    bench.add_argument("--sr-list", default="0.5", help="comma-separated s_r values")
    bench.add_argument("--bounds-list", default=None, help="semicolon-separated BO,BD,BT triples")
    bench.add_argument("--k-list", default=None, help="comma-separated k values (rank)")
    bench.add_argument("--maxl", type=int, default=8)
    bench.add_argument("--sizes-list", default=None, help="semicolon-separated SO,SD,ST triples")
    bench.add_argument("--samples-list", default=None, help="comma-separated budgets (approx)")
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--threads", type=int, default=1)
    bench.add_argument("--timeout", type=float, default=180.0, help="per-cell timeout (seconds)")
    bench.add_argument("--out", default="-", help="CSV output path, '-' for stdout")

    syn = sub.add_parser("synth", help="generate a synthetic instance")
    syn.add_argument("--kind", required=True, choices=("grid", "path", "random"))
    syn.add_argument("--width", type=int, default=None)
    syn.add_argument("--height", type=int, default=None)
    syn.add_argument("--nodes", type=int, default=None)
    syn.add_argument("--edge-prob", type=float, default=0.1)
    syn.add_argument("--slots", type=int, required=True)
    syn.add_argument("--density", type=float, required=True)
    syn.add_argument("--flow", default="zipf:1.2,100", help="uniform:LO,HI or zipf:S,MAX")
    syn.add_argument("--seed", type=int, default=0)
    syn.add_argument("--self-pairs", type=int, default=0, help="origin==dest rows to inject")
    syn.add_argument("--out-graph", required=True)
    syn.add_argument("--out-trips", required=True)
    return parser


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _parse_int_tuple(text: str, n: int, what: str) -> tuple[int, ...]:
    parts = text.split(",")
    if len(parts) != n:
        raise UsageError(f"{what} needs {n} comma-separated integers, got {text!r}")
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise UsageError(f"{what}: non-integer in {text!r}") from None


def _load_instance(args) -> tuple[RegionGraph, TripsTable]:
    td = TimeDomain(slot_count=args.slots, slot_width_minutes=args.slot_width)
    graph = load_graph(args.graph)
    table = load_trips(args.trips, graph, td, period=args.period)
    return graph, table


def _read_region_file(path: str, graph: RegionGraph) -> frozenset[int]:
    with open(path, "r", encoding="utf-8") as fh:
        names = [line.strip() for line in fh if line.strip() and not line.startswith("#")]
    return frozenset(graph.id_of(name) for name in names)


def pattern_record(p: ODTPattern, graph: RegionGraph) -> dict:
    t = p.triple
    return {
        "level": t.level,
        "origin": [graph.label_of(v) for v in t.origin],
        "dest": [graph.label_of(v) for v in t.dest],
        "t_start": t.t_start,
        "t_end": t.t_end,
        "cnt": p.cnt,
        "card": t.card,
        "ratio": p.cnt / t.card,
    }


def parse_pattern_record(rec: dict, graph: RegionGraph) -> ODTPattern:
    triple = ODTTriple.make(
        (graph.id_of(n) for n in rec["origin"]),
        (graph.id_of(n) for n in rec["dest"]),
        rec["t_start"],
        rec["t_end"],
    )
    return ODTPattern(triple, rec["cnt"])


def write_patterns(
    patterns: Sequence[ODTPattern], graph: RegionGraph, out, fmt: str
) -> None:
    if fmt == "jsonl":
        for p in patterns:
            out.write(json.dumps(pattern_record(p, graph)) + "\n")
        return
    writer = csv.writer(out)
    writer.writerow(["level", "origin", "dest", "t_start", "t_end", "cnt", "card", "ratio"])
    for p in patterns:
        rec = pattern_record(p, graph)
        writer.writerow(
            [
                rec["level"],
                ";".join(rec["origin"]),
                ";".join(rec["dest"]),
                rec["t_start"],
                rec["t_end"],
                rec["cnt"],
                rec["card"],
                rec["ratio"],
            ]
        )


def _open_out(path: str):
    if path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


# ---------------------------------------------------------------------------
# mine
# ---------------------------------------------------------------------------

def _reject_extras(args, allowed: set[str]) -> None:
    given = {
        "sr": args.sr is not None,
        "bounds": args.bounds is not None,
        "origins": args.origins is not None,
        "dests": args.dests is not None,
        "timerange": args.timerange is not None,
        "top-k": args.top_k is not None,
        "maxl": args.maxl is not None,
        "sizes": args.sizes is not None,
        "samples": args.samples is not None,
    }
    for flag, present in given.items():
        if present and flag not in allowed:
            raise UsageError(f"--{flag} does not apply to --algo {args.algo}")


def _require(args, names: dict[str, object]) -> None:
    for flag, value in names.items():
        if value is None:
            raise UsageError(f"--{flag} is required for --algo {args.algo}")


def _constraints_from_args(args, graph: RegionGraph):
    _require(args, {"origins": args.origins, "dests": args.dests, "timerange": args.timerange})
    v_o = _read_region_file(args.origins, graph)
    v_d = _read_region_file(args.dests, graph)
    lo, hi = _parse_int_tuple(args.timerange, 2, "--timerange")
    return v_o, v_d, (lo, hi)


def _cmd_mine(args) -> int:
    graph, table = _load_instance(args)
    deadline = None if args.timeout is None else time.monotonic() + args.timeout
    algo = args.algo
    summary_extra = ""

    if algo in _FLAG_ALGOS:
        _reject_extras(args, {"sr"})
        _require(args, {"sr": args.sr})
        params = MiningParams(s_a=args.sa, s_r=args.sr)
        result = mine_all(
            table, graph, params, OptimizationFlags.from_name(algo),
            threads=args.threads, deadline=deadline,
        )
        patterns = result.patterns
    elif algo == "bounded":
        _reject_extras(args, {"sr", "bounds"})
        _require(args, {"sr": args.sr, "bounds": args.bounds})
        params = MiningParams(s_a=args.sa, s_r=args.sr, bounds=_parse_int_tuple(args.bounds, 3, "--bounds"))
        result = mine_bounded(
            table, graph, params, OptimizationFlags.from_name("opt"),
            threads=args.threads, deadline=deadline,
        )
        patterns = result.patterns
    elif algo == "constrained":
        _reject_extras(args, {"sr", "origins", "dests", "timerange"})
        _require(args, {"sr": args.sr})
        constraints = _constraints_from_args(args, graph)
        params = MiningParams(s_a=args.sa, s_r=args.sr, constraints=constraints)
        result = mine_constrained(
            table, graph, params, OptimizationFlags.from_name("opt"),
            rescope_sa=args.rescope_sa, threads=args.threads, deadline=deadline,
        )
        patterns = result.patterns
    elif algo == "rank":
        _reject_extras(args, {"top-k", "maxl"})
        _require(args, {"top-k": args.top_k})
        params = MiningParams(s_a=args.sa, k=args.top_k, maxl=args.maxl if args.maxl else 3)
        result = mine_ranked(
            table, graph, params, OptimizationFlags.from_name("opt"),
            algo=args.rank_engine, deadline=deadline,
        )
        patterns = result.patterns
    else:
        _reject_extras(args, {"sr", "sizes", "samples"})
        _require(args, {"sr": args.sr, "sizes": args.sizes, "samples": args.samples})
        s_o, s_d, s_t = _parse_int_tuple(args.sizes, 3, "--sizes")
        params = MiningParams(s_a=args.sa, s_r=args.sr)
        rng = random.Random(args.seed)
        if algo == "approx":
            result = mine_approx(
                table, graph, params, s_o, s_d, s_t, args.samples, rng, threads=args.threads
            )
            summary_extra = f" draws={result.stats.samples} rejections={result.stats.rejections}"
        else:
            result = mine_weighted(
                table, graph, params, s_o, s_d, s_t, args.samples, rng, threads=args.threads
            )
            summary_extra = f" verified={result.stats.verified}"
        patterns = result.patterns

    out, close = _open_out(args.out)
    try:
        write_patterns(patterns, graph, out, args.format)
    finally:
        if close:
            out.close()

    levels = sorted({p.level for p in patterns})
    span = f"{levels[0]}..{levels[-1]}" if levels else "-"
    stats = getattr(result, "stats", None)
    wall = getattr(stats, "wall_seconds", 0.0)
    mem = getattr(stats, "peak_memory_estimate", 0)
    print(
        f"summary: algo={algo} patterns={len(patterns)} levels={span} "
        f"wall={wall:.3f}s mem~{mem / 1e6:.1f}MB{summary_extra}",
        file=sys.stderr,
    )
    if args.instrument and isinstance(result, MiningResult):
        print(json.dumps(cost_breakdown(result)), file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _corrupted(aps: AtomicPatternSet) -> AtomicPatternSet:
    """Negative-control perturbation: drop one member, invent another."""
    members = set(aps.members)
    if members:
        members.discard(max(members))
    fake = (0, 1, 0)
    members.add(fake)
    dests: dict[int, set[int]] = {}
    srcs: dict[int, set[int]] = {}
    for o, d, _t in members:
        dests.setdefault(o, set()).add(d)
        srcs.setdefault(d, set()).add(o)
    return AtomicPatternSet(
        members=frozenset(members),
        threshold_support=aps.threshold_support,
        dests_of={r: frozenset(v) for r, v in dests.items()},
        srcs_of={r: frozenset(v) for r, v in srcs.items()},
    )


def _diff_report(
    expected: dict[ODTTriple, int], got: dict[ODTTriple, int], graph: RegionGraph
) -> str:
    for t in sorted(set(expected) | set(got)):
        e, g = expected.get(t), got.get(t)
        if e != g:
            names = (
                [graph.label_of(v) for v in t.origin],
                [graph.label_of(v) for v in t.dest],
            )
            return (
                f"first divergence at {names[0]}->{names[1]} "
                f"[{t.t_start},{t.t_end}]: reference cnt={e}, mined cnt={g}"
            )
    return "outputs identical"


def _cmd_verify(args) -> int:
    graph, table = _load_instance(args)
    params_kw: dict = {}
    oracle_kw: dict = {}
    algo = args.algo

    aps = extract_atomic_patterns(table, args.sa)
    mined_aps = _corrupted(aps) if args.corrupt_atomic else aps

    if algo == "bounded":
        _require(args, {"bounds": args.bounds})
        bounds = _parse_int_tuple(args.bounds, 3, "--bounds")
        params = MiningParams(s_a=args.sa, s_r=args.sr, bounds=bounds)
        runs = {
            "bounded": mine_bounded(
                table, graph, params, OptimizationFlags.from_name("opt"),
                threads=args.threads, atomic_set=mined_aps,
            )
        }
        reference = filter_by_sizes(
            oracle_patterns(table, graph, params, atomic_set=aps), *bounds
        )
    elif algo == "constrained":
        constraints = _constraints_from_args(args, graph)
        params = MiningParams(s_a=args.sa, s_r=args.sr, constraints=constraints)
        runs = {
            "constrained": mine_constrained(
                table, graph, params, OptimizationFlags.from_name("opt"),
                threads=args.threads, atomic_set=mined_aps,
            )
        }
        reference = filter_by_domain(
            oracle_patterns(table, graph, params, atomic_set=aps), *constraints
        )
    else:
        params = MiningParams(s_a=args.sa, s_r=args.sr)
        names = _FLAG_ALGOS if algo == "all" else (algo,)
        runs = {
            name: mine_all(
                table, graph, params, OptimizationFlags.from_name(name),
                threads=args.threads, atomic_set=mined_aps,
            )
            for name in names
        }
        reference = oracle_patterns(table, graph, params, atomic_set=aps)

    for name, result in runs.items():
        got = result.as_dict()
        if got != reference:
            print(f"verify FAILED for {name}: {_diff_report(reference, got, graph)}")
            return EXIT_MISMATCH
    print(f"verify OK: {len(reference)} patterns, configs: {', '.join(runs)}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# bench
# ---------------------------------------------------------------------------

_BENCH_COLUMNS = [
    "algo", "s_a", "s_r", "bounds", "k", "maxl", "sizes", "samples", "seed",
    "status", "wall_seconds", "patterns", "max_level", "candidates_generated",
    "pruned_av", "pruned_fc", "pruned_ps", "count_calls", "mem_estimate",
]


def _bench_points(args, algo: str) -> list[dict]:
    sa_values = [float(x) for x in args.sa_list.split(",")]
    sr_values = [float(x) for x in args.sr_list.split(",")]
    points: list[dict] = []
    if algo == "rank":
        if not args.k_list:
            raise UsageError("--k-list is required to bench rank")
        for sa in sa_values:
            for k in (int(x) for x in args.k_list.split(",")):
                points.append({"s_a": sa, "k": k, "maxl": args.maxl})
        return points
    if algo in ("approx", "wapprox"):
        if not (args.sizes_list and args.samples_list):
            raise UsageError("--sizes-list and --samples-list are required to bench approx")
        sizes = [
            _parse_int_tuple(x, 3, "--sizes-list") for x in args.sizes_list.split(";")
        ]
        budgets = [int(x) for x in args.samples_list.split(",")]
        for sa in sa_values:
            for sr in sr_values:
                for sz in sizes:
                    for m in budgets:
                        points.append({"s_a": sa, "s_r": sr, "sizes": sz, "samples": m})
        return points
    if algo == "bounded":
        if not args.bounds_list:
            raise UsageError("--bounds-list is required to bench bounded")
        bounds = [
            _parse_int_tuple(x, 3, "--bounds-list") for x in args.bounds_list.split(";")
        ]
        for sa in sa_values:
            for sr in sr_values:
                for b in bounds:
                    points.append({"s_a": sa, "s_r": sr, "bounds": b})
        return points
    for sa in sa_values:
        for sr in sr_values:
            points.append({"s_a": sa, "s_r": sr})
    return points


def _bench_cell(args, graph, table, algo: str, point: dict) -> dict:
    row = {c: "" for c in _BENCH_COLUMNS}
    row.update(
        algo=algo,
        s_a=point.get("s_a", ""),
        s_r=point.get("s_r", ""),
        bounds=";".join(map(str, point["bounds"])) if "bounds" in point else "",
        k=point.get("k", ""),
        maxl=point.get("maxl", ""),
        sizes=";".join(map(str, point["sizes"])) if "sizes" in point else "",
        samples=point.get("samples", ""),
        seed=args.seed,
        status="ok",
    )
    deadline = time.monotonic() + args.timeout
    started = time.perf_counter()
    try:
        if algo in _FLAG_ALGOS:
            params = MiningParams(s_a=point["s_a"], s_r=point["s_r"])
            result = mine_all(
                table, graph, params, OptimizationFlags.from_name(algo),
                threads=args.threads, deadline=deadline,
            )
        elif algo == "bounded":
            params = MiningParams(s_a=point["s_a"], s_r=point["s_r"], bounds=point["bounds"])
            result = mine_bounded(
                table, graph, params, OptimizationFlags.from_name("opt"),
                threads=args.threads, deadline=deadline,
            )
        elif algo == "rank":
            params = MiningParams(s_a=point["s_a"], k=point["k"], maxl=point["maxl"])
            result = mine_ranked(
                table, graph, params, OptimizationFlags.from_name("opt"), deadline=deadline
            )
        elif algo == "approx":
            params = MiningParams(s_a=point["s_a"], s_r=point["s_r"])
            result = mine_approx(
                table, graph, params, *point["sizes"], point["samples"],
                random.Random(args.seed), threads=args.threads,
            )
        elif algo == "wapprox":
            params = MiningParams(s_a=point["s_a"], s_r=point["s_r"])
            result = mine_weighted(
                table, graph, params, *point["sizes"], point["samples"],
                random.Random(args.seed), threads=args.threads,
            )
        else:
            raise UsageError(f"cannot bench algorithm {algo!r}")
    except MiningTimeout:
        row["status"] = "timeout"
        row["wall_seconds"] = round(time.perf_counter() - started, 3)
        return row

    patterns = result.patterns
    row["wall_seconds"] = round(time.perf_counter() - started, 6)
    row["patterns"] = len(patterns)
    row["max_level"] = max((p.level for p in patterns), default=0)
    stats = result.stats
    row["candidates_generated"] = getattr(stats, "candidates_generated", "")
    row["pruned_av"] = getattr(stats, "av_hits", "")
    row["pruned_fc"] = getattr(stats, "fc_skips", "")
    row["pruned_ps"] = getattr(stats, "ps_prunes", getattr(stats, "ps_skips", ""))
    row["count_calls"] = getattr(stats, "count_calls", "")
    row["mem_estimate"] = getattr(stats, "peak_memory_estimate", "")
    return row


def _cmd_bench(args) -> int:
    graph, table = _load_instance(args)
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    for a in algos:
        if a not in ALGOS or a == "constrained":
            raise UsageError(f"cannot bench algorithm {a!r}")
    out, close = _open_out(args.out)
    try:
        writer = csv.DictWriter(out, fieldnames=_BENCH_COLUMNS)
        writer.writeheader()
        for algo in algos:
            for point in _bench_points(args, algo):
                writer.writerow(_bench_cell(args, graph, table, algo, point))
    finally:
        if close:
            out.close()
    return EXIT_OK


# ---------------------------------------------------------------------------
# synth
# ---------------------------------------------------------------------------

def _parse_flow(text: str) -> tuple:
    kind, _, rest = text.partition(":")
    if kind == "uniform":
        lo, hi = _parse_int_tuple(rest, 2, "--flow uniform")
        return ("uniform", lo, hi)
    if kind == "zipf":
        parts = rest.split(",")
        if len(parts) != 2:
            raise UsageError(f"--flow zipf needs S,MAX, got {rest!r}")
        return ("zipf", float(parts[0]), int(parts[1]))
    raise UsageError(f"unknown flow distribution {text!r}")


def _cmd_synth(args) -> int:
    if args.kind == "grid":
        if args.width is None or args.height is None:
            raise UsageError("--width and --height are required for grid")
        kind, kind_args = "grid", (args.width, args.height)
    elif args.kind == "path":
        if args.nodes is None:
            raise UsageError("--nodes is required for path")
        kind, kind_args = "path", (args.nodes,)
    else:
        if args.nodes is None:
            raise UsageError("--nodes is required for random")
        kind, kind_args = "random_edges", (args.nodes, args.edge_prob)
    spec = synth.SynthSpec(
        graph_kind=kind,
        graph_args=kind_args,
        slot_count=args.slots,
        triple_density=args.density,
        flow_distribution=_parse_flow(args.flow),
        seed=args.seed,
        self_pair_rows=args.self_pairs,
    )
    graph, table = synth.write_instance(spec, args.out_graph, args.out_trips)
    print(
        f"wrote {args.out_graph} ({graph.n} regions) and {args.out_trips} "
        f"({len(table.rows)} aggregated rows)",
        file=sys.stderr,
    )
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=os.environ.get("ODT_LOG", "WARNING").upper())
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "mine":
            return _cmd_mine(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "bench":
            return _cmd_bench(args)
        if args.command == "synth":
            return _cmd_synth(args)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MiningTimeout as exc:
        print(f"timeout: {exc}", file=sys.stderr)
        return EXIT_TIMEOUT
    except (OdtError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
