"""Batch command-line front end.

Subcommands: construct, spectral, check-free, extremal, search, audit.
Machine output goes to stdout (graph6 / JSON lines / CSV / table);
progress and diagnostics go to stderr.  Exit codes: 0 success, 2
parameter error, 3 data error, 4 audit hard-check failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from .audits import (
    audit_global_bounds,
    audit_neighborhood_bounds,
    audit_spex_graph,
    report_to_json_lines,
    summary_table,
)
from .errors import DataError, ParameterError, SpexError
from .extremal import (
    CSV_HEADER,
    compute_extremal,
    local_search,
    record_to_csv_row,
    record_to_json,
)
from .graph6 import graph6_decode, graph6_encode
from .graphs import Graph, construct_named
from .spectral import spectral_radius
from .subgraphs import ForbiddenFamily, is_family_free

EXIT_OK = 0
EXIT_PARAMETER = 2
EXIT_DATA = 3
EXIT_AUDIT_FAIL = 4


def _read_graphs(spec: str) -> list[Graph]:
    if spec == "-":
        lines = sys.stdin.read().splitlines()
    else:
        with open(spec, "r", encoding="ascii") as fh:
            lines = fh.read().splitlines()
    return [graph6_decode(line) for line in lines if line.strip()]


def _family(args) -> ForbiddenFamily:
    if getattr(args, "forbid", None):
        return ForbiddenFamily.from_tokens(args.forbid)
    k = getattr(args, "k", None)
    if k is not None and getattr(args, "even_only", False):
        return ForbiddenFamily((2 * k + 2,))
    if k is not None and getattr(args, "both", False):
        return ForbiddenFamily((2 * k + 1, 2 * k + 2))
    raise ParameterError("specify --forbid C5,C6 or --k with --even-only / --both")


def _table(rows: list[dict]) -> str:
    if not rows:
        return ""
    keys = list(rows[0])
    widths = {k: max(len(k), *(len(_cell(r.get(k))) for r in rows)) for k in keys}
    out = ["  ".join(k.ljust(widths[k]) for k in keys)]
    for r in rows:
        out.append("  ".join(_cell(r.get(k)).ljust(widths[k]) for k in keys))
    return "\n".join(out)


def _cell(x) -> str:
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


# -- subcommand handlers ---------------------------------------------------


def cmd_construct(args) -> int:
    params = tuple(p for p in (args.n, args.k) if p is not None)
    g = construct_named(args.family, params)
    if args.out == "g6":
        print(graph6_encode(g))
    elif args.out == "json":
        print(json.dumps(
            {"family": args.family, "params": list(params), "n": g.n, "m": g.m,
             "graph6": graph6_encode(g)},
            sort_keys=True,
        ))
    elif args.out == "csv":
        print("family,n,m,graph6")
        print(f"{args.family},{g.n},{g.m},{graph6_encode(g)}")
    else:
        print(_table([{"family": args.family, "n": g.n, "m": g.m,
                       "graph6": graph6_encode(g)}]))
    return EXIT_OK


def cmd_spectral(args) -> int:
    graphs = _read_graphs(args.g6)
    rows = []
    for g in graphs:
        sr = spectral_radius(g, tol=args.tol)
        row = {
            "n": g.n, "m": g.m, "lambda": sr.lam,
            "argmax_vertex": sr.argmax_vertex,
            "residual": sr.residual, "iterations": sr.iterations,
        }
        if args.format == "json":
            row["perron"] = [float(x) for x in sr.perron]
            print(json.dumps(row, sort_keys=True))
        else:
            rows.append(row)
    if args.format == "csv":
        print("n,m,lambda,argmax_vertex,residual,iterations")
        for r in rows:
            print(f"{r['n']},{r['m']},{r['lambda']!r},{r['argmax_vertex']},"
                  f"{r['residual']!r},{r['iterations']}")
    elif args.format == "table":
        print(_table(rows))
    return EXIT_OK


def cmd_check_free(args) -> int:
    family = _family(args)
    graphs = _read_graphs(args.g6)
    rows = []
    for g in graphs:
        free, witness = is_family_free(g, family)
        row = {"graph6": graph6_encode(g), "family": family.tokens(), "free": free}
        if witness is not None:
            row["witness"] = list(witness.vertices)
        if args.format == "json":
            print(json.dumps(row, sort_keys=True))
        else:
            row["witness"] = "-" if witness is None else ",".join(map(str, witness.vertices))
            rows.append(row)
    if args.format != "json":
        print(_table(rows))
    return EXIT_OK


def cmd_extremal(args) -> int:
    family = _family(args)
    source = None
    if args.g6:
        source = _read_graphs(args.g6)

    def progress(scanned: int) -> None:
        print(f"scanned {scanned} graphs", file=sys.stderr)

    rec = compute_extremal(
        args.n, family, args.objective,
        source=source, threads=args.threads, progress=progress,
    )
    if args.format == "json":
        print(record_to_json(rec))
    elif args.format == "csv":
        print(CSV_HEADER)
        print(record_to_csv_row(rec))
    else:
        print(_table([{
            "n": rec.n, "family": rec.family.tokens(), "objective": rec.objective,
            "best_value": rec.best_value, "num_argmax": len(rec.argmax),
            "graphs_scanned": rec.graphs_scanned, "seconds": round(rec.seconds, 3),
        }]))
        for g in rec.argmax:
            print(graph6_encode(g))
    return EXIT_OK


def cmd_search(args) -> int:
    family = _family(args)
    trace = local_search(args.n, family, seed=args.seed, max_iters=args.max_iters)
    final_lam = trace.best_lambda_per_step[-1] if trace.best_lambda_per_step else 0.0
    step = max(1, trace.iterations // 20)
    payload = {
        "n": args.n,
        "family": family.tokens(),
        "seed": trace.seed,
        "iterations": trace.iterations,
        "accepted_moves": trace.accepted_moves,
        "final_lambda": final_lam,
        "final_graph": graph6_encode(trace.final_graph),
        "lambda_checkpoints": [trace.best_lambda_per_step[i]
                               for i in range(0, trace.iterations, step)],
    }
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        payload.pop("lambda_checkpoints")
        print(_table([payload]))
    return EXIT_OK


def _audit_one(packed):
    rows, n, k, mode, certified = packed
    g = Graph(n, rows)
    reports = [audit_neighborhood_bounds(g, k), audit_global_bounds(g, k)]
    if mode:
        reports.append(audit_spex_graph(g, k, mode, certified=certified))
    return reports


def cmd_audit(args) -> int:
    if args.k is None:
        raise ParameterError("audit requires --k")
    graphs = _read_graphs(args.g6)
    jobs = [(g.rows, g.n, args.k, args.mode, args.certified) for g in graphs]
    if args.threads > 1:
        with ProcessPoolExecutor(max_workers=args.threads) as pool:
            nested = list(pool.map(_audit_one, jobs))
    else:
        nested = [_audit_one(j) for j in jobs]
    reports = [rep for group in nested for rep in group]
    wanted = None
    if args.checks:
        wanted = {c.strip() for c in args.checks.split(",") if c.strip()}
        for rep in reports:
            rep.checks = [c for c in rep.checks if c.name in wanted]
    if args.format == "json":
        for rep in reports:
            for line in report_to_json_lines(rep):
                print(line)
    else:
        print(summary_table(reports))
    hard_fail = any(c.status == "fail" for rep in reports for c in rep.checks)
    return EXIT_AUDIT_FAIL if hard_fail else EXIT_OK


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spex",
        description="Spectral Turan toolkit for forbidden even cycles",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("construct", help="build a named family graph")
    p.add_argument("--family", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--out", choices=["g6", "json", "csv", "table"], default="g6")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("spectral", help="spectral radius and Perron vector")
    p.add_argument("--g6", required=True, help="graph6 file, or - for stdin")
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--format", choices=["json", "csv", "table"], default="json")
    p.set_defaults(func=cmd_spectral)

    p = sub.add_parser("check-free", help="forbidden-cycle freeness with witnesses")
    p.add_argument("--g6", required=True)
    p.add_argument("--forbid", help="comma-separated cycle tokens, e.g. C5,C6")
    p.add_argument("--k", type=int)
    p.add_argument("--even-only", action="store_true", dest="even_only")
    p.add_argument("--both", action="store_true")
    p.add_argument("--format", choices=["json", "table"], default="json")
    p.set_defaults(func=cmd_check_free)

    p = sub.add_parser("extremal", help="exact EX/SPEX by isomorph-free enumeration")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--forbid")
    p.add_argument("--k", type=int)
    p.add_argument("--even-only", action="store_true", dest="even_only")
    p.add_argument("--both", action="store_true")
    p.add_argument("--objective", choices=["edges", "lambda"], required=True)
    p.add_argument("--g6", help="optional external graph6 source instead of enumeration")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--format", choices=["json", "csv", "table"], default="json")
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("search", help="seeded rewiring hill-climb maximizing lambda")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--forbid")
    p.add_argument("--k", type=int)
    p.add_argument("--even-only", action="store_true", dest="even_only")
    p.add_argument("--both", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iters", type=int, default=1000, dest="max_iters")
    p.add_argument("--format", choices=["json", "table"], default="json")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("audit", help="run structural checks over a graph6 corpus")
    p.add_argument("--g6", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mode", choices=["even-only", "both-cycles"],
                   help="also run the extremal-structure audit in this mode")
    p.add_argument("--certified", action="store_true",
                   help="treat inputs as true spectral maximizers (Perron floor becomes hard)")
    p.add_argument("--checks", help="comma-separated check names to keep")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--format", choices=["json", "table"], default="json")
    p.set_defaults(func=cmd_audit)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParameterError as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return EXIT_PARAMETER
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except SpexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except FileNotFoundError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
