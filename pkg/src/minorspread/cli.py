"""Command-line front end: ``minorspread {spread,hadwiger,search,series,verify}``.

Exit codes: 0 success, 1 failed checks (or an aborted search), 2 usage or
domain errors. Human output prints 9 decimals; ``--json`` keeps full precision.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from pathlib import Path

from .errors import MinorSpreadError, SeriesDivergenceError
from .graph import Graph, complete, emit_graph6, make_family, parse_graph6
from .join_series import (
    DEFAULT_ORDER,
    JoinModel,
    second_order_spread,
    secular_extremes,
    series_coefficients,
    truncated_series_extremes,
)
from .minor import hadwiger_number
from .search import ENUM_LIMIT, SearchAborted, ingest_graph6_stream, search_max_spread
from .spectral import spread
from .verify import SUITES, run_suite

OUT_ENV = "MINORSPREAD_OUT"
SERIES_COLUMNS = [
    "n",
    "gamma",
    "c1",
    "c2",
    "lambda1_exact",
    "lambdan_exact",
    "s_exact",
    "s_2nd",
    "err",
    "err_gamma3",
    "lambda1_series",
    "lambdan_series",
    "divergent",
]


class UsageError(Exception):
    pass


def _fmt(x: float) -> str:
    return f"{x:.9f}"


def _graph_from_args(args: argparse.Namespace) -> Graph:
    if args.graph6 and args.family:
        raise UsageError("give either a graph6 string or --family, not both")
    if args.graph6:
        return parse_graph6(args.graph6)
    if not args.family:
        raise UsageError("a graph6 string or --family is required")
    params = {k: getattr(args, k) for k in ("r", "n", "a", "b") if getattr(args, k) is not None}
    return make_family(args.family, **params)


def cmd_spread(args: argparse.Namespace) -> int:
    g = _graph_from_args(args)
    rep = spread(g)
    if args.json:
        out = {
            "graph6": emit_graph6(g),
            "n": g.n,
            "e": g.e,
            "lambda1": rep.lambda1,
            "lambdan": rep.lambdan,
            "spread": rep.spread,
            "residual": rep.residual,
        }
        print(json.dumps(out, sort_keys=True))
    else:
        print(f"lambda1={_fmt(rep.lambda1)} lambdan={_fmt(rep.lambdan)} s={_fmt(rep.spread)}")
    return 0


def cmd_hadwiger(args: argparse.Namespace) -> int:
    g = parse_graph6(args.graph6)
    h, cert = hadwiger_number(g)
    if args.json:
        print(json.dumps({"graph6": emit_graph6(g), "hadwiger": h, "certificate": cert.to_dict()}, sort_keys=True))
        return 0
    print(h)
    if args.cert:
        print(cert.to_json())
    return 0


def cmd_search(args: argparse.Namespace) -> int:
    if args.input is None and args.n > ENUM_LIMIT:
        raise UsageError(
            f"n={args.n} is above the internal enumeration limit ({ENUM_LIMIT}); generate the "
            f"family externally, e.g. `geng {args.n} > graphs{args.n}.g6`, and pass --input graphs{args.n}.g6"
        )
    source = None
    problems: list[tuple[int, str]] = []
    if args.input is not None:
        source = ingest_graph6_stream(args.input, strict=args.strict, problems=problems)
    out_dir = Path(args.out or os.environ.get(OUT_ENV) or ".")
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = out_dir / f"search_r{args.r}_n{args.n}"
    status = 0
    try:
        report = search_max_spread(
            args.n, args.r, source=source, shards=args.shards, mader_prescreen=not args.no_prescreen
        )
    except SearchAborted as exc:
        report = exc.partial
        print(f"error: search aborted: {exc}", file=sys.stderr)
        status = 1
    stem.with_suffix(".json").write_text(report.to_json() + "\n", encoding="utf-8")
    stem.with_suffix(".csv").write_text(report.to_csv(), encoding="utf-8")
    if problems:
        print(f"warning: skipped {len(problems)} malformed line(s)", file=sys.stderr)
    if args.json:
        print(report.to_json(include_rows=False))
    else:
        verdict = "predicted maximiser wins" if report.predicted_wins else "predicted maximiser does not win"
        print(
            f"r={report.r} n={report.n}: {report.family_size} graphs, {report.survivors} K{report.r}-minor-free, "
            f"max spread {_fmt(report.max_spread)} at {','.join(report.maximizers)}; {verdict}; "
            f"max edges {report.max_edges}; wrote {stem}.json and {stem}.csv"
        )
    return status


def series_rows(r: int, n_from: int, n_to: int, H: Graph | None = None, order: int = DEFAULT_ORDER) -> list[dict]:
    """One row per n: exact extremes, second-order spread, and the truncated series."""
    if H is None:
        H = complete(r - 2)
    if H.n != r - 2:
        raise UsageError(f"--H must have r-2 = {r - 2} vertices, got {H.n}")
    rows = []
    for n in range(n_from, n_to + 1):
        m = n - H.n
        if m < 1:
            raise UsageError(f"n={n} leaves no independent vertices")
        model = JoinModel(H, m)
        coeffs = series_coefficients(model)
        l1, ln = secular_extremes(model)
        s_exact = l1 - ln
        s_2nd = second_order_spread(model)
        err = abs(s_exact - s_2nd)
        row = {
            "n": n,
            "gamma": model.gamma,
            "c1": float(coeffs.c1),
            "c2": float(coeffs.c2),
            "lambda1_exact": l1,
            "lambdan_exact": ln,
            "s_exact": s_exact,
            "s_2nd": s_2nd,
            "err": err,
            "err_gamma3": err * model.gamma**3,
            "lambda1_series": None,
            "lambdan_series": None,
            "divergent": 0,
        }
        try:
            row["lambda1_series"], row["lambdan_series"] = truncated_series_extremes(model, order)
        except SeriesDivergenceError:
            row["divergent"] = 1
        rows.append(row)
    return rows


def cmd_series(args: argparse.Namespace) -> int:
    if args.n_from > args.n_to:
        raise UsageError("--n-from must not exceed --n-to")
    H = parse_graph6(args.H) if args.H else None
    rows = series_rows(args.r, args.n_from, args.n_to, H, args.order)
    if args.json:
        print(json.dumps(rows))
        return 0
    fh = open(args.out, "w", newline="", encoding="utf-8") if args.out else sys.stdout
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SERIES_COLUMNS)
        for row in rows:
            w.writerow(["" if row[c] is None else repr(row[c]) for c in SERIES_COLUMNS])
    finally:
        if fh is not sys.stdout:
            fh.close()
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    names = SUITES if args.suite == "all" else (args.suite,)
    reports = [run_suite(name, seed=args.seed) for name in names]
    if args.json:
        print(
            json.dumps(
                [
                    {
                        "suite": rep.name,
                        "run": rep.run,
                        "passed": rep.passed,
                        "failed": rep.failed,
                        "wall_time": rep.wall_time,
                        "details": [{"check": c, "passed": ok, "detail": d} for c, ok, d in rep.details],
                    }
                    for rep in reports
                ],
                sort_keys=True,
            )
        )
    else:
        for rep in reports:
            print(rep.render())
    return 1 if any(rep.failed for rep in reports) else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="minorspread", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spread", help="extreme eigenvalues and spread of a graph")
    p.add_argument("graph6", nargs="?", help="graph in graph6 format")
    p.add_argument("--family", help="named family, e.g. join_star, star, complete, complete_bipartite")
    p.add_argument("--r", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_spread)

    p = sub.add_parser("hadwiger", help="Hadwiger number with a branch-set certificate")
    p.add_argument("graph6")
    p.add_argument("--cert", action="store_true", help="also print the certificate as JSON")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_hadwiger)

    p = sub.add_parser("search", help="maximise spread over K_r-minor-free graphs of order n")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--input", help="graph6 file holding the family (required for n > 7)")
    p.add_argument("--out", help=f"output directory (default: ${OUT_ENV} or the working directory)")
    p.add_argument("--strict", action="store_true", help="fail on the first malformed input line")
    p.add_argument("--shards", type=int, default=1)
    p.add_argument("--no-prescreen", action="store_true", help="run the minor test on every graph")
    p.add_argument("--json", action="store_true", help="print the summary as JSON")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("series", help="series-versus-exact table for H ∨ mK1")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n-from", type=int, required=True)
    p.add_argument("--n-to", type=int, required=True)
    p.add_argument("--H", help="graph6 of H on r-2 vertices (default K_{r-2})")
    p.add_argument("--order", type=int, default=DEFAULT_ORDER, help="truncation order of the series")
    p.add_argument("--out", help="CSV path (default stdout)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("verify", help="run invariant suites")
    p.add_argument("--suite", required=True, help=f"one of {', '.join(SUITES)}, all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if args.command == "verify" and args.suite not in (*SUITES, "all"):
        print(f"error: unknown suite {args.suite!r}; choose from {', '.join(SUITES)}, all", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (UsageError, MinorSpreadError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
