"""Command-line front end.

Subcommands:
    verify      run identity cases over a parameter grid, JSON-lines reports
    series      print a single registered series evaluator
    partitions  enumeration tables (counts or weighted totals) with match column
    hierarchy   generate a hierarchy LHS by iterated transform and cross-check

Exit codes: 0 success, 1 verification failure, 2 configuration error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence, TextIO

from qcap import bailey, identities, partitions
from qcap.identities import Bounds, ParamOutOfRange, Report
from qcap.qcombinat import (
    jtp_product,
    jtp_sum,
    quintuple_product,
    quintuple_sum,
)
from qcap.series import QSeries

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def _default_jobs() -> int:
    env = os.environ.get("QCAP_JOBS", "")
    try:
        return max(1, int(env))
    except ValueError:
        return 1


def _bounds_from_args(args: argparse.Namespace) -> Bounds:
    s_values = None if args.s is None else (args.s,)
    return Bounds(
        l_max=args.l_max, m_max=args.m_max, f_max=args.f_max,
        nu_max=args.nu_max, s_values=s_values, trunc=args.trunc)


def _open_out(path: str | None) -> TextIO:
    return open(path, "w") if path else sys.stdout


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _emit(out: TextIO, fmt: str, report: Report) -> None:
    if fmt == "json":
        out.write(json.dumps(report.to_json_dict(with_timing=False),
                             sort_keys=True) + "\n")
    else:
        status = "pass" if report.verdict else "FAIL"
        params = " ".join(f"{k}={v}" for k, v in sorted(report.params.items()))
        line = f"{status}  {report.id}  {params}"
        if report.first_mismatch:
            line += f"  mismatch={report.first_mismatch}"
        out.write(line + "\n")


def cmd_verify(args: argparse.Namespace) -> int:
    if args.all:
        case_ids = sorted(identities.CASES)
    elif args.case:
        case_ids = list(dict.fromkeys(args.case))
        unknown = [c for c in case_ids if c not in identities.CASES]
        if unknown:
            print(f"unknown case id(s): {', '.join(unknown)}", file=sys.stderr)
            print(f"valid ids: {', '.join(sorted(identities.CASES))}",
                  file=sys.stderr)
            return EXIT_CONFIG
    else:
        print("choose --case ID (repeatable) or --all", file=sys.stderr)
        return EXIT_CONFIG

    bounds = _bounds_from_args(args)
    tasks = [(case_id, params)
             for case_id in case_ids
             for params in identities.iterate_grid(case_id, bounds)]

    start = time.perf_counter()
    jobs = args.jobs
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(
                lambda task: identities.verify_case(*task), tasks))
    else:
        reports = [identities.verify_case(*task) for task in tasks]
    elapsed_ms = (time.perf_counter() - start) * 1000.0

    out = _open_out(args.out)
    try:
        if args.format == "text":
            out.write(f"# cases={len(case_ids)} instances={len(tasks)} "
                      f"bounds: L<={bounds.l_max} M<={bounds.m_max} "
                      f"f<={bounds.f_max} nu<={bounds.nu_max} "
                      f"trunc={bounds.trunc} jobs={jobs}\n")
        for report in reports:
            _emit(out, args.format, report)
        failed = sum(1 for r in reports if not r.verdict)
        summary = {
            "summary": {
                "cases": len(case_ids),
                "instances": len(tasks),
                "failed": failed,
                "verdict": failed == 0,
            },
            "timing": {"total_millis": elapsed_ms},
        }
        if args.format == "json":
            out.write(json.dumps(summary, sort_keys=True) + "\n")
        else:
            out.write(f"# {len(tasks) - failed}/{len(tasks)} passed "
                      f"({elapsed_ms:.0f} ms)\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK if failed == 0 else EXIT_FAIL


# ---------------------------------------------------------------------------
# series
# ---------------------------------------------------------------------------

_CLASSICAL: dict[str, Callable[[int, int], QSeries]] = {
    "sum:jtp": lambda z, n: jtp_sum(z, 1, n),
    "product:jtp": lambda z, n: jtp_product(z, 1, n),
    "sum:quintuple": lambda z, n: quintuple_sum(z, 1, n),
    "product:quintuple": lambda z, n: quintuple_product(z, 1, n),
}


def _series_params(args: argparse.Namespace, names: Sequence[str]) -> dict:
    supplied = {"L": args.L, "M": args.M, "f": args.f, "s": args.s,
                "nu": args.nu, "k": args.k, "b": args.b, "n": args.trunc}
    params = {}
    for name in names:
        if supplied.get(name) is None:
            raise ParamOutOfRange(f"missing flag for parameter {name!r}")
        params[name] = supplied[name]
    return params


def cmd_series(args: argparse.Namespace) -> int:
    expr = args.expr
    if expr in _CLASSICAL:
        if args.trunc is None:
            print("--trunc required for classical products", file=sys.stderr)
            return EXIT_CONFIG
        print(_CLASSICAL[expr](args.z_shift, args.trunc).to_text())
        return EXIT_OK
    side, _, case_id = expr.partition(":")
    case = identities.CASES.get(case_id)
    if case is None or not side:
        print(f"unknown series id {expr!r}; use side:case_id with case_id in: "
              f"{', '.join(sorted(identities.CASES))} "
              f"or one of: {', '.join(sorted(_CLASSICAL))}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        fn = case.side(side)
    except KeyError:
        names = ", ".join(name for name, _ in case.sides)
        print(f"case {case_id!r} has sides: {names}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        params = _series_params(args, case.params)
        value = fn(**params)
    except ParamOutOfRange as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_CONFIG
    print(value.to_text())
    return EXIT_OK


# ---------------------------------------------------------------------------
# partitions
# ---------------------------------------------------------------------------

def cmd_partitions(args: argparse.Namespace) -> int:
    out = _open_out(args.out)
    mismatch = False
    try:
        writer = csv.writer(out)
        if args.sub == "counts":
            writer.writerow(["n", f"C_{args.m}", f"D_{args.m}", "match"])
            for n in range(args.n_max + 1):
                c, d = partitions.count_c(args.m, n), partitions.count_d(args.m, n)
                writer.writerow([n, c, d, c == d])
                mismatch |= c != d
        else:
            writer.writerow(["n", "lhs", "rhs", "match"])
            for n in range(args.n_max + 1):
                lhs, rhs = partitions.weighted_sum(args.theorem, n)
                writer.writerow([n, lhs, rhs, lhs == rhs])
                mismatch |= lhs != rhs
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_FAIL if mismatch else EXIT_OK


# ---------------------------------------------------------------------------
# hierarchy
# ---------------------------------------------------------------------------

def cmd_hierarchy(args: argparse.Namespace) -> int:
    family = args.family
    if family not in bailey._SEEDS:
        print(f"unknown family {family!r}; valid: "
              f"{', '.join(sorted(bailey._SEEDS))}", file=sys.stderr)
        return EXIT_CONFIG
    s = args.s or 0
    try:
        generated = bailey.generate_hierarchy_lhs(family, args.f, args.L, s)
    except ParamOutOfRange as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_CONFIG
    print(generated.to_text())
    if args.check:
        direct = identities.hierarchy_finite_lhs(family, args.f, args.L, s)
        rhs = identities.hierarchy_finite_rhs(family, args.f, args.L, s)
        ok = generated == direct == rhs
        print(f"# generator==direct==rhs: {ok}")
        return EXIT_OK if ok else EXIT_FAIL
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_bounds_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--L-max", dest="l_max", type=int, default=8)
    p.add_argument("--M-max", dest="m_max", type=int, default=8)
    p.add_argument("--f-max", dest="f_max", type=int, default=3)
    p.add_argument("--s", type=int, default=None,
                   help="fix the twist (default: all 0..f)")
    p.add_argument("--nu-max", dest="nu_max", type=int, default=2)
    p.add_argument("--trunc", type=int, default=30)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcap")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run identity verification suites")
    p_verify.add_argument("--case", action="append",
                          help="case id (repeatable)")
    p_verify.add_argument("--all", action="store_true")
    _add_bounds_flags(p_verify)
    p_verify.add_argument("--jobs", type=int, default=_default_jobs())
    p_verify.add_argument("--out")
    p_verify.add_argument("--format", choices=("json", "text"), default="json")
    p_verify.set_defaults(fn=cmd_verify)

    p_series = sub.add_parser("series", help="print a registered series")
    p_series.add_argument("expr", help="side:case_id or e.g. product:jtp")
    for flag, name in (("--L", "L"), ("--M", "M"), ("--f", "f"), ("--s", "s"),
                       ("--nu", "nu"), ("--k", "k"), ("--b", "b")):
        p_series.add_argument(flag, dest=name, type=int, default=None)
    p_series.add_argument("--z-shift", dest="z_shift", type=int, default=0)
    p_series.add_argument("--trunc", type=int, default=None)
    p_series.set_defaults(fn=cmd_series)

    p_part = sub.add_parser("partitions", help="enumeration tables")
    part_sub = p_part.add_subparsers(dest="sub", required=True)
    p_counts = part_sub.add_parser("counts")
    p_counts.add_argument("--m", type=int, choices=(1, 2), required=True)
    p_counts.add_argument("--n-max", dest="n_max", type=int, default=40)
    p_counts.add_argument("--out")
    p_counts.set_defaults(fn=cmd_partitions)
    p_weighted = part_sub.add_parser("weighted")
    p_weighted.add_argument("--theorem", choices=("W1", "W2", "W3"),
                            required=True)
    p_weighted.add_argument("--n-max", dest="n_max", type=int, default=25)
    p_weighted.add_argument("--out")
    p_weighted.set_defaults(fn=cmd_partitions)

    p_hier = sub.add_parser("hierarchy", help="generate a hierarchy LHS")
    p_hier.add_argument("--family", required=True)
    p_hier.add_argument("--f", type=int, required=True)
    p_hier.add_argument("--s", type=int, default=0)
    p_hier.add_argument("--L", type=int, required=True)
    p_hier.add_argument("--check", action="store_true",
                        help="cross-check against direct expansion and RHS")
    p_hier.set_defaults(fn=cmd_hierarchy)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ParamOutOfRange as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
