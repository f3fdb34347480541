"""Command-line entry point: ``nahmscan {scan,verify-theorem,solve,dilog,qseries}``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import mpmath

from .dilog import DEFAULT_MAX_DENOMINATOR, DEFAULT_PRECISION, xi_value
from .errors import InvalidInputError, NahmError
from .exact.roots import DEFAULT_WIDTH, parse_dyadic
from .nahm import Matrix2, classify_reality, solve
from .qseries import ENUMERATIONS, QSeriesSpec, nahm_sum
from .scan import ScanConfig, compare_theorem, scan

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2


def _rational(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as e:
        raise argparse.ArgumentTypeError(f"not a rational: {s!r}") from e


def _width(s: str) -> Fraction:
    try:
        w = parse_dyadic(s) if "/2^" in s else Fraction(s)
    except (ValueError, ZeroDivisionError) as e:
        raise argparse.ArgumentTypeError(f"not a width: {s!r}") from e
    if w <= 0:
        raise argparse.ArgumentTypeError("width must be positive")
    return w


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=1, ensure_ascii=False) + "\n"


def _add_range_args(p: argparse.ArgumentParser):
    p.add_argument("--a-min", type=int, default=1)
    p.add_argument("--a-max", type=int, default=30)
    p.add_argument("--d-min", type=int, default=1)
    p.add_argument("--d-max", type=int, default=30)
    p.add_argument("--b-min", type=int, default=-29)
    p.add_argument("--b-max", type=int, default=29)
    p.add_argument("--precision", type=int, default=DEFAULT_PRECISION, help="dilogarithm bits")
    p.add_argument("--width", type=_width, default=DEFAULT_WIDTH, help="certification width, e.g. 1/2^53")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--timeout", type=float, default=60.0, help="seconds per matrix")
    p.add_argument("--dilog-all", action="store_true", help="evaluate L at every matrix, not only all-real ones")


def _config(args, **extra) -> ScanConfig:
    return ScanConfig(
        a_range=(args.a_min, args.a_max), d_range=(args.d_min, args.d_max),
        b_range=(args.b_min, args.b_max), width=args.width, precision_bits=args.precision,
        workers=args.workers, timeout=args.timeout, dilog_all=args.dilog_all, **extra)


def _matrix_args(p: argparse.ArgumentParser):
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--d", type=int, required=True)


def cmd_scan(args) -> int:
    cfg = _config(args, emit=args.emit, include_qseries=args.qseries, qseries_order=args.order)
    report = scan(cfg)
    _emit(report.dumps(), args.out)
    print(f"{len(report.rows)} matrices, {len(report.all_real_matrices)} all-real, "
          f"{len(report.inconsistencies)} inconsistent, {len(report.errors)} errors", file=sys.stderr)
    return EXIT_OK if not report.inconsistencies and not report.errors else EXIT_FAILED


def cmd_verify(args) -> int:
    check = compare_theorem(scan(_config(args)))
    if args.json:
        _emit(_dumps(check.to_json()), args.out)
    else:
        print(f"scanned {len(check.report.rows)} matrices")
        print("all-real:", " ".join(str(A) for A in check.report.all_real_matrices))
        for line in check.diagnostics:
            print(line)
        print("theorem list reproduced" if check.ok else "VERIFICATION FAILED")
    return EXIT_OK if check.ok else EXIT_FAILED


def _fmt(box) -> str:
    z = box.midpoint()
    return f"{z.real:.17g}" if box.is_real else f"{z.real:.17g}{z.imag:+.17g}i"


def cmd_solve(args) -> int:
    A = Matrix2(args.a, args.b, args.d).require_positive_definite()
    s = solve(A, args.width)
    r = classify_reality(s)
    if args.json:
        out = s.to_json()
        out["reality"] = r.to_json()
        _emit(_dumps(out), None)
        return EXIT_OK
    print(f"A = {A}: total multiplicity {s.total_multiplicity}, real {r.real_count}, all_real {r.all_real}")
    for sol in s.solutions:
        x1, x2 = (_fmt(b) for b in (sol.x1, sol.x2))
        print(f"  x1 = {x1}  x2 = {x2}  mult {sol.multiplicity}  {sol.reality}")
    return EXIT_OK


def cmd_dilog(args) -> int:
    A = Matrix2(args.a, args.b, args.d).require_positive_definite()
    res = xi_value(A, args.precision, args.max_den)
    if args.json:
        _emit(_dumps(res.to_json()), None)
    else:
        digits = max(15, int(args.precision * 0.3) - 2)
        print(f"L(xi)      = {mpmath.nstr(res.L_xi, digits)}")
        print(f"L(xi)/pi^2 = {mpmath.nstr(res.ratio, digits)}")
        print(f"detected   = {res.detected if res.detected is not None else 'none'}")
    return EXIT_OK


def cmd_qseries(args) -> int:
    spec = QSeriesSpec(Matrix2(args.a, args.b, args.d), (args.B1, args.B2), args.C, args.order)
    ser = nahm_sum(spec, args.enumeration)
    _emit(_dumps(ser.to_json()) if args.json else str(ser) + "\n", None)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nahmscan", description="Rank-2 Nahm systems: solve, classify, scan.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scan", help="sweep a matrix range and emit a report")
    _add_range_args(p)
    p.add_argument("--emit", choices=("json", "csv"), default="json")
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--qseries", action="store_true", help="attach q-series with B = 0, C = 0")
    p.add_argument("--order", type=_rational, default=Fraction(10))
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify-theorem", help="compare the all-real set with the expected list")
    _add_range_args(p)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve", help="all solutions of one system")
    _matrix_args(p)
    p.add_argument("--width", type=_width, default=DEFAULT_WIDTH)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("dilog", help="L(xi) at the unit-square solution")
    _matrix_args(p)
    p.add_argument("--precision", type=int, default=DEFAULT_PRECISION)
    p.add_argument("--max-den", type=int, default=DEFAULT_MAX_DENOMINATOR)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_dilog)

    p = sub.add_parser("qseries", help="truncated Nahm sum")
    _matrix_args(p)
    p.add_argument("--B1", type=_rational, default=Fraction(0))
    p.add_argument("--B2", type=_rational, default=Fraction(0))
    p.add_argument("--C", type=_rational, default=Fraction(0))
    p.add_argument("--order", type=_rational, default=Fraction(10))
    p.add_argument("--enumeration", choices=ENUMERATIONS, default="row")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_qseries)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INVALID if e.code else EXIT_OK
    try:
        return args.func(args)
    except InvalidInputError as e:
        print(f"invalid input: {e}", file=sys.stderr)
        return EXIT_INVALID
    except NahmError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
