"""Command-line surface: compute, verify, sweep, and export.

Exit codes are stable across subcommands: 0 for success, 1 for a failed
mathematical check (a bound or invariant that should have held), 2 for usage
or input errors.  The parameter q is accepted only as an exact fraction
string like ``1/2``; decimal input is allowed only together with
``--mode float``, which itself exists only on ``sweep``.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import bounds, definetti, measures, verify
from .qcore import EXACT, Scalar, check_q, q_binomial

CSV_HEADER = "n,k,n1,q,distance,upper,lower,dist_over_qn"

_FRACTION_RE = re.compile(r"^\d+/\d+$")
_DECIMAL_RE = re.compile(r"^\d*\.\d+$")
_RANGE_RE = re.compile(r"^(\d+)(?:\.\.(\d+))?$")


class _UsageError(Exception):
    pass


def _parse_q(text: str, mode: str = EXACT) -> Scalar:
    if _FRACTION_RE.match(text):
        value = Fraction(text)
    elif _DECIMAL_RE.match(text):
        if mode == EXACT:
            raise _UsageError(f"decimal q {text!r} not allowed in exact mode; pass a fraction like 1/2")
        value = Fraction(text)
    else:
        raise _UsageError(f"cannot parse q {text!r}; expected a fraction like 1/2")
    try:
        check_q(value)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc
    return float(value) if mode != EXACT else value


def _parse_q_list(text: str) -> list[Scalar]:
    return [_parse_q(part.strip()) for part in text.split(",") if part.strip()]


def _parse_n_range(text: str) -> tuple[int, int]:
    match = _RANGE_RE.match(text)
    if not match:
        raise _UsageError(f"cannot parse n range {text!r}; expected START..END or a single value")
    start = int(match.group(1))
    end = int(match.group(2)) if match.group(2) is not None else start
    return start, end


def _parse_n1_rule(text: str) -> tuple[str, Optional[int]]:
    if text in ("half", "equal"):
        return text, None
    if text.startswith("fixed:"):
        tail = text[len("fixed:"):]
        if not tail.isdigit():
            raise _UsageError(f"fixed n1 rule needs an integer, got {text!r}")
        return "fixed", int(tail)
    raise _UsageError(f"unknown n1 rule {text!r}; expected half, equal, or fixed:<v>")


def _fmt_float(x) -> str:
    return f"{float(x):.17g}"


def _fmt_exact(x: Scalar) -> str:
    return str(Fraction(x)) if not isinstance(x, float) else _fmt_float(x)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_qbinom(args: argparse.Namespace) -> int:
    q = _parse_q(args.q)
    if not 0 <= args.k <= args.n:
        raise _UsageError(f"need 0 <= k <= n, got n={args.n}, k={args.k}")
    print(_fmt_exact(q_binomial(args.n, args.k, q)))
    return 0


def cmd_distance(args: argparse.Namespace) -> int:
    q = _parse_q(args.q)
    if not (0 <= args.k <= args.n and 0 <= args.n1 <= args.n):
        raise _UsageError(f"need 0 <= k <= n and 0 <= n1 <= n, got n={args.n}, n1={args.n1}, k={args.k}")
    distance = definetti.extreme_vs_bernoulli_distance(args.n, args.n1, args.k, q)
    upper = bounds.upper_constant(args.k, q) * q**args.n
    lower = bounds.lower_constant(args.k, q) * q**args.n if args.n1 >= args.k >= 1 else None
    report = definetti.DistanceReport(
        n=args.n, k=args.k, n1=args.n1, q=q, distance=distance, upper=upper, lower=lower
    )
    print(f"n={args.n} n1={args.n1} k={args.k} q={q}")
    print(f"distance = {_fmt_exact(distance)} ({_fmt_float(distance)})")
    print(f"upper = {_fmt_exact(upper)} ({_fmt_float(upper)})")
    if lower is None:
        print("lower = n/a (requires n1 >= k >= 1)")
    else:
        print(f"lower = {_fmt_exact(lower)} ({_fmt_float(lower)})")
    print("PASS" if report.bounds_ok else "FAIL")
    return 0 if report.bounds_ok else 1


def _report_row(r: definetti.DistanceReport) -> str:
    lower = "" if r.lower is None else _fmt_float(r.lower)
    return ",".join(
        [
            str(r.n),
            str(r.k),
            str(r.n1),
            _fmt_exact(r.q),
            _fmt_float(r.distance),
            _fmt_float(r.upper),
            lower,
            _fmt_float(r.dist_over_qn),
        ]
    )


def _report_record(r: definetti.DistanceReport) -> dict:
    if r.mode == EXACT:
        def render(x):
            return None if x is None else str(Fraction(x))
    else:
        def render(x):
            return x
    return {
        "n": r.n,
        "k": r.k,
        "n1": r.n1,
        "q": render(r.q),
        "distance": render(r.distance),
        "upper": render(r.upper),
        "lower": render(r.lower),
        "dist_over_qn": render(r.dist_over_qn),
    }


def _render_sweep(reports, fmt: str, violation: Optional[definetti.DistanceReport]) -> str:
    if fmt == "json":
        return json.dumps([_report_record(r) for r in reports], indent=2) + "\n"
    lines = [CSV_HEADER]
    lines += [_report_row(r) for r in reports]
    if violation is not None:
        lines.append(
            f"VIOLATION,n={violation.n},n1={violation.n1},k={violation.k},"
            f"distance={_fmt_exact(violation.distance)}"
        )
    text = "\n".join(lines) + "\n"
    if fmt == "table":
        rows = [line.split(",") for line in text.strip().split("\n")]
        widths = [max(len(row[i]) for row in rows if i < len(row)) for i in range(len(rows[0]))]
        text = "\n".join(
            "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)) for row in rows
        ) + "\n"
    return text


def cmd_sweep(args: argparse.Namespace) -> int:
    q = _parse_q(args.q, args.mode)
    n_start, n_end = _parse_n_range(args.n)
    rule, fixed = _parse_n1_rule(args.n1)
    try:
        cfg = bounds.RateSweepConfig(
            q=q, k=args.k, n_start=n_start, n_end=n_end, n1_rule=rule, n1_fixed=fixed
        )
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc

    violation = None
    try:
        reports = bounds.verify_rate(cfg)
    except bounds.RateViolationError as exc:
        reports = exc.reports
        violation = exc.report

    text = _render_sweep(reports, args.format, violation)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)

    if args.fit_slope:
        try:
            slope = bounds.fit_log_slope(reports)
        except ValueError as exc:
            raise _UsageError(str(exc)) from exc
        print(f"fit_log_slope = {_fmt_float(slope)}", file=sys.stderr)
    return 1 if violation is not None else 0


def cmd_decompose(args: argparse.Namespace) -> int:
    try:
        with open(args.measure) as fh:
            m = measures.measure_from_json(fh.read())
    except OSError as exc:
        raise _UsageError(f"cannot read measure file: {exc}") from exc
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc
    if not 0 <= args.k <= m.n:
        raise _UsageError(f"need 0 <= k <= n = {m.n}, got k={args.k}")

    mu = definetti.decompose(m)
    error = definetti.approx_error(m, args.k)
    cap = bounds.upper_constant(args.k, m.q) * m.q**m.n
    passed = error <= cap
    record = {
        "mixing": mu.to_json_dict(),
        "k": args.k,
        "approx_error": measures._scalar_to_json(error),
        "approx_error_float": float(error),
        "upper_bound": measures._scalar_to_json(cap),
        "upper_bound_float": float(cap),
        "pass": passed,
    }
    print(json.dumps(record, indent=2))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(definetti.mixing_to_json(mu) + "\n")
    return 0 if passed else 1


def cmd_random_measure(args: argparse.Namespace) -> int:
    q = _parse_q(args.q)
    if args.n < 0:
        raise _UsageError(f"n must be >= 0, got {args.n}")
    m = measures.random_q_exch(args.n, q, args.seed)
    text = measures.measure_to_json(m) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify_all(args: argparse.Namespace) -> int:
    qs = _parse_q_list(args.q)
    if args.max_n < 0:
        raise _UsageError(f"max-n must be >= 0, got {args.max_n}")
    if not qs:
        raise _UsageError("need at least one q value")
    results = verify.run_all(args.max_n, qs)
    width = max(len(r.name) for r in results)
    for r in results:
        status = "OK" if r.ok else "FAIL"
        print(f"{r.name.ljust(width)}  {r.checks:7d} checks  {status}")
        if not r.ok:
            print(f"  first counterexample: {r.failures[0]}")
    total = sum(r.checks for r in results)
    if all(r.ok for r in results):
        print(f"ALL OK ({total} checks)")
        return 0
    print(f"FAILED ({total} checks)")
    return 1


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qexchange",
        description="Exact q-exchangeable measures: distances, mixtures, and certified q^n rate bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("qbinom", help="print a Gaussian binomial coefficient")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--q", required=True, help="deformation parameter as a fraction, e.g. 1/2")
    p.set_defaults(func=cmd_qbinom)

    p = sub.add_parser("distance", help="extreme-vs-Bernoulli projection distance with both bounds")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--n1", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--q", required=True)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("sweep", help="rate sweep over an n range; CSV schema " + CSV_HEADER)
    p.add_argument("--q", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", required=True, help="inclusive range START..END (or a single value)")
    p.add_argument("--n1", default="equal", help="half | equal | fixed:<v>")
    p.add_argument("--mode", choices=("exact", "float"), default="exact")
    p.add_argument("--format", choices=("csv", "json", "table"), default="csv")
    p.add_argument("--out", help="write output to this path instead of stdout")
    p.add_argument("--fit-slope", action="store_true", help="print ln-distance slope to stderr")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("decompose", help="decompose a measure file and report its mixture error")
    p.add_argument("measure", help="path to a measure JSON file")
    p.add_argument("--k", type=int, required=True, help="projection width for the error report")
    p.add_argument("--out", help="also write the mixing measure JSON to this path")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("random-measure", help="write a seeded random q-exchangeable measure as JSON")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write to this path instead of stdout")
    p.set_defaults(func=cmd_random_measure)

    p = sub.add_parser("verify-all", help="run every invariant suite and report per-suite counts")
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--q", default="1/2,1/3,2/3", help="comma-separated fractions")
    p.set_defaults(func=cmd_verify_all)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
