"""Explicit rate constants and certified convergence sweeps.

The projection error of the canonical q-Bernoulli mixture decays like
``q^n`` with a constant depending only on the projection width ``k``, and
that order is optimal.  This module pins down both constants explicitly:

``upper_constant(k, q)`` sums, over target levels ``k1``, the Gaussian
binomial weight times the larger of two per-level bounds extracted from the
case analysis of the distance terms,

    B1      = (sum_{i<k} q^-i) / (1-q)^k             (level k1 = k, and the
                                                      nonnegative-sign case)
    B2(k1)  = (sum_{i<k-k1} q^(k1(k1-k) - i)) / (1-q)^k   for k1 < k,

so ``D(n, n1, k) <= upper_constant(k, q) * q^n`` uniformly in ``n1``.

``lower_constant(k, q) = (1-q)^(k-1) (q^(1-k) - q)`` bounds the distance from
below, ``D >= lower_constant * q^n``, whenever ``n1 >= k``; it comes from the
single level ``k1 = k`` term together with the technical inequality exposed
by :func:`tech_lemma_lhs_rhs`.

Inequality checks run in whatever arithmetic the inputs carry; in exact mode
they are exact.  The only tolerance-bearing computation in the module is the
least-squares slope fit.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

from .qcore import Scalar, check_q, one_like, q_binomial
from .definetti import DistanceReport, extreme_vs_bernoulli_distance

#: Environment variable controlling sweep parallelism (default: one worker
#: per available CPU).  Grids smaller than _PARALLEL_THRESHOLD always run
#: serially; results are identical either way because reports are sorted.
WORKERS_ENV_VAR = "QEXCHANGE_WORKERS"
_PARALLEL_THRESHOLD = 64


class RateViolationError(Exception):
    """A proven inequality failed; carries the offending report.

    This must never happen in a correct build, so callers treat it as a
    build-stopping defect rather than a recoverable condition.
    """

    def __init__(self, report: DistanceReport, reports: list[DistanceReport]):
        self.report = report
        self.reports = reports
        bound = "upper" if report.distance > report.upper else "lower"
        super().__init__(
            f"{bound} bound violated at n={report.n}, n1={report.n1}, k={report.k}: "
            f"distance={report.distance}, upper={report.upper}, lower={report.lower}"
        )


def upper_constant(k: int, q: Scalar) -> Scalar:
    """Uniform-in-``n1`` constant with ``D(n, n1, k) <= c_k * q^n``."""
    check_q(q)
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    one = one_like(q)
    if k == 0:
        return one * 0
    denom = (one - q) ** k
    b1 = sum(q ** -i for i in range(k)) / denom
    total = one * 0
    for k1 in range(k + 1):
        if k1 == k:
            b2 = one * 0
        else:
            b2 = sum(q ** (k1 * (k1 - k) - i) for i in range(k - k1)) / denom
        total += q_binomial(k, k1, q) * max(b1, b2)
    return total


def lower_constant(k: int, q: Scalar) -> Scalar:
    """Sharpness constant with ``D(n, n1, k) >= c~_k * q^n`` for ``n1 >= k``."""
    check_q(q)
    if k < 1:
        raise ValueError(f"lower bound requires k >= 1, got {k}")
    return (one_like(q) - q) ** (k - 1) * (q ** (1 - k) - q)


def tech_lemma_lhs_rhs(n: int, k: int, q: Scalar) -> tuple[Scalar, Scalar]:
    """Both sides of the sharpness inequality, contract ``L >= R``.

    ``L = (1 - prod_{i<k}(1 - q^(n-i))) / prod_{i<k}(1 - q^(n-i))`` and
    ``R = ((q^(1-k) - q)/(1-q)) * q^n``, which equals the geometric sum
    ``sum_{i<k} q^(n-i)`` exactly.
    """
    check_q(q)
    if not 1 <= k <= n:
        raise ValueError(f"need n >= k >= 1, got n={n}, k={k}")
    one = one_like(q)
    prod = one
    for i in range(k):
        prod *= one - q ** (n - i)
    lhs = (one - prod) / prod
    rhs = (q ** (1 - k) - q) / (one - q) * q**n
    return lhs, rhs


@dataclass(frozen=True)
class RateSweepConfig:
    """Grid description for a rate sweep.

    ``n1_rule`` selects the source level for each n: ``"equal"`` uses n
    itself, ``"half"`` uses ``n // 2``, ``"fixed"`` uses ``n1_fixed`` for
    every n, and ``"list"`` runs every exponent in ``n1_list`` at every n.
    """

    q: Scalar
    k: int
    n_start: int
    n_end: int
    n1_rule: str = "equal"
    n1_fixed: Optional[int] = None
    n1_list: Optional[tuple[int, ...]] = None

    def __post_init__(self) -> None:
        check_q(self.q)
        if self.k < 0:
            raise ValueError(f"k must be >= 0, got {self.k}")
        if self.n_start > self.n_end:
            raise ValueError(f"empty n range {self.n_start}..{self.n_end}")
        if self.n_start < self.k:
            raise ValueError(f"n range must start at k = {self.k} or above, got {self.n_start}")
        if self.n1_rule == "fixed":
            if self.n1_fixed is None or not 0 <= self.n1_fixed <= self.n_start:
                raise ValueError(f"fixed n1 must lie in 0..{self.n_start}, got {self.n1_fixed}")
        elif self.n1_rule == "list":
            if not self.n1_list:
                raise ValueError("list rule requires a nonempty n1_list")
            if any(not 0 <= v <= self.n_start for v in self.n1_list):
                raise ValueError(f"every listed n1 must lie in 0..{self.n_start}")
        elif self.n1_rule not in ("equal", "half"):
            raise ValueError(f"unknown n1 rule {self.n1_rule!r}")

    def n1_values(self, n: int) -> tuple[int, ...]:
        if self.n1_rule == "equal":
            return (n,)
        if self.n1_rule == "half":
            return (n // 2,)
        if self.n1_rule == "fixed":
            return (self.n1_fixed,)
        return self.n1_list

    def grid(self) -> list[tuple[int, int]]:
        return [
            (n, n1)
            for n in range(self.n_start, self.n_end + 1)
            for n1 in self.n1_values(n)
        ]


def _report_at(args: tuple[int, int, int, Scalar]) -> DistanceReport:
    n, n1, k, q = args
    distance = extreme_vs_bernoulli_distance(n, n1, k, q)
    upper = upper_constant(k, q) * q**n
    lower = lower_constant(k, q) * q**n if n1 >= k >= 1 else None
    return DistanceReport(n=n, k=k, n1=n1, q=q, distance=distance, upper=upper, lower=lower)


def _worker_count() -> int:
    value = os.environ.get(WORKERS_ENV_VAR)
    if value is not None:
        count = int(value)
        if count < 1:
            raise ValueError(f"{WORKERS_ENV_VAR} must be >= 1, got {value}")
        return count
    return os.cpu_count() or 1


def verify_rate(cfg: RateSweepConfig) -> list[DistanceReport]:
    """Compute a report per grid point and assert both bounds on each.

    Reports come back sorted by ``(n, n1)``.  The first bound failure in that
    order raises :class:`RateViolationError`; parallel execution cannot change
    which report that is.
    """
    jobs = [(n, n1, cfg.k, cfg.q) for n, n1 in cfg.grid()]
    workers = _worker_count()
    if workers > 1 and len(jobs) >= _PARALLEL_THRESHOLD:
        try:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                reports = list(pool.map(_report_at, jobs, chunksize=8))
        except OSError:
            reports = [_report_at(job) for job in jobs]
    else:
        reports = [_report_at(job) for job in jobs]
    reports.sort(key=lambda r: (r.n, r.n1))
    for report in reports:
        if not report.bounds_ok:
            raise RateViolationError(report, reports)
    return reports


def fit_log_slope(reports: Sequence[DistanceReport]) -> float:
    """Least-squares slope of ``ln(distance)`` against ``n``.

    Zero-distance reports are dropped.  Requires at least 3 surviving points
    over at least 3 distinct n, all sharing one k and one q; for a genuinely
    geometric decay the slope is ``ln q``.
    """
    usable = [r for r in reports if r.distance > 0]
    if len(usable) < 3:
        raise ValueError(f"need at least 3 reports with positive distance, got {len(usable)}")
    if len({r.k for r in usable}) != 1 or len({r.q for r in usable}) != 1:
        raise ValueError("slope fit requires reports sharing one k and one q")
    xs = [float(r.n) for r in usable]
    ys = [math.log(float(r.distance)) for r in usable]
    if len(set(xs)) < 3:
        raise ValueError("slope fit requires at least 3 distinct n values")
    x_mean = sum(xs) / len(xs)
    y_mean = sum(ys) / len(ys)
    sxx = sum((x - x_mean) ** 2 for x in xs)
    sxy = sum((x - x_mean) * (y - y_mean) for x, y in zip(xs, ys))
    return sxy / sxx
