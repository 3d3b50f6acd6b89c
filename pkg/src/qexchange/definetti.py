"""Convex decomposition, q-Bernoulli mixtures, and the central distance.

Every q-exchangeable measure on ``{0,1}^n`` splits uniquely into a convex
combination of the level-supported extreme measures; the weights are the
level masses ``alpha_i = base[i] * [n, i]_q``.  Reading those weights as a
probability measure on the geometric grid ``{q^0, ..., q^n}`` and mixing the
corresponding q-Bernoulli measures gives the canonical approximation whose
projection error is the quantity this package certifies.

The extreme-vs-Bernoulli distance has a closed form over target levels:

    D(n, n1, k) = sum_{k1=0}^{k} [k, k1]_q * q^((n1 - k1)(k - k1))
                  * | [n - k, n1 - k1]_q / [n, n1]_q  -  (q^n1; 1/q)_k1 |

which equals the total variation of the two k-dimensional pushforwards.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import json

from .qcore import (
    Scalar,
    check_q,
    one_like,
    q_binomial,
    scalar_mode,
)
from .measures import (
    QExchMeasure,
    _check_total_mass,
    _coerce_entries,
    _scalar_from_json,
    _scalar_to_json,
    q_bernoulli,
)
from .projection import (
    project,
    project_bernoulli_closed_form,
    project_extreme_closed_form,
    tv_distance,
)


@dataclass(frozen=True)
class MixingMeasure:
    """Weights ``alpha[i]`` on the grid points ``q^i``, ``i = 0..n``."""

    n: int
    q: Scalar
    alpha: tuple[Scalar, ...]

    def __post_init__(self) -> None:
        check_q(self.q)
        if self.n < 0:
            raise ValueError(f"n must be >= 0, got {self.n}")
        alpha = _coerce_entries(self.alpha, self.mode, "alpha")
        if len(alpha) != self.n + 1:
            raise ValueError(f"alpha must have n + 1 = {self.n + 1} entries, got {len(alpha)}")
        object.__setattr__(self, "alpha", alpha)
        _check_total_mass(sum(alpha), self.mode, "mixing measure")

    @property
    def mode(self) -> str:
        return scalar_mode(self.q)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "q": _scalar_to_json(self.q),
            "alpha": [_scalar_to_json(a) for a in self.alpha],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "MixingMeasure":
        try:
            n = int(d["n"])
            q = _scalar_from_json(d["q"])
            alpha = tuple(_scalar_from_json(a) for a in d["alpha"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed mixing-measure record: {exc}") from exc
        return cls(n, q, alpha)


@dataclass(frozen=True)
class DistanceReport:
    """One grid point of a rate sweep: the distance and its two bounds.

    ``upper`` is ``upper_constant(k, q) * q^n``; ``lower`` is
    ``lower_constant(k, q) * q^n`` and is only attached when ``n1 >= k >= 1``,
    the regime where the lower bound is proved.  ``bounds_ok`` is the
    inequality pair itself; sweep drivers assert it rather than tolerate it.
    """

    n: int
    k: int
    n1: int
    q: Scalar
    distance: Scalar
    upper: Scalar
    lower: Optional[Scalar] = None

    @property
    def mode(self) -> str:
        return scalar_mode(self.q)

    @property
    def bounds_ok(self) -> bool:
        if self.distance > self.upper:
            return False
        return self.lower is None or self.lower <= self.distance

    @property
    def dist_over_qn(self) -> Scalar:
        return self.distance / self.q**self.n


def decompose(m: QExchMeasure) -> MixingMeasure:
    """Level masses of ``m`` as a mixing measure on ``{q^0, ..., q^n}``.

    The convex combination ``sum_i alpha[i] * extreme(n, i)`` rebuilds ``m``
    exactly, because ``alpha[i] / [n, i]_q = base[i]``.
    """
    alpha = tuple(m.level_mass(i) for i in range(m.n + 1))
    return MixingMeasure(m.n, m.q, alpha)


def mixture(mu: MixingMeasure, n: int) -> QExchMeasure:
    """Mix the q-Bernoulli measures ``x = q^i`` on ``{0,1}^n`` by ``mu``.

    Combination happens on base vectors, which are closed under convex
    combination, so exact mode stays exact at any n.
    """
    if n < mu.n:
        raise ValueError(f"mixing measure uses exponents up to {mu.n}, cannot mix on n={n}")
    zero = one_like(mu.q) * 0
    base = [zero] * (n + 1)
    for i, weight in enumerate(mu.alpha):
        if weight == 0:
            continue
        component = q_bernoulli(n, i, mu.q)
        for j in range(n + 1):
            base[j] += weight * component.base[j]
    return QExchMeasure(n, mu.q, tuple(base))


def extreme_vs_bernoulli_distance(n: int, n1: int, k: int, q: Scalar) -> Scalar:
    """Exact TV distance between the k-projections of ``extreme(n, n1)`` and
    the q-Bernoulli measure at ``x = q^n1``, by the closed-form level sum."""
    check_q(q)
    if not (0 <= k <= n and 0 <= n1 <= n):
        raise ValueError(f"need 0 <= k <= n and 0 <= n1 <= n, got n={n}, n1={n1}, k={k}")
    total = one_like(q) * 0
    for k1 in range(k + 1):
        a = project_extreme_closed_form(n, n1, k, k1, q)
        b = project_bernoulli_closed_form(n1, k, k1, q)
        if a == b:
            continue
        total += q_binomial(k, k1, q) * abs(a - b)
    return total


def approx_error(m: QExchMeasure, k: int) -> Scalar:
    """TV distance between the k-projection of ``m`` and the k-projection of
    its canonical q-Bernoulli mixture."""
    if not 0 <= k <= m.n:
        raise ValueError(f"need 0 <= k <= n = {m.n}, got k={k}")
    mixed = mixture(decompose(m), m.n)
    return tv_distance(project(m, k), project(mixed, k))


def mixing_to_json(mu: MixingMeasure) -> str:
    return json.dumps(mu.to_json_dict())


def mixing_from_json(text: str) -> MixingMeasure:
    try:
        record = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed mixing-measure JSON: {exc}") from exc
    if not isinstance(record, dict):
        raise ValueError("malformed mixing-measure JSON: expected an object")
    return MixingMeasure.from_json_dict(record)
