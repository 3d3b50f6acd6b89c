"""Leading-coordinate projections and total-variation distance.

Projecting a q-exchangeable measure onto its first ``k`` coordinates yields a
q-exchangeable measure again, so the pushforward stays in compact form.  The
suffix sum collapses to a level-transition weight: a target level ``k1``
receives mass from each source level ``j`` with weight
``q^((j - k1)(k - k1)) * [n - k, j - k1]_q``.

Total variation is the plain L1 sum ``sum_w |a(w) - b(w)|``, which equals
twice the supremum of ``|a(A) - b(A)|`` over events; for two compact measures
with the same q the sum collapses level by level to
``sum_k1 [n, k1]_q * |a.base[k1] - b.base[k1]|``.
"""

from __future__ import annotations

from typing import Union

from .qcore import (
    Scalar,
    check_q,
    common_mode,
    one_like,
    q_binomial,
    q_binomial_or_zero,
)
from .measures import DenseMeasure, QExchMeasure, to_dense

Measure = Union[QExchMeasure, DenseMeasure]


def project(m: QExchMeasure, k: int) -> QExchMeasure:
    """Pushforward of ``m`` onto its first ``k`` coordinates."""
    if not 0 <= k <= m.n:
        raise ValueError(f"need 0 <= k <= n = {m.n}, got k={k}")
    if k == m.n:
        return m
    base = []
    for k1 in range(k + 1):
        acc = one_like(m.q) * 0
        for j in range(k1, k1 + (m.n - k) + 1):
            weight = q_binomial_or_zero(m.n - k, j - k1, m.q)
            if weight == 0 or m.base[j] == 0:
                continue
            acc += m.q ** ((j - k1) * (k - k1)) * weight * m.base[j]
        base.append(acc)
    return QExchMeasure(k, m.q, tuple(base))


def project_extreme_closed_form(n: int, n1: int, k: int, k1: int, q: Scalar) -> Scalar:
    """Block value of the projected level-``n1`` extreme measure.

    Returns ``q^((n1 - k1)(k - k1)) * [n - k, n1 - k1]_q / [n, n1]_q`` with
    out-of-range inner binomials contributing zero, matching the zero mass the
    brute-force pushforward assigns to those corners.
    """
    check_q(q)
    if not (0 <= k1 <= k <= n and 0 <= n1 <= n):
        raise ValueError(f"need 0 <= k1 <= k <= n and 0 <= n1 <= n, got n={n}, n1={n1}, k={k}, k1={k1}")
    inner = q_binomial_or_zero(n - k, n1 - k1, q)
    if inner == 0:
        return inner
    return q ** ((n1 - k1) * (k - k1)) * inner / q_binomial(n, n1, q)


def project_bernoulli_closed_form(n1: int, k: int, k1: int, q: Scalar) -> Scalar:
    """Block value of the projected q-Bernoulli measure with ``x = q^n1``.

    Returns ``q^((n1 - k1)(k - k1)) * (q^n1; 1/q)_k1``; the Pochhammer factor
    vanishes whenever ``k1 > n1``, so no explicit range guard is needed.
    """
    check_q(q)
    if not 0 <= k1 <= k:
        raise ValueError(f"need 0 <= k1 <= k, got k={k}, k1={k1}")
    if n1 < 0:
        raise ValueError(f"need n1 >= 0, got {n1}")
    if k1 > n1:
        return one_like(q) * 0
    poch = one_like(q)
    for i in range(k1):
        poch *= one_like(q) - q ** (n1 - i)
    return q ** ((n1 - k1) * (k - k1)) * poch


def _densify(m: Measure) -> DenseMeasure:
    return m if isinstance(m, DenseMeasure) else to_dense(m)


def tv_distance(a: Measure, b: Measure) -> Scalar:
    """L1 total-variation distance between two same-dimension measures.

    Two compact measures with equal q are compared level by level without
    tabulation; any other combination falls back to dense tables (subject to
    the dense size guard).
    """
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")
    if isinstance(a, QExchMeasure) and isinstance(b, QExchMeasure) and a.q == b.q:
        common_mode(a.q, b.q)
        return sum(
            q_binomial(a.n, k1, a.q) * abs(a.base[k1] - b.base[k1])
            for k1 in range(a.n + 1)
        )
    da, db = _densify(a), _densify(b)
    common_mode(da.weights[0], db.weights[0])
    return sum(abs(x - y) for x, y in zip(da.weights, db.weights))
