"""q-exchangeable probability measures on binary words of a fixed length.

A q-exchangeable measure changes by the fixed factor ``q^(b_i - b_{i+1})``
when two adjacent bits are swapped, so it is determined by its values on the
block words ``1^k 0^(n-k)``.  :class:`QExchMeasure` stores exactly those
``n + 1`` base values; everything else is ``q^coinversions * base[ones]``.
:class:`DenseMeasure` is the brute-force counterpart, a full table over all
``2^n`` words, used as an oracle and for measures that are not q-exchangeable.

JSON wire format (exact mode round-trips bit for bit):

    {"n": 3, "q": "1/2", "base": ["1/7", "0", ...]}

Exact scalars are serialized as fraction strings, float-mode scalars as JSON
numbers.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .qcore import (
    EXACT,
    FLOAT,
    ModeMismatchError,
    Scalar,
    Word,
    check_q,
    coinversions,
    common_mode,
    one_like,
    q_binomial,
    scalar_mode,
)

#: Dense tabulation is 2^n entries; past this the compact form is mandatory.
MAX_DENSE_N = 24

_FLOAT_MASS_TOL = 1e-9


def _coerce_entries(values, mode: str, what: str) -> tuple[Scalar, ...]:
    """Normalize a scalar vector to ``mode``, rejecting exact/float mixes."""
    out = []
    for v in values:
        if isinstance(v, int):
            v = float(v) if mode == FLOAT else Fraction(v)
        elif scalar_mode(v) != mode:
            raise ModeMismatchError(f"{what} entry {v!r} does not match {mode} mode")
        if v < 0:
            raise ValueError(f"{what} entries must be nonnegative, got {v}")
        out.append(v)
    return tuple(out)


def _check_total_mass(total: Scalar, mode: str, what: str) -> None:
    if mode == EXACT:
        if total != 1:
            raise ValueError(f"{what} total mass must be exactly 1, got {total}")
    elif abs(total - 1.0) > _FLOAT_MASS_TOL:
        raise ValueError(f"{what} total mass must be 1 within {_FLOAT_MASS_TOL}, got {total}")


@dataclass(frozen=True)
class QExchMeasure:
    """Compact q-exchangeable measure: ``base[k]`` is the block-word value.

    Validated on construction: ``base`` has length ``n + 1``, entries are
    nonnegative scalars in the mode of ``q``, and the total mass
    ``sum_k base[k] * [n, k]_q`` is 1 (exactly, in exact mode).
    """

    n: int
    q: Scalar
    base: tuple[Scalar, ...]

    def __post_init__(self) -> None:
        check_q(self.q)
        if self.n < 0:
            raise ValueError(f"n must be >= 0, got {self.n}")
        base = _coerce_entries(self.base, self.mode, "base")
        if len(base) != self.n + 1:
            raise ValueError(f"base must have n + 1 = {self.n + 1} entries, got {len(base)}")
        object.__setattr__(self, "base", base)
        total = sum(base[k] * q_binomial(self.n, k, self.q) for k in range(self.n + 1))
        _check_total_mass(total, self.mode, "measure")

    @property
    def mode(self) -> str:
        return scalar_mode(self.q)

    def level_mass(self, k: int) -> Scalar:
        """Total probability of the words with exactly ``k`` ones."""
        return self.base[k] * q_binomial(self.n, k, self.q)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "q": _scalar_to_json(self.q),
            "base": [_scalar_to_json(b) for b in self.base],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "QExchMeasure":
        try:
            n = int(d["n"])
            q = _scalar_from_json(d["q"])
            base = tuple(_scalar_from_json(b) for b in d["base"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed measure record: {exc}") from exc
        return cls(n, q, base)


@dataclass(frozen=True)
class DenseMeasure:
    """Explicit probability table over all ``2^n`` words, indexed by packed value."""

    n: int
    weights: tuple[Scalar, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_DENSE_N:
            raise ValueError(f"dense measures support 0 <= n <= {MAX_DENSE_N}, got {self.n}")
        mode = common_mode(*self.weights) if self.weights else EXACT
        weights = _coerce_entries(self.weights, mode, "weight")
        if len(weights) != 1 << self.n:
            raise ValueError(f"need 2^n = {1 << self.n} weights, got {len(weights)}")
        object.__setattr__(self, "weights", weights)
        _check_total_mass(sum(weights), mode, "dense measure")

    @property
    def mode(self) -> str:
        return scalar_mode(self.weights[0])

    def weight(self, w: Word) -> Scalar:
        if w.length != self.n:
            raise ValueError(f"word length {w.length} does not match dimension {self.n}")
        return self.weights[w.packed]

    def items(self) -> Iterator[tuple[Word, Scalar]]:
        for packed, value in enumerate(self.weights):
            yield Word(packed, self.n), value


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------

def extreme_measure(n: int, k: int, q: Scalar) -> QExchMeasure:
    """The unique q-exchangeable measure supported on the level of k ones.

    Its block value is ``1/[n, k]_q`` and pointwise it weighs each level word
    by ``q^coinversions / [n, k]_q``; these are the vertices of the convex set
    of q-exchangeable measures on ``{0,1}^n``.
    """
    check_q(q)
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    zero = one_like(q) * 0
    base = [zero] * (n + 1)
    base[k] = one_like(q) / q_binomial(n, k, q)
    return QExchMeasure(n, q, tuple(base))


def q_bernoulli(n: int, exponent: int, q: Scalar) -> QExchMeasure:
    """q-deformed Bernoulli measure with zero-probability ``x = q^exponent``.

    Block values follow ``base[j] = q^((e - j)(n - j)) * prod_{i<j}(1 - q^(e-i))``
    with ``e = exponent``, which is the cylinder polynomial
    ``q^(-j(n-j)) x^(n-j) (x; 1/q)_j`` rewritten with nonnegative integer
    exponents only.  Levels above ``exponent`` vanish because the product
    hits the factor ``1 - q^0``.
    """
    check_q(q)
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if exponent < 0:
        raise ValueError(f"exponent must be >= 0, got {exponent}")
    one = one_like(q)
    zero = one * 0
    base = []
    poch = one
    for j in range(n + 1):
        if j > exponent:
            base.append(zero)
            continue
        base.append(q ** ((exponent - j) * (n - j)) * poch)
        poch *= one - q ** (exponent - j)
    return QExchMeasure(n, q, tuple(base))


def random_q_exch(n: int, q: Scalar, seed: int) -> QExchMeasure:
    """Seeded random q-exchangeable measure, deterministic given ``seed``.

    Draws nonnegative level masses, normalizes them to total 1, and divides by
    the Gaussian binomials so the result is exactly a probability measure in
    exact mode.
    """
    check_q(q)
    rng = random.Random(seed)
    if scalar_mode(q) == EXACT:
        raw = [Fraction(rng.randint(0, 10**6)) for _ in range(n + 1)]
    else:
        raw = [rng.random() for _ in range(n + 1)]
    total = sum(raw)
    if total == 0:
        raw[0] = one_like(q)
        total = raw[0]
    base = tuple(r / total / q_binomial(n, k, q) for k, r in enumerate(raw))
    return QExchMeasure(n, q, base)


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def evaluate(m: QExchMeasure, w: Word) -> Scalar:
    """Probability of a single word: ``q^coinversions(w) * base[ones(w)]``."""
    if w.length != m.n:
        raise ValueError(f"word length {w.length} does not match dimension {m.n}")
    return m.q ** coinversions(w) * m.base[w.ones]


def to_dense(m: QExchMeasure) -> DenseMeasure:
    """Tabulate the measure on every word; exact mode stays exact."""
    if m.n > MAX_DENSE_N:
        raise ValueError(f"refusing to tabulate 2^{m.n} words (limit n <= {MAX_DENSE_N})")
    weights = tuple(evaluate(m, Word(p, m.n)) for p in range(1 << m.n))
    return DenseMeasure(m.n, weights)


def is_q_exchangeable(d: DenseMeasure, q: Scalar) -> tuple[bool, Optional[tuple[Word, int]]]:
    """Check the adjacent-swap rule on every word and position.

    For each word ``w`` and 1-based position ``i``, requires
    ``P(swap_i(w)) = q^(w_i - w_{i+1}) P(w)``, exactly in exact mode and
    within a small relative tolerance in float mode.  Returns
    ``(True, None)`` or ``(False, (word, position))`` for the first violation
    in increasing packed order.
    """
    check_q(q)
    exact = d.mode == EXACT and scalar_mode(q) == EXACT
    weights = d.weights
    for packed in range(1 << d.n):
        value = weights[packed]
        for i in range(1, d.n):
            lo = (packed >> (i - 1)) & 1
            hi = (packed >> i) & 1
            if lo == hi:
                continue
            swapped = weights[packed ^ (0b11 << (i - 1))]
            # lo = w_i, hi = w_{i+1}; factor q^(lo - hi)
            expected = value * q if lo == 1 else value / q
            if exact:
                ok = swapped == expected
            else:
                ok = abs(swapped - expected) <= 1e-12 + 1e-9 * max(abs(swapped), abs(expected))
            if not ok:
                return False, (Word(packed, d.n), i)
    return True, None


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------

class MeasureSampler:
    """Sequential-conditional sampler for a compact measure.

    Folding the base vector one coordinate at a time gives the level bases
    ``B_j`` of every leading projection via
    ``B_j[a] = B_{j+1}[a] + q^(j-a) * B_{j+1}[a+1]``; the conditional
    probability that the next bit is 1 given a prefix with ``a`` ones is then
    ``q^(j-a) * B_{j+1}[a+1] / B_j[a]``.  Conditionals are computed exactly
    and rounded to float once, at table-build time, so each draw costs n
    uniform variates and n lookups.
    """

    def __init__(self, m: QExchMeasure):
        self.n = m.n
        levels: list[list[Scalar]] = [list(m.base)]
        for j in range(m.n - 1, -1, -1):
            upper = levels[-1]
            levels.append([upper[a] + m.q ** (j - a) * upper[a + 1] for a in range(j + 1)])
        levels.reverse()  # levels[j] is the base vector of the j-dim projection
        self._p_one = []
        for j in range(m.n):
            row = []
            for a in range(j + 1):
                mass = levels[j][a]
                if mass == 0:
                    row.append(0.0)  # unreachable prefix
                else:
                    row.append(float(m.q ** (j - a) * levels[j + 1][a + 1] / mass))
            self._p_one.append(row)

    def draw(self, rng: random.Random) -> Word:
        packed = 0
        ones = 0
        for j in range(self.n):
            if rng.random() < self._p_one[j][ones]:
                packed |= 1 << j
                ones += 1
        return Word(packed, self.n)


def sample(m: QExchMeasure, rng: random.Random) -> Word:
    """Draw one word; for bulk draws build a :class:`MeasureSampler` once."""
    return MeasureSampler(m).draw(rng)


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def _scalar_to_json(x: Scalar):
    if scalar_mode(x) == EXACT:
        return str(Fraction(x))
    return x


def _scalar_from_json(v) -> Scalar:
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, (int, float)):
        return float(v)
    raise ValueError(f"not a scalar value: {v!r}")


def measure_to_json(m: QExchMeasure) -> str:
    return json.dumps(m.to_json_dict())


def measure_from_json(text: str) -> QExchMeasure:
    try:
        record = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed measure JSON: {exc}") from exc
    if not isinstance(record, dict):
        raise ValueError("malformed measure JSON: expected an object")
    return QExchMeasure.from_json_dict(record)
