"""Exact q-combinatorics primitives and bit-packed binary-word statistics.

Two scalar modes run through the whole package.  Exact mode uses
``fractions.Fraction`` end to end, so every identity in the library can be
asserted with ``==`` and no tolerance.  Float mode uses plain ``float`` and
exists for large sweeps where exact denominators blow up.  A value's mode is
its type; plain ``int`` is mode-neutral.  Mixing a ``Fraction`` with a
``float`` is a bug, not a coercion, and raises :class:`ModeMismatchError`.

Words are binary sequences packed little-endian into a Python int: bit ``i``
of ``packed`` holds sequence position ``i + 1``.  This makes the level
enumeration order (increasing packed value) canonical.

Two pair statistics are provided.  ``inversions`` counts descents, pairs
``i < j`` with ``w_i > w_j`` (a one before a zero).  ``coinversions`` counts
ascents, pairs with ``w_i < w_j``.  They satisfy ``inv + coinv = ones * zeros``
and both sum to the Gaussian binomial over a level set.  All probability
weights in this package use the coinversion statistic: under the adjacent-swap
rule (swapping a ``1, 0`` pair into ``0, 1`` multiplies the probability by
``q``), the block word ``1^k 0^(n-k)`` carries exponent zero and the largest
probability of its level, and each ascent pair costs one factor of ``q``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Union

Scalar = Union[Fraction, float]

EXACT = "exact"
FLOAT = "float"

#: Packed words use a single machine-friendly int; 63 bits keeps shifts cheap
#: and leaves room for a sign bit in foreign consumers.
MAX_WORD_LENGTH = 63


class ModeMismatchError(TypeError):
    """Raised when exact (Fraction) and float scalars meet in one expression."""


def scalar_mode(x: Scalar) -> str:
    """Return ``"exact"`` for Fraction/int values, ``"float"`` for floats."""
    if isinstance(x, float):
        return FLOAT
    if isinstance(x, (Fraction, int)):
        return EXACT
    raise TypeError(f"not a scalar: {x!r}")


def common_mode(*values: Scalar) -> str:
    """Mode shared by ``values``, treating plain ints as neutral.

    Defaults to exact when every value is an int.  Raises
    :class:`ModeMismatchError` on an exact/float mix.
    """
    modes = {scalar_mode(v) for v in values if not isinstance(v, int)}
    if len(modes) > 1:
        raise ModeMismatchError(f"mixed exact/float operands: {values!r}")
    return modes.pop() if modes else EXACT


def one_like(q: Scalar) -> Scalar:
    """Multiplicative unit in the mode of ``q``."""
    return 1.0 if scalar_mode(q) == FLOAT else Fraction(1)


def check_q(q: Scalar) -> Scalar:
    """Validate a deformation parameter: strictly between 0 and 1.

    Both endpoints are rejected; the classical ``q = 1`` regime is out of
    scope and ``q = 0`` degenerates every weight.
    """
    if not isinstance(q, (Fraction, float)):
        raise TypeError(f"q must be a Fraction or float, got {type(q).__name__}")
    if not 0 < q < 1:
        raise ValueError(f"q must satisfy 0 < q < 1, got {q}")
    return q


# ---------------------------------------------------------------------------
# Words
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Word:
    """A binary sequence of ``length`` bits packed into an int.

    Bit ``i`` of ``packed`` stores sequence position ``i + 1``, so the word
    ``(1, 0)`` packs to 1 and ``(0, 1)`` packs to 2.
    """

    packed: int
    length: int

    def __post_init__(self) -> None:
        if not 0 <= self.length <= MAX_WORD_LENGTH:
            raise ValueError(f"word length must be in 0..{MAX_WORD_LENGTH}, got {self.length}")
        if not 0 <= self.packed < (1 << self.length):
            raise ValueError(f"packed value {self.packed} out of range for length {self.length}")

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "Word":
        packed = 0
        length = 0
        for b in bits:
            if b not in (0, 1):
                raise ValueError(f"bits must be 0 or 1, got {b!r}")
            packed |= b << length
            length += 1
        return cls(packed, length)

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.packed >> i) & 1 for i in range(self.length))

    @property
    def ones(self) -> int:
        return self.packed.bit_count()

    @property
    def zeros(self) -> int:
        return self.length - self.ones

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


def block_word(n: int, k: int) -> Word:
    """The level representative ``1^k 0^(n-k)``: k ones then n-k zeros."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    return Word((1 << k) - 1, n)


def inversions(w: Word) -> int:
    """Number of descent pairs ``i < j`` with ``w_i = 1, w_j = 0``."""
    inv = 0
    zeros = ~w.packed & ((1 << w.length) - 1)
    while zeros:
        low = zeros & -zeros
        inv += (w.packed & (low - 1)).bit_count()
        zeros ^= low
    return inv


def coinversions(w: Word) -> int:
    """Number of ascent pairs ``i < j`` with ``w_i = 0, w_j = 1``."""
    coinv = 0
    ones = w.packed
    while ones:
        low = ones & -ones
        pos = low.bit_length() - 1
        coinv += pos - (w.packed & (low - 1)).bit_count()
        ones ^= low
    return coinv


def swap_adjacent(w: Word, i: int) -> Word:
    """Swap sequence positions ``i`` and ``i + 1`` (1-based)."""
    if not 1 <= i < w.length or w.length < 2:
        raise ValueError(f"position {i} has no adjacent pair in a word of length {w.length}")
    lo = (w.packed >> (i - 1)) & 1
    hi = (w.packed >> i) & 1
    if lo == hi:
        return w
    return Word(w.packed ^ (0b11 << (i - 1)), w.length)


def enumerate_level(n: int, k: int) -> Iterator[Word]:
    """Yield every length-``n`` word with exactly ``k`` ones.

    Order is strictly increasing packed value, produced by Gosper's hack
    (next-higher int with the same popcount), so the stream is canonical and
    needs no materialized set.
    """
    if n > MAX_WORD_LENGTH:
        raise ValueError(f"packed enumeration supports n <= {MAX_WORD_LENGTH}, got {n}")
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    if k == 0:
        yield Word(0, n)
        return
    v = (1 << k) - 1
    limit = 1 << n
    while v < limit:
        yield Word(v, n)
        c = v & -v
        r = v + c
        v = (((r ^ v) >> 2) // c) | r


# ---------------------------------------------------------------------------
# q-functions
# ---------------------------------------------------------------------------

def q_int(n: int, q: Scalar) -> Scalar:
    """The q-integer ``1 + q + ... + q^(n-1)``; equals ``(1 - q^n)/(1 - q)``."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    total = one_like(q) * 0
    power = one_like(q)
    for _ in range(n):
        total += power
        power *= q
    return total


def q_factorial(n: int, q: Scalar) -> Scalar:
    """Product of the q-integers 1..n; empty product is 1."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    result = one_like(q)
    for i in range(1, n + 1):
        result *= q_int(i, q)
    return result


# Triangle rows of Gaussian binomials per q value.  Rows are built additively
# (no division, so exact mode stays polynomial evaluation) and published by a
# single dict assignment; a racing rebuild wastes work but never corrupts.
_QBINOM_ROWS: dict[Scalar, list[list[Scalar]]] = {}


def _qbinom_rows(q: Scalar, n: int) -> list[list[Scalar]]:
    rows = _QBINOM_ROWS.get(q)
    if rows is not None and len(rows) > n:
        return rows
    one = one_like(q)
    new_rows = [row[:] for row in rows] if rows else [[one]]
    q_pow = [one]
    for _ in range(n):
        q_pow.append(q_pow[-1] * q)
    while len(new_rows) <= n:
        prev = new_rows[-1]
        r = len(new_rows)
        row = [one]
        for k in range(1, r):
            row.append(q_pow[k] * prev[k] + prev[k - 1])
        row.append(one)
        new_rows.append(row)
    _QBINOM_ROWS[q] = new_rows
    return new_rows


def q_binomial(n: int, k: int, q: Scalar) -> Scalar:
    """Gaussian binomial via the recurrence ``[n,k] = q^k [n-1,k] + [n-1,k-1]``."""
    if k < 0 or k > n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    return _qbinom_rows(q, n)[n][k]


def q_binomial_or_zero(n: int, k: int, q: Scalar) -> Scalar:
    """Gaussian binomial extended by the convention ``[n,k] = 0`` off range.

    Closed-form projection formulas index binomials with differences that can
    leave ``0 <= k <= n``; those terms carry zero mass.
    """
    if k < 0 or k > n:
        return one_like(q) * 0
    return q_binomial(n, k, q)


def q_pochhammer(x: Scalar, t: Scalar, n: int) -> Scalar:
    """Finite product ``(x; t)_n = prod_{i=0}^{n-1} (1 - x t^i)``."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    mode = common_mode(x, t)
    one = 1.0 if mode == FLOAT else Fraction(1)
    result = one
    t_pow = one
    for _ in range(n):
        result *= one - x * t_pow
        t_pow *= t
    return result
