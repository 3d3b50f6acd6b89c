import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qexchange import (
    ModeMismatchError,
    Word,
    block_word,
    check_q,
    coinversions,
    common_mode,
    enumerate_level,
    inversions,
    q_binomial,
    q_binomial_or_zero,
    q_factorial,
    q_int,
    q_pochhammer,
    scalar_mode,
    swap_adjacent,
)
from oracles import brute_level_sum, pair_statistics

HALF = Fraction(1, 2)
QS = (Fraction(1, 2), Fraction(1, 3), Fraction(2, 3))

bit_lists = st.lists(st.integers(0, 1), max_size=16)


# ---------------------------------------------------------------------------
# scalars and modes
# ---------------------------------------------------------------------------

def test_check_q_accepts_open_interval():
    assert check_q(HALF) == HALF
    assert check_q(0.25) == 0.25


@pytest.mark.parametrize("bad", [Fraction(0), Fraction(1), Fraction(3, 2), 0.0, 1.0, -0.5])
def test_check_q_rejects_endpoints_and_outside(bad):
    with pytest.raises(ValueError):
        check_q(bad)


def test_check_q_rejects_non_scalars():
    with pytest.raises(TypeError):
        check_q("1/2")


def test_scalar_modes():
    assert scalar_mode(HALF) == "exact"
    assert scalar_mode(3) == "exact"
    assert scalar_mode(0.5) == "float"
    assert common_mode(HALF, 2) == "exact"
    assert common_mode(0.5, 1) == "float"
    assert common_mode(1, 2) == "exact"


def test_mixed_modes_rejected():
    with pytest.raises(ModeMismatchError):
        common_mode(HALF, 0.5)
    with pytest.raises(ModeMismatchError):
        q_pochhammer(HALF, 0.5, 3)


# ---------------------------------------------------------------------------
# words
# ---------------------------------------------------------------------------

def test_word_packing_convention():
    # little endian: bit i holds sequence position i + 1
    assert Word.from_bits((1, 0)).packed == 1
    assert Word.from_bits((0, 1)).packed == 2
    assert str(Word.from_bits((1, 0, 1))) == "101"


@given(bit_lists)
def test_word_bits_round_trip(bits):
    w = Word.from_bits(bits)
    assert w.bits == tuple(bits)
    assert w.ones + w.zeros == w.length == len(bits)


def test_word_validation():
    with pytest.raises(ValueError):
        Word(4, 2)
    with pytest.raises(ValueError):
        Word(0, 64)
    with pytest.raises(ValueError):
        Word.from_bits((0, 2))


def test_block_word():
    assert str(block_word(5, 2)) == "11000"
    assert block_word(0, 0) == Word(0, 0)
    with pytest.raises(ValueError):
        block_word(2, 3)


def test_inversions_examples():
    assert inversions(Word.from_bits((1, 0))) == 1
    assert inversions(Word.from_bits((0, 1, 0, 1))) == 1
    assert coinversions(Word.from_bits((0, 1))) == 1
    assert coinversions(Word.from_bits((0, 1, 0, 1))) == 3


@pytest.mark.parametrize("n,k", [(1, 0), (4, 2), (7, 3), (10, 10), (12, 5)])
def test_block_word_statistics(n, k):
    s = block_word(n, k)
    assert inversions(s) == k * (n - k)
    assert coinversions(s) == 0


@given(bit_lists)
def test_statistics_against_pair_enumeration(bits):
    w = Word.from_bits(bits)
    inv, coinv = pair_statistics(w.bits)
    assert inversions(w) == inv
    assert coinversions(w) == coinv
    assert inv + coinv == w.ones * w.zeros


def test_swap_adjacent():
    w = Word.from_bits((1, 0, 1))
    assert swap_adjacent(w, 1) == Word.from_bits((0, 1, 1))
    assert swap_adjacent(w, 2) == Word.from_bits((1, 1, 0))
    same = Word.from_bits((1, 1, 0))
    assert swap_adjacent(same, 1) == same
    with pytest.raises(ValueError):
        swap_adjacent(w, 3)
    with pytest.raises(ValueError):
        swap_adjacent(Word(0, 0), 1)


def test_enumerate_level_small():
    assert [str(w) for w in enumerate_level(2, 1)] == ["10", "01"]
    assert len(list(enumerate_level(4, 2))) == 6
    assert list(enumerate_level(0, 0)) == [Word(0, 0)]


def test_enumerate_level_counts_and_order():
    for n in range(13):
        for k in range(n + 1):
            packed = [w.packed for w in enumerate_level(n, k)]
            assert len(packed) == math.comb(n, k)
            assert packed == sorted(set(packed))
            assert all(Word(p, n).ones == k for p in packed)


def test_enumerate_level_large_n_streams():
    first = next(enumerate_level(63, 1))
    assert first.packed == 1 and first.length == 63


def test_enumerate_level_errors():
    with pytest.raises(ValueError):
        list(enumerate_level(64, 1))
    with pytest.raises(ValueError):
        list(enumerate_level(3, 4))


# ---------------------------------------------------------------------------
# q-functions
# ---------------------------------------------------------------------------

def test_q_int():
    assert q_int(0, HALF) == 0
    assert q_int(1, Fraction(2, 3)) == 1
    assert q_int(3, HALF) == Fraction(7, 4)
    assert q_int(3, HALF) == 1 + HALF + HALF**2


def test_q_factorial():
    assert q_factorial(0, HALF) == 1
    assert q_factorial(2, HALF) == Fraction(3, 2)
    assert q_factorial(3, HALF) == Fraction(21, 8)


def test_q_binomial_examples():
    for q in QS:
        assert q_binomial(5, 0, q) == 1
        assert q_binomial(2, 1, q) == 1 + q
    assert q_binomial(4, 2, HALF) == Fraction(35, 16)


def test_q_binomial_matches_enumeration():
    for q in QS:
        for n in range(11):
            for k in range(n + 1):
                qb = q_binomial(n, k, q)
                assert brute_level_sum(n, k, q, inversions) == qb
                assert brute_level_sum(n, k, q, coinversions) == qb


def test_q_binomial_symmetry_and_factorial_ratio():
    for q in QS:
        for n in range(11):
            for k in range(n + 1):
                qb = q_binomial(n, k, q)
                assert qb == q_binomial(n, n - k, q)
                assert qb == q_factorial(n, q) / (q_factorial(k, q) * q_factorial(n - k, q))


def test_q_binomial_errors_and_zero_convention():
    with pytest.raises(ValueError):
        q_binomial(2, 3, HALF)
    with pytest.raises(ValueError):
        q_binomial(2, -1, HALF)
    assert q_binomial_or_zero(2, 3, HALF) == 0
    assert q_binomial_or_zero(2, -1, HALF) == 0
    assert q_binomial_or_zero(2, 1, HALF) == q_binomial(2, 1, HALF)


def test_q_binomial_float_mode():
    assert q_binomial(4, 2, 0.5) == pytest.approx(35 / 16)


def test_q_pochhammer():
    assert q_pochhammer(Fraction(3, 7), Fraction(1, 5), 0) == 1
    assert q_pochhammer(1, Fraction(2), 4) == 0
    assert q_pochhammer(Fraction(1, 4), Fraction(2), 2) == Fraction(3, 8)
    with pytest.raises(ValueError):
        q_pochhammer(HALF, HALF, -1)


@given(st.integers(0, 12))
def test_q_pochhammer_recurrence(n):
    x, t = Fraction(1, 3), Fraction(2, 5)
    assert q_pochhammer(x, t, n + 1) == q_pochhammer(x, t, n) * (1 - x * t**n)
