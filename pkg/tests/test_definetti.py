from fractions import Fraction

import pytest

from qexchange import (
    DistanceReport,
    MixingMeasure,
    approx_error,
    decompose,
    extreme_measure,
    extreme_vs_bernoulli_distance,
    is_q_exchangeable,
    mixing_from_json,
    mixing_to_json,
    mixture,
    project,
    q_bernoulli,
    random_q_exch,
    to_dense,
    tv_distance,
)

HALF = Fraction(1, 2)
QS = (Fraction(1, 2), Fraction(1, 3), Fraction(2, 3))


# ---------------------------------------------------------------------------
# decompose
# ---------------------------------------------------------------------------

def test_decompose_extreme_is_point_mass():
    for n in range(6):
        for n1 in range(n + 1):
            mu = decompose(extreme_measure(n, n1, HALF))
            assert mu.alpha == tuple(Fraction(int(i == n1)) for i in range(n + 1))


def test_decompose_bernoulli_example():
    mu = decompose(q_bernoulli(2, 1, HALF))
    assert mu.alpha == (Fraction(1, 4), Fraction(3, 4), Fraction(0))


def test_decompose_total_mass():
    for seed in range(5):
        mu = decompose(random_q_exch(9, HALF, seed))
        assert sum(mu.alpha) == 1


def test_decompose_round_trip():
    for q in QS:
        for n in range(8):
            for seed in range(4):
                m = random_q_exch(n, q, seed)
                mu = decompose(m)
                extremes = [extreme_measure(n, i, q) for i in range(n + 1)]
                rebuilt = tuple(
                    sum(a * e.base[j] for a, e in zip(mu.alpha, extremes))
                    for j in range(n + 1)
                )
                assert rebuilt == m.base


# ---------------------------------------------------------------------------
# mixture
# ---------------------------------------------------------------------------

def test_mixture_of_delta_is_bernoulli():
    for n1 in range(4):
        point = tuple(int(i == n1) for i in range(4))
        mu = MixingMeasure(3, HALF, point)
        assert mixture(mu, 3) == q_bernoulli(3, n1, HALF)


def test_mixture_two_point_example():
    mu = MixingMeasure(1, HALF, (Fraction(1, 2), Fraction(1, 2)))
    m = mixture(mu, 1)
    assert m.base[0] == (1 + HALF) / 2


def test_mixture_output_is_q_exchangeable():
    for seed in range(3):
        mu = decompose(random_q_exch(6, HALF, seed))
        mixed = mixture(mu, 6)
        assert is_q_exchangeable(to_dense(mixed), HALF) == (True, None)


def test_mixture_on_larger_cube():
    mu = MixingMeasure(2, HALF, (Fraction(1, 3), Fraction(1, 3), Fraction(1, 3)))
    m = mixture(mu, 5)
    assert m.n == 5
    with pytest.raises(ValueError):
        mixture(mu, 1)


def test_mixing_measure_validation():
    with pytest.raises(ValueError, match="mass"):
        MixingMeasure(1, HALF, (Fraction(1, 2), Fraction(1, 4)))
    with pytest.raises(ValueError, match="nonnegative"):
        MixingMeasure(1, HALF, (Fraction(3, 2), Fraction(-1, 2)))


def test_mixing_json_round_trip():
    mu = decompose(random_q_exch(5, Fraction(1, 3), 8))
    assert mixing_from_json(mixing_to_json(mu)) == mu
    with pytest.raises(ValueError, match="malformed"):
        mixing_from_json("[]")


# ---------------------------------------------------------------------------
# the central distance
# ---------------------------------------------------------------------------

def test_distance_examples():
    assert extreme_vs_bernoulli_distance(2, 1, 1, HALF) == Fraction(1, 3)
    for q in QS:
        assert extreme_vs_bernoulli_distance(1, 1, 1, q) == 2 * q
        for n in range(5):
            for k in range(n + 1):
                assert extreme_vs_bernoulli_distance(n, 0, k, q) == 0


def test_distance_matches_tv_of_projections():
    for q in (HALF, Fraction(1, 3)):
        for n in range(9):
            for n1 in range(n + 1):
                e = extreme_measure(n, n1, q)
                nu = q_bernoulli(n, n1, q)
                for k in range(n + 1):
                    assert extreme_vs_bernoulli_distance(n, n1, k, q) == tv_distance(
                        project(e, k), project(nu, k)
                    )


def test_distance_preconditions():
    with pytest.raises(ValueError):
        extreme_vs_bernoulli_distance(3, 1, 4, HALF)
    with pytest.raises(ValueError):
        extreme_vs_bernoulli_distance(3, 4, 2, HALF)


# ---------------------------------------------------------------------------
# approx_error
# ---------------------------------------------------------------------------

def test_approx_error_of_extreme_equals_pair_distance():
    for n in range(7):
        for n1 in range(n + 1):
            e = extreme_measure(n, n1, HALF)
            for k in range(n + 1):
                assert approx_error(e, k) == extreme_vs_bernoulli_distance(n, n1, k, HALF)


def test_approx_error_vanishes_at_k_zero():
    for seed in range(5):
        m = random_q_exch(8, HALF, seed)
        assert approx_error(m, 0) == 0


def test_approx_error_triangle_bound():
    # convexity: the error is at most the alpha-weighted pairwise distances
    for q in (HALF, Fraction(2, 3)):
        for seed in range(4):
            m = random_q_exch(7, q, seed)
            mu = decompose(m)
            for k in range(8):
                bound = sum(
                    a * extreme_vs_bernoulli_distance(7, i, k, q)
                    for i, a in enumerate(mu.alpha)
                )
                assert approx_error(m, k) <= bound


def test_approx_error_preconditions():
    with pytest.raises(ValueError):
        approx_error(random_q_exch(3, HALF, 0), 4)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

def test_distance_report_fields():
    r = DistanceReport(n=2, k=1, n1=1, q=HALF, distance=Fraction(1, 3), upper=Fraction(1), lower=Fraction(1, 8))
    assert r.bounds_ok
    assert r.dist_over_qn == Fraction(4, 3)
    assert r.mode == "exact"
    bad = DistanceReport(n=2, k=1, n1=1, q=HALF, distance=Fraction(2), upper=Fraction(1))
    assert not bad.bounds_ok
    low = DistanceReport(n=2, k=1, n1=1, q=HALF, distance=Fraction(0), upper=Fraction(1), lower=Fraction(1, 8))
    assert not low.bounds_ok
