"""Exact q-exchangeable measures on binary words.

Construction and evaluation of q-exchangeable probability measures on
``{0,1}^n``, their extreme/mixture decomposition, closed-form leading
projections, total-variation distances, and certified verification that the
canonical q-Bernoulli mixture approximates every such measure at the optimal
rate ``q^n``.  Exact rational arithmetic is the default everywhere; float
mode exists for large sweeps.
"""

from .qcore import (
    EXACT,
    FLOAT,
    MAX_WORD_LENGTH,
    ModeMismatchError,
    Scalar,
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
from .measures import (
    MAX_DENSE_N,
    DenseMeasure,
    MeasureSampler,
    QExchMeasure,
    evaluate,
    extreme_measure,
    is_q_exchangeable,
    measure_from_json,
    measure_to_json,
    q_bernoulli,
    random_q_exch,
    sample,
    to_dense,
)
from .projection import (
    project,
    project_bernoulli_closed_form,
    project_extreme_closed_form,
    tv_distance,
)
from .definetti import (
    DistanceReport,
    MixingMeasure,
    approx_error,
    decompose,
    extreme_vs_bernoulli_distance,
    mixing_from_json,
    mixing_to_json,
    mixture,
)
from .bounds import (
    RateSweepConfig,
    RateViolationError,
    WORKERS_ENV_VAR,
    fit_log_slope,
    lower_constant,
    tech_lemma_lhs_rhs,
    upper_constant,
    verify_rate,
)

__version__ = "0.1.0"

__all__ = [
    "EXACT",
    "FLOAT",
    "MAX_DENSE_N",
    "MAX_WORD_LENGTH",
    "DenseMeasure",
    "DistanceReport",
    "MeasureSampler",
    "MixingMeasure",
    "ModeMismatchError",
    "QExchMeasure",
    "RateSweepConfig",
    "RateViolationError",
    "Scalar",
    "WORKERS_ENV_VAR",
    "Word",
    "approx_error",
    "block_word",
    "check_q",
    "coinversions",
    "common_mode",
    "decompose",
    "enumerate_level",
    "evaluate",
    "extreme_measure",
    "extreme_vs_bernoulli_distance",
    "fit_log_slope",
    "inversions",
    "is_q_exchangeable",
    "lower_constant",
    "measure_from_json",
    "measure_to_json",
    "mixing_from_json",
    "mixing_to_json",
    "mixture",
    "project",
    "project_bernoulli_closed_form",
    "project_extreme_closed_form",
    "q_bernoulli",
    "q_binomial",
    "q_binomial_or_zero",
    "q_factorial",
    "q_int",
    "q_pochhammer",
    "random_q_exch",
    "sample",
    "scalar_mode",
    "swap_adjacent",
    "tech_lemma_lhs_rhs",
    "to_dense",
    "tv_distance",
    "upper_constant",
    "verify_rate",
]
