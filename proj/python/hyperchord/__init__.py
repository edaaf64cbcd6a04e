"""Chord-length and dot-product distributions on the N-sphere."""

from ._core import (
    ChordDistribution,
    ConvergenceError,
    DomainError,
    DotProductDistribution,
    SingularityError,
    UnsupportedDimensionError,
    ValidationError,
    empirical_cdf,
    estimate_dimension,
    gof_test,
    inv_reg_inc_beta,
    ks_statistic,
    log_beta,
    log_gamma,
    quantile_range,
    quantile_table,
    reg_inc_beta,
    reg_inc_beta_step,
    sample_chords,
    sample_dot_products,
    sample_sphere_points,
)

__all__ = [
    "ChordDistribution",
    "ConvergenceError",
    "DomainError",
    "DotProductDistribution",
    "SingularityError",
    "UnsupportedDimensionError",
    "ValidationError",
    "empirical_cdf",
    "estimate_dimension",
    "gof_test",
    "inv_reg_inc_beta",
    "ks_statistic",
    "log_beta",
    "log_gamma",
    "quantile_range",
    "quantile_table",
    "reg_inc_beta",
    "reg_inc_beta_step",
    "sample_chords",
    "sample_dot_products",
    "sample_sphere_points",
]
