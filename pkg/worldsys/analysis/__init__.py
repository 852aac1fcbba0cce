"""
Fitting, regression statistics and calibration
"""
from worldsys.analysis.fitting import (
    FREE,
    solve_scale_given_t0,
    fit_trend,
    goodness_of_fit,
    fit_statistics,
)
from worldsys.analysis.stats import (
    p_value,
    pearson,
    correlation_test,
    ols,
    poly_fit,
    surplus_population_proportionality,
    surplus_growth_correlation,
    growth_rate_regression,
    curve_estimation,
)
from worldsys.analysis.calibration import calibrate_compact, compare_trace

__all__ = [
    "FREE",
    "solve_scale_given_t0",
    "fit_trend",
    "goodness_of_fit",
    "fit_statistics",
    "p_value",
    "pearson",
    "correlation_test",
    "ols",
    "poly_fit",
    "surplus_population_proportionality",
    "surplus_growth_correlation",
    "growth_rate_regression",
    "curve_estimation",
    "calibrate_compact",
    "compare_trace",
]
