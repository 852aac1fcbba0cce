"""
Trend curves, integrators and dynamical systems
"""
from worldsys.models.trend import (
    eval_trend,
    trend_ode_rhs,
    integrate_trend,
    surplus_trend,
    surplus_product_trend,
)
from worldsys.models.integrators import OVERFLOW_GUARD, integrate
from worldsys.models.dynamics import (
    simulate_compact,
    simulate_kuznetsian,
    simulate_exponential_tech,
    simulate_logistic,
    simulate_coalition,
    equilibrium_population,
    bernoulli_closed_form,
    bernoulli_integration_constant,
    limiting_surplus,
    logistic_closed_form,
    coalition_singularity_year,
)

__all__ = [
    "eval_trend",
    "trend_ode_rhs",
    "integrate_trend",
    "surplus_trend",
    "surplus_product_trend",
    "OVERFLOW_GUARD",
    "integrate",
    "simulate_compact",
    "simulate_kuznetsian",
    "simulate_exponential_tech",
    "simulate_logistic",
    "simulate_coalition",
    "equilibrium_population",
    "bernoulli_closed_form",
    "bernoulli_integration_constant",
    "limiting_surplus",
    "logistic_closed_form",
    "coalition_singularity_year",
]
