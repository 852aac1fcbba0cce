"""
Closed-form blow-up trends C / (t0 - t)^k and their ODE form
"""
from typing import Optional, Union

import numpy as np

from worldsys.models.integrators import integrate
from worldsys.schemas.fit import TrendParams
from worldsys.schemas.simulation import Integrator
from worldsys.utils.responses import InputValidationError, TrendDomainError, error_response

ArrayLike = Union[float, np.ndarray]


def eval_trend(p: TrendParams, t: ArrayLike) -> ArrayLike:
    """C / (t0 - t)^k; a hard error at or past the singularity"""
    times = np.asarray(t, dtype=float)
    if np.any(times >= p.t0):
        raise error_response(
            f"Trend undefined at t >= t0 ({p.t0})",
            TrendDomainError,
            details={"t0": p.t0, "t_max": float(np.max(times))}
        )
    values = p.C / (p.t0 - times) ** p.k
    return float(values) if values.ndim == 0 else values


def trend_ode_rhs(p: TrendParams, N: float) -> float:
    """dN/dt of the trend expressed through N alone; N^2/C when k = 1"""
    if N < 0:
        raise error_response(f"Population must be non-negative, got {N}", TrendDomainError)
    if p.k == 1:
        return N * N / p.C
    return p.k * p.C ** (-1.0 / p.k) * N ** (1.0 + 1.0 / p.k)


def integrate_trend(
    p: TrendParams,
    t_start: float,
    t_end: float,
    integrator: Integrator = Integrator.RK4,
    step: Optional[float] = None,
) -> float:
    """Integrate the ODE form from the on-curve value at t_start; returns N(t_end)"""
    if t_end >= p.t0:
        raise error_response(
            f"Integration end {t_end} reaches the singularity {p.t0}",
            TrendDomainError,
            details={"t0": p.t0, "t_end": t_end}
        )
    n0 = eval_trend(p, t_start)
    result = integrate(
        lambda t, y: np.array([trend_ode_rhs(p, y[0])]),
        [n0], t_start, t_end,
        integrator=integrator, step=step,
        guard=np.inf,
    )
    return float(result.final_state[0])


def _check_ratio(ratio: float) -> None:
    if not ratio > 0:
        raise error_response(
            f"Surplus-to-population ratio must be positive, got {ratio}",
            InputValidationError,
            details={"field": "ratio", "value": ratio}
        )


def surplus_trend(p: TrendParams, ratio: float) -> TrendParams:
    """S = ratio*N along the population trend: ratio*C / (t0 - t)^k"""
    _check_ratio(ratio)
    return TrendParams(C=ratio * p.C, t0=p.t0, k=p.k)


def surplus_product_trend(p: TrendParams, ratio: float) -> TrendParams:
    """World surplus product S*N = ratio*N^2: ratio*C^2 / (t0 - t)^(2k)"""
    _check_ratio(ratio)
    return TrendParams(C=ratio * p.C ** 2, t0=p.t0, k=2.0 * p.k)
