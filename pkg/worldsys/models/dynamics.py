"""
Dynamical systems: compact economic-demographic model, Kremer systems,
logistic and coalition baselines
"""
import math
from typing import Callable, Dict, Optional, Tuple

import numpy as np
import logging

from worldsys.models.integrators import IntegrationResult, integrate
from worldsys.schemas.simulation import (
    CoalitionParams,
    CompactModelParams,
    Integrator,
    KremerParams,
    LogisticParams,
    SimulationTrace,
)
from worldsys.utils.responses import (
    BlowUpError,
    InputValidationError,
    NegativeSurplusError,
    PositivityError,
    error_response,
)

logger = logging.getLogger(__name__)

NEGATIVE_SURPLUS = "negative surplus"
NON_POSITIVE = "non-positive state"

Span = Tuple[float, float]


def gdp_from_surplus(N: np.ndarray, S: np.ndarray, m: float) -> np.ndarray:
    """G (billions) from N (millions) and S (dollars): (m*N + S*N)/1000"""
    return (m * N + S * N) / 1000.0


def _finish(
    model: str,
    result: IntegrationResult,
    integrator: Integrator,
    columns: Dict[str, np.ndarray],
    metadata: Dict,
) -> SimulationTrace:
    """Wrap integration output; raise with the partial trace if it stopped early"""
    trace = SimulationTrace(
        model=model,
        integrator=integrator,
        step=result.step,
        years=tuple(result.times.tolist()),
        **{name: tuple(np.asarray(values).tolist()) for name, values in columns.items()},
        metadata=metadata,
        aborted=result.aborted,
        abort_reason=result.abort_reason,
        abort_year=result.abort_year,
    )
    if not result.aborted:
        logger.info(f"{model}: {len(trace)} rows, final N={trace.N[-1]:.6g}")
        return trace

    year = float(result.abort_year)
    message = f"{model} run aborted at year {year:g}: {result.abort_reason}"
    logger.warning(message)
    if result.abort_reason == NEGATIVE_SURPLUS:
        raise NegativeSurplusError(message, year=year, trace=trace)
    if result.abort_reason == NON_POSITIVE:
        raise PositivityError(message, year=year, trace=trace)
    raise BlowUpError(message, year=year, trace=trace)


def _positive_state(t: float, y: np.ndarray) -> Optional[str]:
    return NON_POSITIVE if np.any(y <= 0) else None


def _check_span(t_span: Span) -> Span:
    t_start, t_end = (float(v) for v in t_span)
    if not t_end > t_start:
        raise error_response(
            f"t_end ({t_end}) must be after t_start ({t_start})",
            InputValidationError,
            details={"t_start": t_start, "t_end": t_end}
        )
    return t_start, t_end


# Compact model

def compact_increments(p: CompactModelParams, N: float, S: float) -> Tuple[float, float]:
    """Annual (dN, dS); both share the factor a*N*S"""
    growth = p.a * N * S
    return growth, p.b_ratio * growth


def simulate_compact(
    p: CompactModelParams,
    integrator: Integrator = Integrator.EULER_ANNUAL,
    step: Optional[float] = None,
    stride: Optional[float] = None,
) -> SimulationTrace:
    """Run dN/dt = aSN, dS/dt = b*N*S from (N0, S0) at t_start.

    Euler mode updates N and S together from the same step-start values.
    Both integrators default to a one-year step here.
    """
    integrator = Integrator(integrator)

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        return np.array(compact_increments(p, y[0], y[1]))

    result = integrate(rhs, [p.N0, p.S0], p.t_start, p.t_end,
                       integrator=integrator, step=1.0 if step is None else step,
                       stride=stride, check=_positive_state)
    N, S = result.states[:, 0], result.states[:, 1]
    return _finish(
        "compact", result, integrator,
        {"N": N, "S": S, "G": gdp_from_surplus(N, S, p.m)},
        {"params": p.model_dump()},
    )


# Kremer systems

def surplus_of(p: KremerParams, N, T):
    """S = r_tech*T*N^(alpha-1) - m"""
    return p.r_tech * T * np.power(N, p.alpha - 1.0) - p.m


def equilibrium_population(T: float, g_bar: float, alpha: float, r_tech: float = 1.0) -> float:
    """Population at which per capita output equals g_bar"""
    if alpha == 1:
        raise error_response("alpha = 1 leaves equilibrium population undefined",
                             InputValidationError, details={"field": "alpha"})
    if T <= 0 or g_bar <= 0:
        raise error_response("T and g_bar must be positive", InputValidationError,
                             details={"T": T, "g_bar": g_bar})
    with np.errstate(over="ignore"):
        return float(np.power(np.float64(g_bar) / (r_tech * T), 1.0 / (alpha - 1.0)))


def balanced_technology(p: KremerParams) -> float:
    """T that puts N0 on the equilibrium for g_bar"""
    if p.g_bar is None:
        raise error_response("g_bar is required", InputValidationError,
                             details={"field": "g_bar"})
    return p.g_bar * p.N0 ** (1.0 - p.alpha) / p.r_tech


def _surplus_check(p: KremerParams, T_of: Callable[[float, np.ndarray], float]):
    def check(t: float, y: np.ndarray) -> Optional[str]:
        if y[0] <= 0:
            return NON_POSITIVE
        if surplus_of(p, y[0], T_of(t, y)) <= 0:
            return NEGATIVE_SURPLUS
        return None
    return check


def _require_initial_surplus(p: KremerParams, year: float) -> None:
    s0 = surplus_of(p, p.N0, p.T0)
    if s0 <= 0:
        raise NegativeSurplusError(
            f"initial surplus {s0:.6g} is not positive", year=year
        )


def simulate_kuznetsian(
    p: KremerParams,
    t_span: Span,
    integrator: Integrator = Integrator.RK4,
    step: Optional[float] = None,
    stride: Optional[float] = None,
    instantaneous: bool = False,
) -> SimulationTrace:
    """dN/dt = aSN with Kuznetsian technology dT/dt = b*N*T.

    With ``instantaneous`` the population is pinned to its technological
    equilibrium for ``g_bar`` at every step, so only T is integrated and
    S stays at g_bar - m.
    """
    integrator = Integrator(integrator)
    t_start, t_end = _check_span(t_span)
    b = p.tech_coef
    meta = {"params": p.model_dump(), "instantaneous": instantaneous}

    if instantaneous:
        if p.g_bar is None:
            raise error_response("instantaneous adjustment needs g_bar",
                                 InputValidationError, details={"field": "g_bar"})
        if p.g_bar <= p.m:
            raise NegativeSurplusError(
                f"g_bar {p.g_bar} leaves no surplus above m={p.m}", year=t_start
            )

        def pinned(T):
            return np.power(p.r_tech * T / p.g_bar, 1.0 / (1.0 - p.alpha))

        def rhs_t(t: float, y: np.ndarray) -> np.ndarray:
            return b * pinned(y[0]) * y

        result = integrate(rhs_t, [p.T0], t_start, t_end, integrator=integrator,
                           step=step, stride=stride, check=_positive_state)
        T = result.states[:, 0]
        N = pinned(T)
        S = np.full_like(N, p.g_bar - p.m)
        return _finish("kuznetsian", result, integrator,
                       {"N": N, "S": S, "G": gdp_from_surplus(N, S, p.m), "T": T}, meta)

    _require_initial_surplus(p, t_start)

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        N, T = y
        return np.array([p.a * surplus_of(p, N, T) * N, b * N * T])

    result = integrate(rhs, [p.N0, p.T0], t_start, t_end, integrator=integrator,
                       step=step, stride=stride,
                       check=_surplus_check(p, lambda t, y: y[1]))
    N, T = result.states[:, 0], result.states[:, 1]
    S = surplus_of(p, N, T)
    return _finish("kuznetsian", result, integrator,
                   {"N": N, "S": S, "G": gdp_from_surplus(N, S, p.m), "T": T}, meta)


def simulate_exponential_tech(
    p: KremerParams,
    t_span: Span,
    integrator: Integrator = Integrator.RK4,
    step: Optional[float] = None,
    stride: Optional[float] = None,
) -> SimulationTrace:
    """dN/dt = aSN with exogenous technology T = T0*exp(c*(t - t_start))"""
    integrator = Integrator(integrator)
    t_start, t_end = _check_span(t_span)
    c = p.tech_coef

    def tech(t: float):
        return p.T0 * np.exp(c * (t - t_start))

    _require_initial_surplus(p, t_start)

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        return p.a * surplus_of(p, y, tech(t)) * y

    result = integrate(rhs, [p.N0], t_start, t_end, integrator=integrator,
                       step=step, stride=stride,
                       check=_surplus_check(p, lambda t, y: tech(t)))
    N = result.states[:, 0]
    T = tech(result.times)
    S = surplus_of(p, N, T)
    return _finish("exptech", result, integrator,
                   {"N": N, "S": S, "G": gdp_from_surplus(N, S, p.m), "T": T},
                   {"params": p.model_dump(), "limiting_surplus": limiting_surplus(p)})


def limiting_surplus(p: KremerParams) -> float:
    """Long-run S of the exponential-technology system: c/((1-alpha)*a)"""
    return p.tech_coef / ((1.0 - p.alpha) * p.a)


def _bernoulli_rates(p: KremerParams) -> Tuple[float, float, float]:
    beta = (1.0 - p.alpha) * p.a * p.m
    lam = p.tech_coef + beta
    amplitude = (1.0 - p.alpha) * p.a * p.r_tech * p.T0 / lam
    return beta, lam, amplitude


def bernoulli_integration_constant(p: KremerParams) -> float:
    """Integration constant that makes the closed form pass through N0 at t=0"""
    _, _, amplitude = _bernoulli_rates(p)
    return p.N0 ** (1.0 - p.alpha) - amplitude


def bernoulli_closed_form(p: KremerParams, C_integration: float, t):
    """Analytic N(t) of the exponential-technology system, t in years since start.

    N^(1-alpha) = exp(-beta*t) * (C + amplitude*exp(lam*t)) with
    beta = (1-alpha)*a*m and lam = c + beta.
    """
    beta, lam, amplitude = _bernoulli_rates(p)
    t = np.asarray(t, dtype=float)
    bracket = C_integration + amplitude * np.exp(lam * t)
    if np.any(bracket <= 0):
        raise error_response(
            "Closed form bracket is not positive; integration constant inconsistent",
            InputValidationError,
            details={"C_integration": C_integration}
        )
    value = np.power(np.exp(-beta * t) * bracket, 1.0 / (1.0 - p.alpha))
    return float(value) if value.ndim == 0 else value


def bernoulli_surplus(p: KremerParams, C_integration: float, t):
    """Per capita surplus along the closed form"""
    N = bernoulli_closed_form(p, C_integration, t)
    return surplus_of(p, N, p.T0 * np.exp(p.tech_coef * np.asarray(t, dtype=float)))


# Baselines

def simulate_logistic(
    p: LogisticParams,
    integrator: Integrator = Integrator.RK4,
    step: Optional[float] = None,
    stride: Optional[float] = None,
) -> SimulationTrace:
    """dN/dt = a1*N - (a2*N + b*N^2); saturates at K = (a1 - a2)/b"""
    integrator = Integrator(integrator)

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        return p.a1 * y - (p.a2 * y + p.b * y * y)

    result = integrate(rhs, [p.N0], p.t_start, p.t_end, integrator=integrator,
                       step=step, stride=stride, check=_positive_state)
    return _finish("logistic", result, integrator, {"N": result.states[:, 0]},
                   {"params": p.model_dump(), "r": p.r, "K": p.K})


def logistic_closed_form(p: LogisticParams, t):
    """Analytic logistic N at t years after t_start"""
    t = np.asarray(t, dtype=float)
    if p.r == 0:
        value = p.N0 / (1.0 + p.b * p.N0 * t)
    else:
        value = p.K / (1.0 + (p.K / p.N0 - 1.0) * np.exp(-p.r * t))
    return float(value) if value.ndim == 0 else value


def coalition_rate(p: CoalitionParams, N: float) -> float:
    return p.a0 * N ** (1.0 / p.k) * N


def coalition_singularity_year(a0: float, k: float, N0: float, t_start: float) -> float:
    """Finite time at which dN/dt = a0*N^(1+1/k) diverges"""
    return t_start + k / (a0 * N0 ** (1.0 / k))


def simulate_coalition(
    p: CoalitionParams,
    integrator: Integrator = Integrator.RK4,
    step: Optional[float] = None,
    stride: Optional[float] = None,
) -> SimulationTrace:
    """dN/dt = a0*N^(1/k)*N; raises BlowUpError near the singularity"""
    integrator = Integrator(integrator)

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        return p.a0 * np.power(y, 1.0 / p.k) * y

    singularity = coalition_singularity_year(p.a0, p.k, p.N0, p.t_start)
    result = integrate(rhs, [p.N0], p.t_start, p.t_end, integrator=integrator,
                       step=step, stride=stride, check=_positive_state)
    return _finish("coalition", result, integrator, {"N": result.states[:, 0]},
                   {"params": p.model_dump(),
                    "singularity_year": singularity if math.isfinite(singularity) else None})
