"""
Fixed-step explicit integrators with overflow guard and storage stride
"""
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
import logging

from worldsys.schemas.simulation import Integrator
from worldsys.utils.responses import InputValidationError, error_response

logger = logging.getLogger(__name__)

OVERFLOW_GUARD = 1e12

Rhs = Callable[[float, np.ndarray], np.ndarray]
StateCheck = Callable[[float, np.ndarray], Optional[str]]


@dataclass
class IntegrationResult:
    times: np.ndarray
    states: np.ndarray
    step: float
    abort_reason: Optional[str] = None
    abort_year: Optional[float] = None

    @property
    def aborted(self) -> bool:
        return self.abort_reason is not None

    @property
    def final_state(self) -> np.ndarray:
        return self.states[-1]


def euler_step(rhs: Rhs, t: float, y: np.ndarray, h: float) -> np.ndarray:
    """Every component's increment uses the step-start state"""
    return y + h * rhs(t, y)


def rk4_step(rhs: Rhs, t: float, y: np.ndarray, h: float) -> np.ndarray:
    k1 = rhs(t, y)
    k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1)
    k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2)
    k4 = rhs(t + h, y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


STEPPERS = {
    Integrator.EULER_ANNUAL: euler_step,
    Integrator.RK4: rk4_step,
}


def _steps_per_store(step: float, stride: float) -> int:
    ratio = stride / step
    every = int(round(ratio))
    if every < 1 or abs(every - ratio) > 1e-9 * max(1.0, ratio):
        raise error_response(
            f"Storage stride {stride} is not a whole multiple of step {step}",
            InputValidationError,
            details={"stride": stride, "step": step}
        )
    return every


def integrate(
    rhs: Rhs,
    y0,
    t_start: float,
    t_end: float,
    integrator: Integrator = Integrator.RK4,
    step: Optional[float] = None,
    stride: Optional[float] = None,
    guard: float = OVERFLOW_GUARD,
    check: Optional[StateCheck] = None,
) -> IntegrationResult:
    """Integrate y' = rhs(t, y) from t_start to t_end.

    Stops early (without raising) when the state leaves ``guard`` or turns
    non-finite, or when ``check`` returns a reason; the caller decides how
    to report it. Stored rows are every ``stride`` years (default: about one a year)
    plus the last one.
    """
    integrator = Integrator(integrator)
    if not t_end > t_start:
        raise error_response(
            f"t_end ({t_end}) must be after t_start ({t_start})",
            InputValidationError,
            details={"t_start": t_start, "t_end": t_end}
        )
    h = float(step) if step is not None else integrator.default_step
    if not h > 0:
        raise error_response(f"Step must be positive, got {h}", InputValidationError,
                             details={"field": "step"})
    if stride is None:
        every = max(1, int(round(1.0 / h)))
    else:
        every = _steps_per_store(h, float(stride))
    advance = STEPPERS[integrator]

    n_steps = int(math.ceil((t_end - t_start) / h - 1e-9))
    y = np.atleast_1d(np.asarray(y0, dtype=float)).copy()
    times = [t_start]
    states = [y.copy()]
    reason = None
    t = t_start

    for i in range(n_steps):
        t_next = min(t_start + (i + 1) * h, t_end)
        y_next = advance(rhs, t, y, t_next - t)
        if not np.all(np.isfinite(y_next)) or np.any(np.abs(y_next) > guard):
            reason = "blow-up"
        elif check is not None:
            reason = check(t_next, y_next)
        if reason is not None:
            # the offending step is dropped; the trace ends on the last valid state
            if times[-1] != t:
                times.append(t)
                states.append(y.copy())
            logger.info(f"{integrator.value} run stopped after t={t:g}: {reason}")
            break
        y, t = y_next, t_next
        if (i + 1) % every == 0 or i + 1 == n_steps:
            times.append(t)
            states.append(y.copy())

    return IntegrationResult(
        times=np.asarray(times),
        states=np.vstack(states),
        step=h,
        abort_reason=reason,
        abort_year=t if reason is not None else None,
    )
