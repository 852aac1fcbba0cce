"""
Least-squares fitting of blow-up trends C / (t0 - t)^k
"""
import math
from typing import Optional, Tuple, Union

import numpy as np
from scipy.optimize import minimize_scalar
import logging

from worldsys.models.trend import eval_trend
from worldsys.schemas.fit import Convention, Objective, TrendFit, TrendParams
from worldsys.schemas.series import YearValueSeries
from worldsys.utils.responses import (
    DegenerateDataError,
    InputValidationError,
    SearchFailureError,
    TrendDomainError,
    error_response,
)

logger = logging.getLogger(__name__)

FREE = "free"
DEFAULT_HORIZON = 200
K_BOUNDS = (0.1, 4.0)
K_GRID = np.round(np.arange(K_BOUNDS[0], K_BOUNDS[1] + 1e-9, 0.1), 10)
T0_TOLERANCE = 1e-5
K_TOLERANCE = 1e-7

KSpec = Union[float, str, None]


def _basis(years: np.ndarray, t0: float, k: float) -> np.ndarray:
    return np.exp(-k * np.log(t0 - years))


def solve_scale_given_t0(
    s: YearValueSeries, t0: float, k: float, objective: Objective = Objective.SSE
) -> float:
    """Optimal C for fixed (t0, k): sum(v*u) / sum(u^2) with u = (t0 - t)^-k.

    Under ``log_sse`` the optimum is exp(mean(ln v - ln u)).
    """
    years = s.year_array()
    if t0 <= years.max():
        raise error_response(
            f"t0 ({t0}) must lie after the last observation ({years.max():g})",
            TrendDomainError,
            details={"t0": t0}
        )
    if not k > 0:
        raise error_response(f"k must be positive, got {k}", InputValidationError,
                             details={"field": "k"})
    u = _basis(years, t0, k)
    values = s.value_array()
    if Objective(objective) is Objective.LOG_SSE:
        return float(np.exp(np.mean(np.log(values) - np.log(u))))
    denom = float(np.dot(u, u))
    if denom == 0.0:
        raise error_response("All basis values vanish", DegenerateDataError)
    return float(np.dot(values, u) / denom)


def _objective_grid(years, values, t0s, ks, objective: Objective) -> np.ndarray:
    """Objective value over a (t0, k) grid, C solved in closed form per cell"""
    logs = np.log(t0s[:, None] - years[None, :])            # (T, n)
    u = np.exp(-ks[None, :, None] * logs[:, None, :])        # (T, K, n)
    if objective is Objective.LOG_SSE:
        target = np.log(values)
        log_c = np.mean(target[None, None, :] + ks[None, :, None] * logs[:, None, :], axis=2)
        resid = target[None, None, :] - (log_c[:, :, None] - ks[None, :, None] * logs[:, None, :])
    else:
        with np.errstate(over="ignore", invalid="ignore"):
            c = np.sum(values * u, axis=2) / np.sum(u * u, axis=2)
            resid = values[None, None, :] - c[:, :, None] * u
    with np.errstate(over="ignore", invalid="ignore"):
        sse = np.sum(resid * resid, axis=2)
    return np.where(np.isfinite(sse), sse, np.inf)


def _objective_at(s: YearValueSeries, t0: float, k: float, objective: Objective) -> float:
    grid = _objective_grid(s.year_array(), s.value_array(),
                           np.array([t0], dtype=float), np.array([k], dtype=float), objective)
    return float(grid[0, 0])


def _best_k(s: YearValueSeries, t0: float, objective: Objective, k_start: float) -> Tuple[float, float]:
    """Refine k at fixed t0; never worse than the grid value ``k_start``"""
    best = (k_start, _objective_at(s, t0, k_start, objective))
    res = minimize_scalar(lambda k: _objective_at(s, t0, k, objective),
                          bounds=K_BOUNDS, method="bounded",
                          options={"xatol": K_TOLERANCE})
    if res.success and res.fun < best[1]:
        best = (float(res.x), float(res.fun))
    return best


def goodness_of_fit(observed: YearValueSeries, predicted: YearValueSeries) -> Tuple[float, float, float, float]:
    """(r, r2, sse, sst) with r the Pearson correlation of paired values"""
    if observed.years != predicted.years:
        raise error_response("Observed and predicted years differ", InputValidationError)
    return fit_statistics(observed.value_array(), predicted.value_array())


def fit_statistics(obs: np.ndarray, pred: np.ndarray) -> Tuple[float, float, float, float]:
    obs_c = obs - obs.mean()
    sst = float(np.dot(obs_c, obs_c))
    if sst == 0.0:
        raise error_response("Observed series has zero variance", DegenerateDataError)
    resid = obs - pred
    sse = float(np.dot(resid, resid))
    pred_c = pred - pred.mean()
    spp = float(np.dot(pred_c, pred_c))
    r = float(np.dot(obs_c, pred_c) / math.sqrt(sst * spp)) if spp > 0 else 0.0
    return max(-1.0, min(1.0, r)), 1.0 - sse / sst, sse, sst


def fit_trend(
    s: YearValueSeries,
    k: KSpec = 1.0,
    convention: Convention = Convention.CONTINUOUS,
    horizon: int = DEFAULT_HORIZON,
    objective: Objective = Objective.SSE,
    series_id: Optional[str] = None,
) -> TrendFit:
    """Fit C/(t0 - t)^k by least squares.

    t0 is scanned over whole years after the last observation up to
    ``horizon`` years out, then refined continuously (or kept at the best
    whole year under ``integer_t0``). ``k="free"`` adds a nested search over
    k in [0.1, 4]. Ties go to the smallest t0, then the smallest k.
    """
    convention = Convention(convention)
    objective = Objective(objective)
    free = k is None or (isinstance(k, str) and k.lower() == FREE)
    if not free:
        k = float(k)
        if not k > 0:
            raise error_response(f"k must be positive, got {k}", InputValidationError,
                                 details={"field": "k"})
    if len(s) < 3:
        raise error_response(f"Trend fit needs at least 3 points, got {len(s)}",
                             InputValidationError, details={"points": len(s)})
    values = s.value_array()
    if np.any(values <= 0):
        raise error_response("Trend fit needs a positive series", InputValidationError)

    years = s.year_array()
    last = float(years.max())
    t0_grid = math.floor(last) + np.arange(1, horizon + 1, dtype=float)
    k_grid = K_GRID if free else np.array([k])
    surface = _objective_grid(years, values, t0_grid, k_grid, objective)
    if not np.isfinite(surface).any():
        raise error_response(
            f"Objective is not finite anywhere in the t0 bracket for {s.name!r}",
            SearchFailureError,
            details={"t0_range": [float(t0_grid[0]), float(t0_grid[-1])]}
        )
    i, j = np.unravel_index(int(np.argmin(surface)), surface.shape)
    t0, k_fit, best = float(t0_grid[i]), float(k_grid[j]), float(surface[i, j])
    warnings = []
    if i == len(t0_grid) - 1:
        warnings.append(f"t0 reached the search horizon ({horizon} years); data may not be blow-up shaped")
        logger.warning(f"{s.name}: {warnings[-1]}")

    if free:
        k_fit, best = _best_k(s, t0, objective, k_fit)

    if convention is Convention.CONTINUOUS:
        lo = max(t0 - 1.0, last + T0_TOLERANCE)
        hi = min(t0 + 1.0, float(t0_grid[-1]))
        if free:
            def profile(x):
                return _best_k(s, x, objective, k_fit)[1]
        else:
            def profile(x):
                return _objective_at(s, x, k_fit, objective)
        res = minimize_scalar(profile, bounds=(lo, hi), method="bounded",
                              options={"xatol": T0_TOLERANCE})
        if res.success and res.fun < best:
            t0 = float(res.x)
            if free:
                k_fit, best = _best_k(s, t0, objective, k_fit)
            else:
                best = float(res.fun)

    if free:
        # a fixed-k preset found elsewhere can still win; keep SSE(free) <= SSE(preset)
        for preset in (1.0, 2.0):
            alt = fit_trend(s, preset, convention, horizon, objective)
            alt_obj = _objective_at(s, alt.params.t0, preset, objective)
            if alt_obj < best:
                t0, k_fit, best = alt.params.t0, preset, alt_obj

    C = solve_scale_given_t0(s, t0, k_fit, objective)
    params = TrendParams(C=C, t0=t0, k=k_fit)
    fitted = eval_trend(params, years)
    r, r2, sse, sst = fit_statistics(values, fitted)
    fit = TrendFit(
        series_id=series_id or s.name,
        params=params,
        sse=sse,
        sst=sst,
        r=r,
        r2=r2,
        residuals=tuple((values - fitted).tolist()),
        convention=convention,
        k_mode=FREE if free else "fixed",
        objective=objective,
        warnings=tuple(warnings),
    )
    logger.info(
        f"Fit {fit.series_id} k={k_fit:.4g} ({fit.k_mode}, {convention.value}): "
        f"t0={t0:.4f} C={C:.6g} R2={r2:.5f}"
    )
    return fit
