"""
Compact-model calibration and trace-versus-data comparison
"""
from typing import Dict, Iterable, Optional, Tuple

import numpy as np
from scipy.optimize import minimize_scalar
import logging

from worldsys.analysis.fitting import fit_statistics
from worldsys.data.loader import BENCHMARK_YEARS, derive_surplus_series
from worldsys.models.integrators import OVERFLOW_GUARD
from worldsys.schemas.series import MacroDataset
from worldsys.schemas.simulation import (
    CompactCalibration,
    CompactModelParams,
    SimulationTrace,
)
from worldsys.utils.responses import (
    InputValidationError,
    SearchFailureError,
    error_response,
)

logger = logging.getLogger(__name__)

TARGETS = ("gdp", "population")
DEFAULT_A_BOUNDS = (5e-6, 1.5e-5)
DEFAULT_GRID_SIZE = 2001


def comparison_years(d: MacroDataset, years: Optional[Iterable[float]] = None) -> Tuple[float, ...]:
    """Dataset years to compare against; benchmark years by default"""
    wanted = BENCHMARK_YEARS if years is None else tuple(years)
    chosen = tuple(y for y in d.years if y in set(float(w) for w in wanted))
    if len(chosen) < 3:
        raise error_response(
            f"Only {len(chosen)} comparison years available; at least 3 required",
            InputValidationError,
            details={"years": list(chosen)}
        )
    return chosen


def compare_trace(
    trace: SimulationTrace,
    d: MacroDataset,
    years: Optional[Iterable[float]] = None,
) -> Dict[str, Dict[str, float]]:
    """Goodness of fit of simulated N and G at exact dataset years"""
    chosen = comparison_years(d, years)
    sampled = trace.sample(chosen)
    observed = {
        "population": np.array([d.population.value_at(y) for y in chosen]),
        "gdp": np.array([d.gdp.value_at(y) for y in chosen]),
    }
    columns = {"population": "N", "gdp": "G"}
    out = {}
    for name, column in columns.items():
        if column not in sampled:
            continue
        r, r2, sse, sst = fit_statistics(observed[name], sampled[column])
        out[name] = {"r": r, "r2": r2, "sse": sse, "sst": sst, "n": len(chosen)}
    return out


def _sweep(a_values: np.ndarray, base: CompactModelParams, years: Tuple[float, ...]) -> Dict[str, np.ndarray]:
    """Annual Euler runs for many coefficients at once; NaN after blow-up"""
    a = np.asarray(a_values, dtype=float)
    N = np.full(a.shape, base.N0)
    S = np.full(a.shape, base.S0)
    alive = np.ones(a.shape, dtype=bool)
    wanted = {y: i for i, y in enumerate(years)}
    out_N = np.full((len(years),) + a.shape, np.nan)
    out_S = np.full((len(years),) + a.shape, np.nan)
    t = base.t_start
    last = max(years)
    while True:
        if t in wanted:
            out_N[wanted[t]] = np.where(alive, N, np.nan)
            out_S[wanted[t]] = np.where(alive, S, np.nan)
        if t >= last:
            break
        with np.errstate(over="ignore", invalid="ignore"):
            growth = a * N * S
            N = N + growth
            S = S + base.b_ratio * growth
        alive &= np.isfinite(N) & np.isfinite(S) & (N < OVERFLOW_GUARD) & (S < OVERFLOW_GUARD)
        N = np.where(alive, N, base.N0)
        S = np.where(alive, S, base.S0)
        t += 1.0
    return {"N": out_N, "S": out_S, "G": (base.m * out_N + out_S * out_N) / 1000.0}


def calibrate_compact(
    d: MacroDataset,
    a_bounds: Tuple[float, float] = DEFAULT_A_BOUNDS,
    grid_size: int = DEFAULT_GRID_SIZE,
    target: str = "gdp",
    years: Optional[Iterable[float]] = None,
    b_ratio: float = 0.96,
) -> CompactCalibration:
    """Fit the compact model's coefficient a to the dataset.

    Initial N and S come from the first dataset row; the annual Euler run
    is scored by SSE of the target series at the comparison years. Runs
    that blow up before the last comparison year score infinity.
    """
    if target not in TARGETS:
        raise error_response(f"Unknown calibration target {target!r}", InputValidationError,
                             details={"allowed": list(TARGETS)})
    lo, hi = a_bounds
    if not 0 < lo < hi:
        raise error_response(f"Invalid a bounds {a_bounds}", InputValidationError,
                             details={"a_bounds": list(a_bounds)})
    chosen = comparison_years(d, years)
    if any(float(y) != float(int(y)) or y < d.years[0] for y in chosen):
        raise error_response("Comparison years must be whole years after the first row",
                             InputValidationError)
    surplus0 = derive_surplus_series(d).values[0]
    base = CompactModelParams(a=lo, b_ratio=b_ratio, m=d.m, N0=d.population.values[0],
                              S0=surplus0, t_start=d.years[0], t_end=max(chosen))
    observed = np.array([(d.gdp if target == "gdp" else d.population).value_at(y) for y in chosen])
    column = "G" if target == "gdp" else "N"

    def score(a_values: np.ndarray) -> np.ndarray:
        simulated = _sweep(a_values, base, chosen)[column]
        sse = np.sum((simulated - observed[:, None]) ** 2, axis=0)
        return np.where(np.isfinite(sse), sse, np.inf)

    grid = np.linspace(lo, hi, grid_size)
    scores = score(grid)
    if not np.isfinite(scores).any():
        raise error_response("Every coefficient in the bracket blows up", SearchFailureError,
                             details={"a_bounds": list(a_bounds)})
    i = int(np.argmin(scores))
    best_a, best_sse = float(grid[i]), float(scores[i])
    bracket = (float(grid[max(i - 1, 0)]), float(grid[min(i + 1, grid_size - 1)]))
    res = minimize_scalar(lambda x: float(score(np.array([x]))[0]), bounds=bracket,
                          method="bounded", options={"xatol": 1e-14})
    if res.success and res.fun < best_sse:
        best_a, best_sse = float(res.x), float(res.fun)

    run = _sweep(np.array([best_a]), base, chosen)
    stats = {}
    for name, col, series in (("gdp", "G", d.gdp), ("population", "N", d.population)):
        obs = np.array([series.value_at(y) for y in chosen])
        stats[name] = fit_statistics(obs, run[col][:, 0])[1]
    params = base.model_copy(update={"a": best_a})
    logger.info(
        f"Calibrated compact model: a={best_a:.6e} GDP R2={stats['gdp']:.5f} "
        f"population R2={stats['population']:.5f}"
    )
    return CompactCalibration(
        params=params, target=target, sse=best_sse,
        r2_gdp=stats["gdp"], r2_population=stats["population"],
        years=chosen, a_bounds=(lo, hi), grid_size=grid_size,
    )
