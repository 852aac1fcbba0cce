"""
Correlation and regression statistics for the growth-rate and surplus tests
"""
import math
from typing import Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import Polynomial
from scipy import special
from scipy import stats as sps
import logging

from worldsys.data.loader import (
    BENCHMARK_YEARS,
    derive_growth_rates,
    derive_surplus_series,
    subset_dataset,
)
from worldsys.schemas.regression import CorrelationResult, PolyFitResult, RegressionResult
from worldsys.schemas.series import MacroDataset
from worldsys.utils.responses import (
    DegenerateDataError,
    InputValidationError,
    error_response,
)

logger = logging.getLogger(__name__)

CONDITION_LIMIT = 1e12


def _pair(x: Sequence[float], y: Sequence[float], minimum: int) -> Tuple[np.ndarray, np.ndarray]:
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    if xa.shape != ya.shape or xa.ndim != 1:
        raise error_response("x and y must be paired 1-D series", InputValidationError,
                             details={"x": list(xa.shape), "y": list(ya.shape)})
    if xa.size < minimum:
        raise error_response(f"Need at least {minimum} pairs, got {xa.size}",
                             InputValidationError, details={"n": int(xa.size)})
    return xa, ya


def p_value(t_stat: float, dof: int) -> float:
    """Two-tailed Student t probability via the regularized incomplete beta"""
    if dof < 1:
        raise error_response(f"dof must be at least 1, got {dof}", InputValidationError,
                             details={"dof": dof})
    if math.isinf(t_stat):
        return 0.0
    return float(special.betainc(0.5 * dof, 0.5, dof / (dof + t_stat * t_stat)))


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    xa, ya = _pair(x, y, 3)
    xc = xa - xa.mean()
    yc = ya - ya.mean()
    sxx = float(np.dot(xc, xc))
    syy = float(np.dot(yc, yc))
    if sxx == 0.0 or syy == 0.0:
        raise error_response("Correlation undefined for a constant series", DegenerateDataError)
    r = float(np.dot(xc, yc)) / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


def correlation_test(x: Sequence[float], y: Sequence[float], label: str = "") -> CorrelationResult:
    """Pearson r with its two-tailed p on n - 2 degrees of freedom"""
    r = pearson(x, y)
    n = len(x)
    dof = n - 2
    t = math.inf if abs(r) == 1.0 else r * math.sqrt(dof / (1.0 - r * r))
    return CorrelationResult(label=label, r=r, p=p_value(t, dof), n=n, dof=dof)


def _t_and_p(estimate: float, se: float, dof: int) -> Tuple[float, float]:
    if se > 0:
        t = estimate / se
    else:
        t = 0.0 if estimate == 0 else math.copysign(math.inf, estimate)
    return t, p_value(t, dof)


def ols(x: Sequence[float], y: Sequence[float], through_origin: bool = False,
        label: str = "") -> RegressionResult:
    """Simple least squares of y on x.

    Through the origin the slope is sum(xy)/sum(x^2) and R^2 is uncentered,
    1 - SSE/sum(y^2), as statistical packages report it for models without
    a constant.
    """
    xa, ya = _pair(x, y, 3)
    n = int(xa.size)
    if through_origin:
        sxx = float(np.dot(xa, xa))
        if sxx == 0.0:
            raise error_response("Degenerate design: every x is zero", DegenerateDataError)
        slope = float(np.dot(xa, ya)) / sxx
        resid = ya - slope * xa
        sse = float(np.dot(resid, resid))
        dof = n - 1
        slope_se = math.sqrt(sse / dof / sxx)
        syy = float(np.dot(ya, ya))
        r2 = 1.0 - sse / syy if syy > 0 else 1.0
        t_slope, p_slope = _t_and_p(slope, slope_se, dof)
        return RegressionResult(
            label=label, mode="through_origin", slope=slope, slope_se=slope_se,
            t_slope=t_slope, p_slope=p_slope,
            r=math.copysign(math.sqrt(max(r2, 0.0)), slope), r2=r2, n=n, dof=dof,
        )

    x_mean, y_mean = xa.mean(), ya.mean()
    xc = xa - x_mean
    sxx = float(np.dot(xc, xc))
    if sxx == 0.0:
        raise error_response("Degenerate design: all x values are equal", DegenerateDataError)
    slope = float(np.dot(xc, ya - y_mean)) / sxx
    intercept = float(y_mean - slope * x_mean)
    resid = ya - intercept - slope * xa
    sse = float(np.dot(resid, resid))
    dof = n - 2
    s2 = sse / dof
    slope_se = math.sqrt(s2 / sxx)
    intercept_se = math.sqrt(s2 * (1.0 / n + x_mean * x_mean / sxx))
    yc = ya - y_mean
    syy = float(np.dot(yc, yc))
    r = float(np.dot(xc, yc)) / math.sqrt(sxx * syy) if syy > 0 else 0.0
    r2 = 1.0 - sse / syy if syy > 0 else 0.0
    t_slope, p_slope = _t_and_p(slope, slope_se, dof)
    t_intercept, p_intercept = _t_and_p(intercept, intercept_se, dof)
    return RegressionResult(
        label=label, mode="with_intercept", slope=slope, intercept=intercept,
        slope_se=slope_se, intercept_se=intercept_se,
        t_slope=t_slope, t_intercept=t_intercept,
        p_slope=p_slope, p_intercept=p_intercept,
        r=max(-1.0, min(1.0, r)), r2=r2, n=n, dof=dof,
    )


def poly_fit(x: Sequence[float], y: Sequence[float], degree: int = 2,
             label: str = "") -> PolyFitResult:
    """Polynomial least squares via normal equations on standardized x"""
    if degree not in (1, 2):
        raise error_response(f"degree must be 1 or 2, got {degree}", InputValidationError,
                             details={"field": "degree"})
    xa, ya = _pair(x, y, degree + 2)
    n = int(xa.size)
    mu, sigma = float(xa.mean()), float(xa.std())
    if sigma == 0.0:
        raise error_response("Ill-conditioned design: all x values are equal", DegenerateDataError)
    z = (xa - mu) / sigma
    design = np.vander(z, degree + 1, increasing=True)
    normal = design.T @ design
    if np.linalg.cond(normal) > CONDITION_LIMIT:
        raise error_response("Ill-conditioned normal matrix; duplicate x values?",
                             DegenerateDataError, details={"cond": float(np.linalg.cond(normal))})
    coef_z = np.linalg.solve(normal, design.T @ ya)
    in_x = Polynomial(coef_z)(Polynomial([-mu / sigma, 1.0 / sigma]))
    coefficients = np.zeros(degree + 1)
    coefficients[:len(in_x.coef)] = in_x.coef

    resid = ya - design @ coef_z
    sse = float(np.dot(resid, resid))
    yc = ya - ya.mean()
    sst = float(np.dot(yc, yc))
    if sst == 0.0:
        raise error_response("Response has zero variance", DegenerateDataError)
    dof_resid = n - degree - 1
    if sse == 0.0:
        f_stat, p = math.inf, 0.0
    else:
        f_stat = ((sst - sse) / degree) / (sse / dof_resid)
        p = float(sps.f.sf(f_stat, degree, dof_resid))
    return PolyFitResult(
        label=label, degree=degree, coefficients=tuple(coefficients.tolist()),
        r2=1.0 - sse / sst, sse=sse, sst=sst, n=n, f_stat=f_stat, p_value=p,
    )


def surplus_population_proportionality(
    d: MacroDataset,
    year_range: Tuple[float, float],
    through_origin: bool = False,
) -> RegressionResult:
    """Regress per capita surplus S on population N over an inclusive range"""
    part = subset_dataset(d, year_range=year_range)
    if len(part) < 4:
        raise error_response(
            f"Range {year_range} covers {len(part)} rows; at least 4 required",
            InputValidationError,
            details={"range": list(year_range), "rows": len(part)}
        )
    surplus = derive_surplus_series(part)
    label = f"S on N {year_range[0]:g}-{year_range[1]:g}"
    result = ols(part.population.value_array(), surplus.value_array(),
                 through_origin=through_origin, label=label)
    logger.info(f"{label}: slope={result.slope:.6g} R2={result.r2:.5f} n={result.n}")
    return result


def _benchmark_part(d: MacroDataset, start_year: float, end_year: float) -> MacroDataset:
    return subset_dataset(d, years=BENCHMARK_YEARS, year_range=(start_year, end_year))


def surplus_growth_correlation(
    d: MacroDataset,
    end_year: float = 1973,
    anchor: str = "start",
    mode: str = "simple",
    start_year: float = -math.inf,
) -> CorrelationResult:
    """Correlate relative population growth per interval with the surplus level.

    Intervals join consecutive benchmark years; each is paired with S at
    the same anchor used for the growth rate.
    """
    part = _benchmark_part(d, start_year, end_year)
    growth = derive_growth_rates(part.population, mode=mode, anchor=anchor)
    surplus = derive_growth_rates(derive_surplus_series(part), mode="simple", anchor=anchor)
    result = correlation_test(
        surplus.levels(), growth.rel_rates(),
        label=f"rel. population growth vs S to {end_year:g} ({anchor}, {mode})",
    )
    logger.info(f"{result.label}: r={result.r:.4f} p={result.p:.3g} n={result.n}")
    return result


def growth_rate_regression(
    d: MacroDataset,
    end_year: float = 1950,
    through_origin: bool = False,
    start_year: float = -math.inf,
) -> RegressionResult:
    """Regress interval dN/dt on interval dS/dt over benchmark intervals"""
    part = _benchmark_part(d, start_year, end_year)
    if len(part) < 4:
        raise error_response(
            f"Growth regression needs at least 4 benchmark years up to {end_year:g}, got {len(part)}",
            InputValidationError,
            details={"rows": len(part)}
        )
    dn = derive_growth_rates(part.population).abs_rates()
    ds = derive_growth_rates(derive_surplus_series(part)).abs_rates()
    mode = "through origin" if through_origin else "with constant"
    result = ols(ds, dn, through_origin=through_origin,
                 label=f"dN/dt on dS/dt to {end_year:g} ({mode})")
    logger.info(f"{result.label}: slope={result.slope:.4f} R2={result.r2:.4f}")
    return result


def curve_estimation(
    d: MacroDataset,
    benchmark_only: bool = True,
    end_year: Optional[float] = None,
) -> Tuple[PolyFitResult, PolyFitResult]:
    """Linear and quadratic fits of GDP on population"""
    upper = math.inf if end_year is None else end_year
    if benchmark_only:
        part = _benchmark_part(d, -math.inf, upper)
    else:
        part = subset_dataset(d, year_range=(-math.inf, upper))
    x = part.population.value_array()
    y = part.gdp.value_array()
    linear = poly_fit(x, y, 1, label="G on N linear")
    quadratic = poly_fit(x, y, 2, label="G on N quadratic")
    logger.info(f"G on N: linear R2={linear.r2:.4f} quadratic R2={quadratic.r2:.4f}")
    return linear, quadratic
