"""
`reproduce` command: every published fit, test and simulation in one run
"""
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import numpy as np
import pandas as pd
import logging

from worldsys import __version__
from worldsys.analysis.calibration import calibrate_compact, compare_trace
from worldsys.analysis.fitting import fit_statistics, fit_trend
from worldsys.analysis.stats import (
    curve_estimation,
    growth_rate_regression,
    surplus_growth_correlation,
    surplus_population_proportionality,
)
from worldsys.cli.common import data_path
from worldsys.data import settings
from worldsys.data.loader import benchmark_subset, derive_growth_rates, derive_surplus_series, load_dataset
from worldsys.models.dynamics import simulate_compact
from worldsys.models.trend import eval_trend, surplus_product_trend, surplus_trend
from worldsys.schemas.fit import Convention, TrendFit
from worldsys.schemas.report import PublishedCheck, ReportBundle, StepOutcome
from worldsys.schemas.series import MacroDataset
from worldsys.schemas.simulation import CompactModelParams
from worldsys.utils.figures import ChartSeries, export_png, render_chart
from worldsys.utils.file_handler import ensure_writable_dir, file_checksum, write_atomic, write_json
from worldsys.utils.responses import (
    EXIT_OK,
    EXIT_STEP_FAILED,
    BlowUpError,
    InputValidationError,
    WorldSysError,
)

logger = logging.getLogger(__name__)


def register(subparsers, common) -> None:
    parser = subparsers.add_parser("reproduce", parents=[common],
                                   help="run every fit, test and simulation and compare with published values")
    parser.add_argument("--extended", default=None,
                        help=f"dataset reaching 2002 (default: {settings.extended_dataset_path()})")
    parser.add_argument("--png", action="store_true", help="also rasterize figures (needs cairosvg)")
    parser.add_argument("--timestamp", action="store_true", help="record the run time in the report")
    parser.add_argument("--workers", type=int, default=settings.MAX_WORKERS)
    parser.set_defaults(func=cmd_reproduce)


@dataclass
class Context:
    dataset: MacroDataset
    extended: Optional[MacroDataset]
    out_dir: Path
    png: bool = False


@dataclass
class StepResult:
    checks: List[PublishedCheck] = field(default_factory=list)
    fits: List[Dict[str, Any]] = field(default_factory=list)
    regressions: List[Dict[str, Any]] = field(default_factory=list)
    curve_fits: List[Dict[str, Any]] = field(default_factory=list)
    traces: List[Dict[str, Any]] = field(default_factory=list)
    figures: List[str] = field(default_factory=list)
    artifacts: List[str] = field(default_factory=list)
    message: str = ""


# Checks

def check_range(name, statistic, value, lo, hi, published=None, text="", precision=4) -> PublishedCheck:
    lo_text = "-inf" if lo == -math.inf else f"{lo:g}"
    hi_text = "inf" if hi == math.inf else f"{hi:g}"
    return PublishedCheck(name=name, statistic=statistic, value=value, published=published,
                      published_text=text, criterion=f"in [{lo_text}, {hi_text}]",
                      passed=bool(lo <= value <= hi), precision=precision)


def check_at_least(name, statistic, value, threshold, published=None, text="", precision=4):
    check = check_range(name, statistic, value, threshold, math.inf, published, text, precision)
    return check.model_copy(update={"criterion": f">= {threshold:g}"})


def check_below(name, statistic, value, threshold, published=None, text="", precision=3):
    return PublishedCheck(name=name, statistic=statistic, value=value, published=published,
                      published_text=text, criterion=f"< {threshold:g}",
                      passed=bool(value < threshold), precision=precision)


def check_relative(name, statistic, value, target, fraction, text="", precision=2):
    return PublishedCheck(name=name, statistic=statistic, value=value, published=target,
                      published_text=text, criterion=f"within {fraction:.0%} of {target:g}",
                      passed=bool(abs(value - target) <= fraction * abs(target)), precision=precision)


def check_order_of_magnitude(name, statistic, value, published, text=""):
    ok = value > 0 and abs(math.log10(value) - math.log10(published)) <= 1.0
    return PublishedCheck(name=name, statistic=statistic, value=value, published=published,
                      published_text=text, criterion="same order of magnitude",
                      passed=bool(ok), precision=3)


# Figures

def _figure(ctx: Context, result: StepResult, name: str, **chart) -> None:
    path = render_chart(ctx.out_dir / f"{name}.svg", **chart)
    result.figures.append(path.name)
    if ctx.png:
        png = export_png(path)
        if png is not None:
            result.figures.append(png.name)


def _trend_figure(ctx: Context, result: StepResult, name: str, title: str,
                  fit: TrendFit, years: np.ndarray, observed: np.ndarray, units: str) -> None:
    grid = np.linspace(years[0], years[-1], 240)
    _figure(ctx, result, name, title=title, x_label="year", y_label=units, log_y=True,
            series=[ChartSeries("observed", years, observed),
                    ChartSeries(f"C/(t0 - t)^{fit.params.k:g}", grid,
                                eval_trend(fit.params, grid), kind="line")],
            note=f"R2 = {fit.r2:.4f}, t0 = {fit.params.t0:.2f}")


def _scatter_with_line(ctx, result, name, title, x, y, slope, intercept, x_label, y_label, note):
    x = np.asarray(x)
    grid = np.linspace(min(0.0, x.min()), x.max(), 50)
    _figure(ctx, result, name, title=title, x_label=x_label, y_label=y_label,
            series=[ChartSeries("observed", x, y),
                    ChartSeries("least squares", grid, intercept + slope * grid, kind="line")],
            note=note)


# Steps

def step_population_k1(ctx: Context) -> StepResult:
    result = StepResult()
    series = ctx.dataset.population
    fit = fit_trend(series, k=1, convention=Convention.INTEGER, series_id="population k=1")
    result.fits.append(fit.to_report())
    result.checks += [
        check_at_least("population k=1", "R2", fit.r2, 0.9985, 0.9991, "R2 = .9991"),
        check_range("population k=1", "t0", fit.params.t0, 2009, 2019, 2014, "t0 = 2014", 0),
        check_relative("population k=1", "C", fit.params.C, 163158.78, 0.05, "C = 163158.78"),
    ]
    _trend_figure(ctx, result, "trend_population_k1", "World population, simple hyperbola",
                  fit, series.year_array(), series.value_array(), "millions")
    return result


def step_gdp_k2(ctx: Context) -> StepResult:
    result = StepResult()
    series = ctx.dataset.gdp
    fit = fit_trend(series, k=2, convention=Convention.CONTINUOUS, series_id="gdp k=2")
    whole = fit_trend(series, k=2, convention=Convention.INTEGER, series_id="gdp k=2 integer t0")
    result.fits += [fit.to_report(), whole.to_report()]
    result.checks += [
        check_at_least("gdp k=2", "R2", fit.r2, 0.998, 0.9986, "R2 = .9986"),
        check_range("gdp k=2", "t0", fit.params.t0, 2003, 2008, 2005.56, "t0 = 2005.56", 2),
        check_relative("gdp k=2", "C", fit.params.C, 17355487.3, 0.05, "C = 17355487.3"),
        check_relative("gdp k=2 integer t0", "C", whole.params.C, 17749573.1, 0.05, "C = 17749573.1"),
    ]
    _trend_figure(ctx, result, "trend_gdp_k2", "World GDP, quadratic hyperbola",
                  fit, series.year_array(), series.value_array(), "billions 1990 $")
    return result


def step_gdp_k1(ctx: Context) -> StepResult:
    result = StepResult()
    series = ctx.dataset.gdp
    fit = fit_trend(series, k=1, convention=Convention.INTEGER, series_id="gdp k=1")
    result.fits.append(fit.to_report())
    result.checks += [
        check_range("gdp k=1", "R2", fit.r2, 0.9956 - 0.002, 0.9956 + 0.002, 0.9956, "R2 = .9956"),
        check_range("gdp k=1", "t0", fit.params.t0, 1982, 1992, 1987, "t0 = 1987", 0),
    ]
    _trend_figure(ctx, result, "trend_gdp_k1", "World GDP, simple hyperbola",
                  fit, series.year_array(), series.value_array(), "billions 1990 $")
    return result


def step_population_k2(ctx: Context) -> StepResult:
    result = StepResult()
    series = ctx.dataset.population
    fit = fit_trend(series, k=2, convention=Convention.INTEGER, series_id="population k=2")
    result.fits.append(fit.to_report())
    result.checks.append(
        check_range("population k=2", "R2", fit.r2, 0.9963 - 0.002, 0.9963 + 0.002, 0.9963, "R2 = .9963")
    )
    _trend_figure(ctx, result, "trend_population_k2", "World population, quadratic hyperbola",
                  fit, series.year_array(), series.value_array(), "millions")
    return result


def step_contrast(ctx: Context) -> StepResult:
    result = StepResult()
    r2 = {}
    for name, series in (("population", ctx.dataset.population), ("gdp", ctx.dataset.gdp)):
        for k in (1, 2):
            r2[name, k] = fit_trend(series, k=k, convention=Convention.CONTINUOUS).r2
    result.checks += [
        PublishedCheck(name="gdp: quadratic beats simple", statistic="R2(k=2) - R2(k=1)",
                   value=r2["gdp", 2] - r2["gdp", 1], criterion="> 0",
                   passed=r2["gdp", 2] > r2["gdp", 1], precision=5),
        PublishedCheck(name="population: simple beats quadratic", statistic="R2(k=1) - R2(k=2)",
                   value=r2["population", 1] - r2["population", 2], criterion="> 0",
                   passed=r2["population", 1] > r2["population", 2], precision=5),
    ]
    return result


def step_surplus_growth(ctx: Context) -> StepResult:
    result = StepResult()
    main = surplus_growth_correlation(ctx.dataset, end_year=1973)
    variants = [surplus_growth_correlation(ctx.dataset, end_year=1973, anchor="midpoint"),
                surplus_growth_correlation(ctx.dataset, end_year=1973, mode="log")]
    result.regressions += [main.to_report()] + [v.to_report() for v in variants]
    result.checks += [
        check_at_least("population growth vs surplus", "r", main.r, 0.93, 0.961, "R = .961", 3),
        check_order_of_magnitude("population growth vs surplus", "p", main.p, 0.00004, "p = 0.00004"),
    ]
    part = benchmark_subset(ctx.dataset, end_year=1973)
    growth = derive_growth_rates(part.population)
    levels = derive_growth_rates(derive_surplus_series(part)).levels()
    _figure(ctx, result, "surplus_growth", title="Relative population growth vs surplus",
            x_label="S, dollars per person", y_label="relative growth per year",
            series=[ChartSeries("intervals to 1973", levels, growth.rel_rates())],
            note=f"r = {main.r:.3f}")
    return result


def _growth_figure(ctx, result, name, title, regression):
    part = benchmark_subset(ctx.dataset, end_year=1950)
    dn = derive_growth_rates(part.population).abs_rates()
    ds = derive_growth_rates(derive_surplus_series(part)).abs_rates()
    _scatter_with_line(ctx, result, name, title, ds, dn, regression.slope,
                       regression.intercept or 0.0, "dS/dt, dollars per year",
                       "dN/dt, millions per year", f"slope = {regression.slope:.3f}")


def step_growth_regression_constant(ctx: Context) -> StepResult:
    result = StepResult()
    reg = growth_rate_regression(ctx.dataset, end_year=1950)
    wide = growth_rate_regression(ctx.dataset, end_year=1973)
    result.regressions += [reg.to_report(), wide.to_report()]
    result.checks += [
        check_range("dN/dt on dS/dt with constant", "slope", reg.slope, 0.981 - 0.05, 0.981 + 0.05,
                    0.981, "0.981", 3),
        check_range("dN/dt on dS/dt with constant", "|t| intercept", abs(reg.t_intercept),
                    0.0, 1.5, 0.876, "t = 0.876", 3),
        check_below("dN/dt on dS/dt with constant", "p slope", reg.p_slope, 0.001, None, "< .001"),
        PublishedCheck(name="dN/dt on dS/dt with constant", statistic="intercept",
                   value=reg.intercept, published=0.820, published_text="0.820",
                   criterion="reported", precision=3),
    ]
    _growth_figure(ctx, result, "growth_regression_constant",
                   "Population vs surplus growth, with constant", reg)
    return result


def step_growth_regression_origin(ctx: Context) -> StepResult:
    result = StepResult()
    reg = growth_rate_regression(ctx.dataset, end_year=1950, through_origin=True)
    wide = growth_rate_regression(ctx.dataset, end_year=1973, through_origin=True)
    result.regressions += [reg.to_report(), wide.to_report()]
    result.checks += [
        check_range("dN/dt on dS/dt through origin", "slope", reg.slope, 0.99, 1.09, 1.04, "1.04", 2),
        check_at_least("dN/dt on dS/dt through origin", "R2", reg.r2, 0.92, 0.945, "R2 = 0.945", 3),
        check_below("dN/dt on dS/dt through origin", "p slope", reg.p_slope, 0.001, None, "< .001"),
    ]
    _growth_figure(ctx, result, "growth_regression_origin",
                   "Population vs surplus growth, through origin", reg)
    return result


def step_proportionality(ctx: Context) -> StepResult:
    result = StepResult()
    reg = surplus_population_proportionality(ctx.dataset, (1820, 1958))
    result.regressions.append(reg.to_report())
    result.checks += [
        check_at_least("S on N 1820-1958", "R2", reg.r2, 0.99, 0.996, "R2 > 0.996", 3),
        check_below("S on N 1820-1958", "p slope", reg.p_slope, 1e-12, None, "p < 10^-12"),
    ]
    part = ctx.extended
    if part is None:
        result.message = "extended dataset unavailable; 1-2002 test skipped"
    else:
        wide = surplus_population_proportionality(part, (1, 2002))
        result.regressions.append(wide.to_report())
        result.checks += [
            check_at_least("S on N 1-2002", "R2", wide.r2, 0.97, 0.98, "R2 = 0.98", 2),
            check_below("S on N 1-2002", "p slope", wide.p_slope, 1e-16, None, "p < 10^-16"),
        ]
        surplus = derive_surplus_series(part)
        _scatter_with_line(ctx, result, "proportionality", "Per capita surplus vs population",
                           part.population.value_array(), surplus.value_array(),
                           wide.slope, wide.intercept, "N, millions", "S, dollars",
                           f"1-2002: R2 = {wide.r2:.3f}")
    return result


def step_curve_estimation(ctx: Context) -> StepResult:
    result = StepResult()
    linear, quadratic = curve_estimation(ctx.dataset)
    result.curve_fits += [linear.to_report(), quadratic.to_report()]
    result.checks += [
        check_at_least("G on N quadratic", "R2", quadratic.r2, 0.996, 0.998, "R2 = .998", 3),
        check_range("G on N linear", "R2", linear.r2, 0.876 - 0.03, 0.876 + 0.03, 0.876, "R2 = .876", 3),
        check_below("G on N quadratic", "p", quadratic.p_value, 0.001, None, "p < .001"),
    ]
    part = benchmark_subset(ctx.dataset)
    x, y = part.population.value_array(), part.gdp.value_array()
    grid = np.linspace(x.min(), x.max(), 120)
    _figure(ctx, result, "curve_estimation", title="World GDP vs population",
            x_label="N, millions", y_label="G, billions 1990 $",
            series=[ChartSeries("observed", x, y),
                    ChartSeries("linear", grid, np.polynomial.polynomial.polyval(grid, linear.coefficients), kind="line"),
                    ChartSeries("quadratic", grid, np.polynomial.polynomial.polyval(grid, quadratic.coefficients), kind="line")],
            note=f"R2 linear {linear.r2:.3f}, quadratic {quadratic.r2:.3f}")
    return result


def step_surplus_hyperbola(ctx: Context) -> StepResult:
    """Hyperbolic surplus, and S and S*N rebuilt from the population trend"""
    result = StepResult()
    d = ctx.dataset
    surplus = derive_surplus_series(d)
    years, observed = surplus.year_array(), surplus.value_array()
    ratio = surplus_population_proportionality(d, (d.years[0], d.years[-1]), through_origin=True)
    fit = fit_trend(surplus, k=1, convention=Convention.INTEGER, series_id="surplus k=1")
    population = fit_trend(d.population, k=1, convention=Convention.INTEGER)
    s_params = surplus_trend(population.params, ratio.slope)
    sn_params = surplus_product_trend(population.params, ratio.slope)
    _, s_r2, _, _ = fit_statistics(observed, eval_trend(s_params, years))
    product = observed * d.population.value_array()
    _, sn_r2, _, _ = fit_statistics(product, eval_trend(sn_params, years))

    result.fits.append(fit.to_report())
    result.regressions.append(ratio.to_report())
    result.checks += [
        check_at_least("surplus k=1", "R2", fit.r2, 0.99, None, "hyperbolic growth of S"),
        check_at_least("S = ratio*C/(t0 - t)", "R2", s_r2, 0.9, None, "approximation works well", 3),
        check_at_least("S*N = ratio*C^2/(t0 - t)^2", "R2", sn_r2, 0.9, None,
                       "approximation works well", 3),
        PublishedCheck(name="S on N through origin", statistic="ratio", value=ratio.slope,
                       criterion="reported", precision=4),
    ]
    grid = np.linspace(years[0], years[-1], 240)
    _figure(ctx, result, "surplus_hyperbola", title="Per capita surplus, simple hyperbola",
            x_label="year", y_label="dollars per person", log_y=True,
            series=[ChartSeries("observed", years, observed),
                    ChartSeries("C/(t0 - t)", grid, eval_trend(fit.params, grid), kind="line"),
                    ChartSeries("ratio * population trend", grid, eval_trend(s_params, grid),
                                kind="line")],
            note=f"R2 = {fit.r2:.4f}, t0 = {fit.params.t0:.0f}; from population R2 = {s_r2:.3f}")
    return result


def step_compact_model(ctx: Context) -> StepResult:
    result = StepResult()
    published_params = CompactModelParams.published()
    try:
        trace = simulate_compact(published_params)
        reached = trace.years[-1]
    except BlowUpError as e:
        trace = e.trace
        reached = e.year
    write_atomic(ctx.out_dir / "compact_published_trace.csv", trace.to_frame().to_csv(index=False))
    result.traces.append(trace.summary())
    result.artifacts.append("compact_published_trace.csv")
    result.checks.append(PublishedCheck(
        name="compact model, published constants", statistic="last year reached",
        value=reached, published=1973, published_text="runs to 1973",
        criterion=">= 1973", passed=reached >= 1973, precision=0,
    ))

    calibration = calibrate_compact(ctx.dataset)
    fitted = simulate_compact(calibration.params)
    comparison = compare_trace(fitted, ctx.dataset)
    summary = fitted.summary()
    summary["calibrated_a"] = calibration.params.a
    summary["comparison"] = comparison
    result.traces.append(summary)
    write_atomic(ctx.out_dir / "compact_calibrated_trace.csv", fitted.to_frame().to_csv(index=False))
    result.artifacts.append("compact_calibrated_trace.csv")
    result.checks += [
        PublishedCheck(name="compact model, calibrated", statistic="a", value=calibration.params.a,
                   published=0.000011383, published_text="a = 0.000011383",
                   criterion="reported", precision=9),
        check_at_least("compact model, calibrated", "GDP R2", comparison["gdp"]["r2"], 0.997,
                       0.9986, "R2 = .9986"),
        check_at_least("compact model, calibrated", "population R2", comparison["population"]["r2"],
                       0.985, 0.992, "R2 = 0.992", 3),
    ]
    years = np.asarray(calibration.years)
    observed = np.array([ctx.dataset.gdp.value_at(y) for y in calibration.years])
    _figure(ctx, result, "compact_model_gdp", title="World GDP, compact model vs data",
            x_label="year", y_label="billions 1990 $", log_y=True,
            series=[ChartSeries("observed", years, observed),
                    ChartSeries("model", fitted.years, fitted.G, kind="line")],
            note=f"a = {calibration.params.a:.4e}, R2 = {comparison['gdp']['r2']:.4f}")
    return result


STEPS: List[tuple] = [
    ("trend_population_k1", step_population_k1),
    ("trend_gdp_k2", step_gdp_k2),
    ("trend_gdp_k1", step_gdp_k1),
    ("trend_population_k2", step_population_k2),
    ("trend_contrast", step_contrast),
    ("surplus_growth", step_surplus_growth),
    ("growth_regression_constant", step_growth_regression_constant),
    ("growth_regression_origin", step_growth_regression_origin),
    ("proportionality", step_proportionality),
    ("curve_estimation", step_curve_estimation),
    ("surplus_hyperbola", step_surplus_hyperbola),
    ("compact_model", step_compact_model),
]


def _run_step(name: str, func: Callable[[Context], StepResult], ctx: Context):
    try:
        result = func(ctx)
        return StepOutcome(step=name, status="ok", message=result.message, checks=result.checks), result
    except InputValidationError as e:
        logger.warning(f"Step {name} skipped: {e.message}")
        return StepOutcome(step=name, status="skipped", message=e.message), StepResult()
    except WorldSysError as e:
        logger.error(f"Step {name} failed: {e.message}")
        return StepOutcome(step=name, status="error", message=e.message), StepResult()
    except Exception as e:
        logger.exception(f"Step {name} failed unexpectedly")
        return StepOutcome(step=name, status="error", message=f"{type(e).__name__}: {e}"), StepResult()


def _rounded(check: PublishedCheck) -> str:
    """Value at the precision the published figure is printed with"""
    if check.value is None:
        return ""
    if check.value == 0 or abs(check.value) >= 1e-3:
        return f"{check.value:.{check.precision}f}"
    return f"{check.value:.{check.precision}g}"


def summary_table(bundle: ReportBundle) -> str:
    rows = []
    for step in bundle.steps:
        if not step.checks:
            rows.append({"step": step.step, "check": "", "statistic": "", "value": "",
                         "rounded": "", "published": "", "criterion": step.message,
                         "result": step.status.upper()})
        for check in step.checks:
            rows.append({
                "step": step.step,
                "check": check.name,
                "statistic": check.statistic,
                "value": "" if check.value is None else repr(check.value),
                "rounded": _rounded(check),
                "published": check.published_text,
                "criterion": check.criterion,
                "result": "-" if check.passed is None else "PASS" if check.passed else "FAIL",
            })
    table = pd.DataFrame(rows).to_string(index=False)
    total = sum(1 for c in bundle.checks if c.passed is not None)
    return (f"worldsys {__version__} reproduction summary\n"
            f"dataset: {bundle.provenance.get('dataset')}\n\n{table}\n\n"
            f"passed {bundle.pass_count} of {total} checks; "
            f"failed steps: {', '.join(bundle.failed_steps) or 'none'}\n")


def run_reproduce(
    dataset_path: Path,
    out_dir: Path,
    extended_path: Optional[Path] = None,
    png: bool = False,
    workers: int = settings.MAX_WORKERS,
    timestamp: bool = False,
    m: float = settings.DEFAULT_M,
) -> ReportBundle:
    """Run every step, write report.json, summary.txt and figures to ``out_dir``"""
    out_dir = ensure_writable_dir(out_dir)
    dataset = load_dataset(dataset_path, m=m)
    extended = None
    if extended_path is not None and Path(extended_path).is_file():
        extended = load_dataset(extended_path, m=m)
    ctx = Context(dataset=dataset, extended=extended, out_dir=out_dir, png=png)

    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        futures = [pool.submit(_run_step, name, func, ctx) for name, func in STEPS]
        outcomes = [f.result() for f in futures]

    provenance = {
        "tool": "worldsys",
        "version": __version__,
        "dataset": str(dataset_path),
        "sha256": file_checksum(dataset_path),
        "m": m,
    }
    if extended is not None:
        provenance["extended_dataset"] = str(extended_path)
        provenance["extended_sha256"] = file_checksum(extended_path)
    if timestamp:
        provenance["timestamp"] = datetime.now(timezone.utc).isoformat()

    bundle = ReportBundle(
        fits=[f for _, r in outcomes for f in r.fits],
        regressions=[x for _, r in outcomes for x in r.regressions],
        curve_fits=[x for _, r in outcomes for x in r.curve_fits],
        traces=[x for _, r in outcomes for x in r.traces],
        figures=[x for _, r in outcomes for x in r.figures],
        artifacts=[x for _, r in outcomes for x in r.artifacts],
        steps=[outcome for outcome, _ in outcomes],
        provenance=provenance,
    )
    document = bundle.model_dump(mode="json")
    document["summary"] = {"passed": bundle.pass_count, "checks": len(bundle.checks),
                           "failed_steps": bundle.failed_steps}
    write_json(out_dir / "report.json", document)
    write_atomic(out_dir / "summary.txt", summary_table(bundle))
    logger.info(f"Reproduction finished: {bundle.pass_count}/{len(bundle.checks)} checks passed")
    return bundle


def cmd_reproduce(args) -> int:
    extended = Path(args.extended) if args.extended else settings.extended_dataset_path()
    out_dir = Path(args.out) if args.out else Path("reproduction")
    bundle = run_reproduce(data_path(args), out_dir, extended, png=args.png,
                           workers=args.workers, timestamp=args.timestamp, m=args.m)
    print(f"passed {bundle.pass_count} of {len(bundle.checks)} checks -> {out_dir / 'summary.txt'}")
    return EXIT_STEP_FAILED if bundle.failed_steps else EXIT_OK
