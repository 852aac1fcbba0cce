"""
`fit` command: blow-up trend fits of population or GDP
"""
import argparse
import logging

import pandas as pd

from worldsys.analysis.fitting import FREE, fit_trend
from worldsys.cli.common import add_range_options, emit_json, emit_text, load_for_args
from worldsys.models.trend import eval_trend
from worldsys.schemas.fit import Convention, Objective, TrendFit

logger = logging.getLogger(__name__)

CONVENTIONS = {
    "integer": Convention.INTEGER,
    "integer_t0": Convention.INTEGER,
    "continuous": Convention.CONTINUOUS,
    "continuous_t0": Convention.CONTINUOUS,
}


def _k_value(text: str):
    if text.lower() == FREE:
        return FREE
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"k must be a positive number or 'free', got {text!r}")
    if value <= 0:
        raise argparse.ArgumentTypeError(f"k must be positive, got {value}")
    return value


def register(subparsers, common) -> None:
    parser = subparsers.add_parser("fit", parents=[common], help="fit C/(t0 - t)^k to a series")
    parser.add_argument("--series", choices=("population", "gdp"), required=True)
    parser.add_argument("--k", type=_k_value, default=1.0, help="exponent, or 'free'")
    parser.add_argument("--convention", choices=sorted(CONVENTIONS), default="continuous")
    parser.add_argument("--horizon", type=int, default=200, help="years searched past the data")
    parser.add_argument("--objective", choices=[o.value for o in Objective], default="sse")
    add_range_options(parser)
    parser.set_defaults(func=cmd_fit)


def fit_table(fit: TrendFit, years, observed) -> pd.DataFrame:
    fitted = eval_trend(fit.params, years)
    return pd.DataFrame({"year": years, "observed": observed,
                         "fitted": fitted, "residual": observed - fitted})


def cmd_fit(args) -> int:
    dataset = load_for_args(args)
    series = dataset.population if args.series == "population" else dataset.gdp
    fit = fit_trend(series, k=args.k, convention=CONVENTIONS[args.convention],
                    horizon=args.horizon, objective=Objective(args.objective),
                    series_id=args.series)
    if args.format == "csv":
        table = fit_table(fit, series.year_array(), series.value_array())
        emit_text(table.to_csv(index=False), args.out)
    else:
        emit_json(fit.to_report(), args.out)
    if args.out:
        print(f"{args.series}: t0={fit.params.t0:g} C={fit.params.C:.10g} "
              f"k={fit.params.k:g} R2={fit.r2:.5f} -> {args.out}")
    for warning in fit.warnings:
        logger.warning(warning)
    return 0
