"""
`stats` command: correlation and regression tests on the dataset
"""
import math

from worldsys.analysis.stats import (
    curve_estimation,
    growth_rate_regression,
    surplus_growth_correlation,
    surplus_population_proportionality,
)
from worldsys.cli.common import add_range_options, data_path, emit_json, year_range
from worldsys.data.loader import load_dataset

ANALYSES = ("surplus-growth", "growth-regression", "proportionality", "curve")


def register(subparsers, common) -> None:
    parser = subparsers.add_parser("stats", parents=[common], help="regression and correlation tests")
    parser.add_argument("--analysis", choices=ANALYSES, required=True)
    parser.add_argument("--through-origin", action="store_true",
                        help="regress without a constant")
    parser.add_argument("--anchor", choices=("start", "midpoint"), default="start",
                        help="level each growth interval is paired with")
    parser.add_argument("--mode", choices=("simple", "log"), default="simple",
                        help="relative growth-rate definition")
    parser.add_argument("--all-rows", action="store_true",
                        help="curve estimation on every row instead of benchmark years")
    add_range_options(parser)
    parser.set_defaults(func=cmd_stats)


def cmd_stats(args) -> int:
    dataset = load_dataset(data_path(args), m=args.m)
    start, end = year_range(args, (-math.inf, math.inf))
    if args.analysis == "surplus-growth":
        result = surplus_growth_correlation(dataset, end_year=end, start_year=start,
                                            anchor=args.anchor, mode=args.mode)
        report = result.to_report()
    elif args.analysis == "growth-regression":
        result = growth_rate_regression(dataset, end_year=1950 if args.year_to is None else end,
                                        start_year=start, through_origin=args.through_origin)
        report = result.to_report()
    elif args.analysis == "proportionality":
        result = surplus_population_proportionality(
            dataset, year_range(args, (dataset.years[0], dataset.years[-1])),
            through_origin=args.through_origin,
        )
        report = result.to_report()
    else:
        linear, quadratic = curve_estimation(
            dataset, benchmark_only=not args.all_rows,
            end_year=None if args.year_to is None else end,
        )
        report = {"linear": linear.to_report(), "quadratic": quadratic.to_report()}
    emit_json(report, args.out)
    if args.out:
        print(f"{args.analysis} -> {args.out}")
    return 0
