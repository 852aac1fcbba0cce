"""
`simulate` command: run one dynamical system from a parameter file
"""
from typing import Any, Dict, Optional, Tuple

import logging

from worldsys.analysis.calibration import calibrate_compact, compare_trace
from worldsys.cli.common import data_path, emit_json, emit_text
from worldsys.data.loader import load_dataset
from worldsys.models import dynamics
from worldsys.schemas.simulation import (
    CoalitionParams,
    CompactModelParams,
    Integrator,
    KremerParams,
    LogisticParams,
    SimulationTrace,
)
from worldsys.utils.params import build_params, load_params_file
from worldsys.utils.responses import (
    BlowUpError,
    InputValidationError,
    NumericalAbort,
    error_response,
)

logger = logging.getLogger(__name__)

MODELS = ("compact", "kuznetsian", "exptech", "logistic", "coalition")
RUN_KEYS = ("integrator", "step", "stride", "model", "instantaneous")
SPAN_KEYS = ("t_start", "t_end")


def register(subparsers, common) -> None:
    parser = subparsers.add_parser("simulate", parents=[common], help="run a dynamical system")
    parser.add_argument("--model", choices=MODELS, required=True)
    parser.add_argument("--params", default=None,
                        help="key=value parameter file (compact and coalition have built-in defaults)")
    parser.add_argument("--integrator", choices=[i.value for i in Integrator], default=None)
    parser.add_argument("--step", type=float, default=None, help="integration step in years")
    parser.add_argument("--stride", type=float, default=None, help="years between stored rows")
    parser.add_argument("--instantaneous", action="store_true",
                        help="kuznetsian: pin population to its equilibrium each step")
    parser.add_argument("--calibrate", action="store_true",
                        help="compact: fit a to the dataset before running")
    parser.add_argument("--compare", action="store_true",
                        help="compact: report fit against the dataset at benchmark years")
    parser.set_defaults(func=cmd_simulate)


def _split(values: Dict[str, Any]) -> Tuple[Dict[str, Any], Dict[str, Any], Dict[str, Any]]:
    run = {k: values[k] for k in RUN_KEYS if k in values}
    span = {k: values[k] for k in SPAN_KEYS if k in values}
    model = {k: v for k, v in values.items() if k not in RUN_KEYS}
    return run, span, model


def _span(span: Dict[str, Any], model: str) -> Tuple[float, float]:
    missing = [k for k in SPAN_KEYS if k not in span]
    if missing:
        raise error_response(f"{model} parameters need {', '.join(missing)}",
                             InputValidationError, details={"fields": missing})
    return float(span["t_start"]), float(span["t_end"])


def run_model(model: str, values: Dict[str, Any], integrator: Optional[Integrator],
              step: Optional[float], stride: Optional[float],
              instantaneous: bool = False) -> SimulationTrace:
    """Dispatch one model run from raw parameter values"""
    run, span, fields = _split(values)
    if "model" in run and run["model"] != model:
        raise error_response(f"Parameter file is for model {run['model']!r}, not {model!r}",
                             InputValidationError, details={"field": "model"})
    integrator = Integrator(integrator or run.get("integrator") or
                            (Integrator.EULER_ANNUAL if model == "compact" else Integrator.RK4))
    step = step if step is not None else run.get("step")
    stride = stride if stride is not None else run.get("stride")
    instantaneous = instantaneous or bool(run.get("instantaneous", 0.0))

    if model == "compact":
        params = build_params(CompactModelParams, fields) if fields else CompactModelParams.published()
        return dynamics.simulate_compact(params, integrator, step, stride)
    if model == "logistic":
        return dynamics.simulate_logistic(build_params(LogisticParams, fields), integrator, step, stride)
    if model == "coalition":
        params = build_params(CoalitionParams, fields) if fields else CoalitionParams.von_foerster()
        return dynamics.simulate_coalition(params, integrator, step, stride)

    t_span = _span(span, model)
    kremer = build_params(KremerParams, {k: v for k, v in fields.items() if k not in SPAN_KEYS})
    if model == "kuznetsian":
        return dynamics.simulate_kuznetsian(kremer, t_span, integrator, step, stride,
                                            instantaneous=instantaneous)
    return dynamics.simulate_exponential_tech(kremer, t_span, integrator, step, stride)


def _write_trace(trace: SimulationTrace, args) -> None:
    if args.format == "json":
        emit_json(trace.model_dump(mode="json"), args.out)
    else:
        emit_text(trace.to_frame().to_csv(index=False), args.out)


def _summary_line(trace: SimulationTrace) -> str:
    parts = [f"{trace.model}: {trace.years[0]:g}-{trace.years[-1]:g}", f"N={trace.N[-1]:.6g}"]
    if trace.S is not None:
        parts.append(f"S={trace.S[-1]:.6g}")
    if trace.G is not None:
        parts.append(f"G={trace.G[-1]:.6g}")
    if trace.aborted:
        parts.append(f"ABORTED {trace.abort_reason} at year {trace.abort_year:g}")
    return " ".join(parts)


def cmd_simulate(args) -> int:
    values = load_params_file(args.params) if args.params else {}
    if args.model in ("kuznetsian", "exptech", "logistic") and not values:
        raise error_response(f"--params is required for model {args.model}",
                             InputValidationError, details={"field": "params"})
    integrator = Integrator(args.integrator) if args.integrator else None

    if args.model == "compact" and args.calibrate:
        calibration = calibrate_compact(load_dataset(data_path(args), m=args.m))
        calibrated = calibration.params.model_dump()
        if "t_end" in values:
            calibrated["t_end"] = values["t_end"]
        values = {**{k: v for k, v in values.items() if k in RUN_KEYS}, **calibrated}
        logger.info(f"Using calibrated a={calibration.params.a:.6e}")

    try:
        trace = run_model(args.model, values, integrator, args.step, args.stride,
                          instantaneous=args.instantaneous)
    except NumericalAbort as e:
        trace = getattr(e, "trace", None)
        if trace is not None and args.out:
            _write_trace(trace, args)
        print(_summary_line(trace) if trace is not None else f"{args.model}: {e.message}")
        if isinstance(e, BlowUpError):
            print(f"blow-up year: {e.year:g}")
        return e.exit_code

    _write_trace(trace, args)
    if args.out:
        print(_summary_line(trace))
    if args.model == "compact" and args.compare:
        comparison = compare_trace(trace, load_dataset(data_path(args), m=args.m))
        for name, stats in comparison.items():
            print(f"{name}: R2={stats['r2']:.5f} r={stats['r']:.5f} n={stats['n']}")
    return 0
