"""
Helpers shared by the command modules
"""
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

import math

from worldsys.data import settings
from worldsys.data.loader import load_dataset, subset_dataset
from worldsys.schemas.series import MacroDataset
from worldsys.utils.file_handler import dumps_json, write_atomic, write_json


def data_path(args) -> Path:
    return Path(args.data) if args.data else settings.default_dataset_path()


def load_for_args(args, m: float = settings.DEFAULT_M) -> MacroDataset:
    """Load the dataset and apply --from/--to when the verb has them"""
    dataset = load_dataset(data_path(args), m=getattr(args, "m", None) or m)
    lo = getattr(args, "year_from", None)
    hi = getattr(args, "year_to", None)
    if lo is not None or hi is not None:
        dataset = subset_dataset(dataset, year_range=(
            -math.inf if lo is None else lo, math.inf if hi is None else hi))
    return dataset


def year_range(args, default: Tuple[float, float]) -> Tuple[float, float]:
    lo = getattr(args, "year_from", None)
    hi = getattr(args, "year_to", None)
    return (default[0] if lo is None else lo, default[1] if hi is None else hi)


def add_range_options(parser) -> None:
    parser.add_argument("--from", dest="year_from", type=float, default=None,
                        help="first year to include")
    parser.add_argument("--to", dest="year_to", type=float, default=None,
                        help="last year to include")


def emit_json(document: Dict[str, Any], out: Optional[str]) -> None:
    """Write to ``out`` atomically, or print to stdout"""
    if out:
        write_json(out, document)
    else:
        print(dumps_json(document), end="")


def emit_text(text: str, out: Optional[str]) -> None:
    if out:
        write_atomic(out, text)
    else:
        print(text, end="")
