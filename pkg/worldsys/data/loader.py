"""
Dataset ingestion, validation and derived series
"""
import math
from pathlib import Path
from typing import Iterable, Optional, Tuple, Union

import numpy as np
import pandas as pd
import logging

from worldsys.data.settings import DEFAULT_M
from worldsys.schemas.series import (
    GrowthInterval,
    GrowthRateSeries,
    MacroDataset,
    YearValueSeries,
)
from worldsys.utils.file_handler import file_checksum
from worldsys.utils.responses import (
    DataIOError,
    DataParseError,
    InputValidationError,
    error_response,
)

logger = logging.getLogger(__name__)

REQUIRED_COLUMNS = ("year", "population_millions", "gdp_billions")
NOTE_COLUMN = "note"

# World benchmark years tabulated by Maddison
BENCHMARK_YEARS = (1, 1000, 1500, 1600, 1700, 1820, 1870, 1913, 1950, 1973, 1998)

GROWTH_MODES = ("simple", "log")
ANCHORS = ("start", "midpoint")


def _read_frame(path: Path) -> pd.DataFrame:
    if not path.is_file():
        raise error_response(
            f"Dataset not found: {path}",
            DataIOError,
            details={"path": str(path)}
        )
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, index_col=False,
                            skipinitialspace=True, encoding="utf-8")
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise error_response(
            f"Malformed CSV in {path}",
            DataParseError,
            details={"path": str(path), "reason": str(e)}
        )
    except (OSError, UnicodeDecodeError) as e:
        raise error_response(
            f"Cannot read dataset {path}",
            DataIOError,
            details={"path": str(path), "reason": str(e)}
        )
    frame.columns = [c.strip() for c in frame.columns]
    missing = [c for c in REQUIRED_COLUMNS if c not in frame.columns]
    if missing:
        raise error_response(
            f"Dataset header lacks columns {missing}",
            DataParseError,
            details={"path": str(path), "columns": list(frame.columns)}
        )
    return frame


def _numeric_column(frame: pd.DataFrame, column: str, path: Path) -> np.ndarray:
    values = pd.to_numeric(frame[column].str.strip(), errors="coerce").to_numpy(dtype=float)
    bad = ~np.isfinite(values)
    if bad.any():
        row = int(np.flatnonzero(bad)[0])
        raise error_response(
            f"Malformed value {frame[column].iloc[row]!r} in column {column} at line {row + 2}",
            DataParseError,
            details={"path": str(path), "line": row + 2, "column": column}
        )
    return values


def load_dataset(path: Union[str, Path], m: float = DEFAULT_M) -> MacroDataset:
    """Load and validate a ``year,population_millions,gdp_billions[,note]`` file.

    Rows must already be sorted by year; corrections live in the file and
    their annotations are kept in ``correction_notes``.
    """
    path = Path(path)
    if not m > 0:
        raise error_response(f"m must be positive, got {m}", InputValidationError,
                             details={"field": "m"})
    frame = _read_frame(path)
    if len(frame) < 2:
        raise error_response(
            f"Insufficient points in {path}: {len(frame)} row(s), at least 2 required",
            InputValidationError,
            details={"path": str(path), "rows": len(frame)}
        )

    years = _numeric_column(frame, "year", path)
    population = _numeric_column(frame, "population_millions", path)
    gdp = _numeric_column(frame, "gdp_billions", path)
    notes = tuple(frame[NOTE_COLUMN].fillna("").str.strip()) if NOTE_COLUMN in frame.columns else ()

    for i in range(len(years)):
        line = i + 2
        if i and not years[i] > years[i - 1]:
            raise error_response(
                f"Year {years[i]:g} at line {line} does not increase",
                InputValidationError,
                details={"line": line, "year": years[i]}
            )
        if population[i] <= 0 or gdp[i] <= 0:
            raise error_response(
                f"Non-positive population or GDP at line {line} (year {years[i]:g})",
                InputValidationError,
                details={"line": line, "year": years[i]}
            )
        per_capita = 1000.0 * gdp[i] / population[i]
        if per_capita <= m:
            raise error_response(
                f"Per capita GDP {per_capita:.3f} is not above m={m:g} at line {line} (year {years[i]:g})",
                InputValidationError,
                details={"line": line, "year": years[i], "per_capita": per_capita}
            )

    dataset = MacroDataset(
        population=YearValueSeries(name="population", units="millions",
                                   years=tuple(years), values=tuple(population)),
        gdp=YearValueSeries(name="gdp", units="billions 1990 PPP dollars",
                            years=tuple(years), values=tuple(gdp)),
        m=m,
        correction_notes=notes,
        source=str(path),
        checksum=file_checksum(path),
    )
    logger.info(f"Loaded {len(dataset)} rows from {path} ({years[0]:g}-{years[-1]:g})")
    return dataset


def derive_per_capita_series(d: MacroDataset) -> YearValueSeries:
    """g = 1000*G/N in dollars per person per year"""
    values = 1000.0 * d.gdp.value_array() / d.population.value_array()
    return YearValueSeries(name="per_capita_gdp", units="dollars",
                           years=d.years, values=tuple(values))


def derive_surplus_series(d: MacroDataset) -> YearValueSeries:
    """S = 1000*G/N - m; the only place the millions/billions factor is applied"""
    values = 1000.0 * d.gdp.value_array() / d.population.value_array() - d.m
    return YearValueSeries(name="surplus", units="dollars",
                           years=d.years, values=tuple(values))


def derive_growth_rates(
    s: YearValueSeries,
    mode: str = "simple",
    anchor: str = "start",
) -> GrowthRateSeries:
    """Average annual growth over each pair of consecutive observations.

    ``anchor`` picks the level each interval is paired with: the value at the
    interval start, or the mean of its two endpoint values.
    """
    if mode not in GROWTH_MODES:
        raise error_response(f"Unknown growth mode {mode!r}", InputValidationError,
                             details={"field": "mode", "allowed": list(GROWTH_MODES)})
    if anchor not in ANCHORS:
        raise error_response(f"Unknown anchor {anchor!r}", InputValidationError,
                             details={"field": "anchor", "allowed": list(ANCHORS)})
    if len(s) < 2:
        raise error_response(
            f"Series {s.name!r} needs at least 2 points for growth rates",
            InputValidationError,
            details={"points": len(s)}
        )

    intervals = []
    for (t1, v1), (t2, v2) in zip(s.points, s.points[1:]):
        dt = t2 - t1
        abs_rate = (v2 - v1) / dt
        level = v1 if anchor == "start" else 0.5 * (v1 + v2)
        if mode == "log":
            if v1 <= 0 or v2 <= 0:
                raise error_response(
                    f"Log growth needs positive values; series {s.name!r} has {min(v1, v2)} near year {t1:g}",
                    InputValidationError,
                    details={"year": t1}
                )
            rel_rate = (math.log(v2) - math.log(v1)) / dt
        else:
            if level == 0:
                raise error_response(
                    f"Zero anchor level in series {s.name!r} at year {t1:g}",
                    InputValidationError,
                    details={"year": t1}
                )
            rel_rate = abs_rate / level
        intervals.append(GrowthInterval(t_start=t1, t_end=t2, abs_rate=abs_rate,
                                        rel_rate=rel_rate, level_at_anchor=level))
    return GrowthRateSeries(name=s.name, mode=mode, anchor=anchor, intervals=tuple(intervals))


def subset_dataset(
    d: MacroDataset,
    years: Optional[Iterable[float]] = None,
    year_range: Optional[Tuple[float, float]] = None,
) -> MacroDataset:
    """Restrict to listed years and/or an inclusive range; no interpolation"""
    keep = np.ones(len(d), dtype=bool)
    all_years = d.population.year_array()
    if years is not None:
        keep &= np.isin(all_years, np.asarray(list(years), dtype=float))
    if year_range is not None:
        lo, hi = year_range
        keep &= (all_years >= lo) & (all_years <= hi)
    idx = np.flatnonzero(keep)
    if idx.size == 0:
        raise error_response(
            "Subset selects no rows",
            InputValidationError,
            details={"years": None if years is None else list(years), "range": year_range}
        )

    def pick(series: YearValueSeries) -> YearValueSeries:
        return series.model_copy(update={
            "years": tuple(series.years[i] for i in idx),
            "values": tuple(series.values[i] for i in idx),
        })

    notes = tuple(d.correction_notes[i] for i in idx) if d.correction_notes else ()
    return d.model_copy(update={
        "population": pick(d.population),
        "gdp": pick(d.gdp),
        "correction_notes": notes,
    })


def benchmark_subset(d: MacroDataset, end_year: Optional[float] = None) -> MacroDataset:
    """Rows at Maddison benchmark years, optionally up to ``end_year``"""
    year_range = None if end_year is None else (-math.inf, end_year)
    return subset_dataset(d, years=BENCHMARK_YEARS, year_range=year_range)
