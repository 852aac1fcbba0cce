"""
Time-series and dataset schemas
"""
import math
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


class YearValueSeries(BaseModel):
    """Ordered (year, value) observations"""
    model_config = ConfigDict(frozen=True)

    name: str = ""
    units: str = ""
    years: Tuple[float, ...]
    values: Tuple[float, ...]

    @model_validator(mode="after")
    def _check_points(self):
        if len(self.years) != len(self.values):
            raise ValueError(
                f"{len(self.years)} years but {len(self.values)} values"
            )
        if not self.years:
            raise ValueError("series has no points")
        for i in range(1, len(self.years)):
            if not self.years[i] > self.years[i - 1]:
                raise ValueError(
                    f"years not strictly increasing at {self.years[i]}"
                )
        for year, value in zip(self.years, self.values):
            if not (math.isfinite(year) and math.isfinite(value)):
                raise ValueError(f"non-finite point at year {year}")
        return self

    @property
    def points(self) -> Tuple[Tuple[float, float], ...]:
        return tuple(zip(self.years, self.values))

    def __len__(self) -> int:
        return len(self.years)

    def year_array(self) -> np.ndarray:
        return np.asarray(self.years, dtype=float)

    def value_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)

    def scaled(self, factor: float) -> "YearValueSeries":
        return self.model_copy(update={"values": tuple(v * factor for v in self.values)})

    def shifted(self, delta: float) -> "YearValueSeries":
        return self.model_copy(update={"years": tuple(y + delta for y in self.years)})

    def value_at(self, year: float) -> float:
        """Exact lookup; no interpolation"""
        try:
            return self.values[self.years.index(year)]
        except ValueError:
            raise KeyError(f"year {year} not in series {self.name!r}") from None


class MacroDataset(BaseModel):
    """Paired population (millions) and GDP (billions) plus the threshold m"""
    model_config = ConfigDict(frozen=True)

    population: YearValueSeries
    gdp: YearValueSeries
    m: float = Field(gt=0)
    correction_notes: Tuple[str, ...] = ()
    source: Optional[str] = None
    checksum: Optional[str] = None

    @model_validator(mode="after")
    def _check_pairing(self):
        if self.population.years != self.gdp.years:
            missing = sorted(set(self.population.years) ^ set(self.gdp.years))
            raise ValueError(f"population and GDP years differ: {missing}")
        if self.correction_notes and len(self.correction_notes) != len(self.population):
            raise ValueError("one correction note per point is required")
        for year, n, g in zip(self.years, self.population.values, self.gdp.values):
            if n <= 0 or g <= 0:
                raise ValueError(f"non-positive population or GDP at year {year:g}")
            if 1000.0 * g / n <= self.m:
                raise ValueError(
                    f"per capita GDP {1000.0 * g / n:.3f} does not exceed m={self.m:g} at year {year:g}"
                )
        return self

    @property
    def years(self) -> Tuple[float, ...]:
        return self.population.years

    def __len__(self) -> int:
        return len(self.population)

    def note_for(self, year: float) -> str:
        if not self.correction_notes:
            return ""
        return self.correction_notes[self.years.index(year)]


class GrowthInterval(BaseModel):
    model_config = ConfigDict(frozen=True)

    t_start: float
    t_end: float
    abs_rate: float
    rel_rate: float
    level_at_anchor: float

    @model_validator(mode="after")
    def _check_span(self):
        if not self.t_start < self.t_end:
            raise ValueError(f"interval start {self.t_start} not before end {self.t_end}")
        return self


class GrowthRateSeries(BaseModel):
    """Interval growth rates of one series"""
    model_config = ConfigDict(frozen=True)

    name: str = ""
    mode: str = "simple"
    anchor: str = "start"
    intervals: Tuple[GrowthInterval, ...]

    @model_validator(mode="after")
    def _check_order(self):
        for prev, cur in zip(self.intervals, self.intervals[1:]):
            if cur.t_start < prev.t_end:
                raise ValueError(f"interval starting {cur.t_start} overlaps previous")
        return self

    def __len__(self) -> int:
        return len(self.intervals)

    def abs_rates(self) -> np.ndarray:
        return np.array([iv.abs_rate for iv in self.intervals])

    def rel_rates(self) -> np.ndarray:
        return np.array([iv.rel_rate for iv in self.intervals])

    def levels(self) -> np.ndarray:
        return np.array([iv.level_at_anchor for iv in self.intervals])
