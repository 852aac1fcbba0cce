"""
Trend parameter and fit result schemas
"""
from enum import Enum
from typing import Any, Dict, Tuple

from pydantic import BaseModel, ConfigDict, Field


class Convention(str, Enum):
    CONTINUOUS = "continuous_t0"
    INTEGER = "integer_t0"


class Objective(str, Enum):
    SSE = "sse"
    LOG_SSE = "log_sse"


class TrendParams(BaseModel):
    """C / (t0 - t)^k; k=1 simple hyperbola, k=2 quadratic hyperbola"""
    model_config = ConfigDict(frozen=True)

    C: float = Field(gt=0)
    t0: float
    k: float = Field(default=1.0, gt=0)


class TrendFit(BaseModel):
    model_config = ConfigDict(frozen=True)

    series_id: str = ""
    params: TrendParams
    sse: float
    sst: float
    r: float
    r2: float
    residuals: Tuple[float, ...]
    convention: Convention
    k_mode: str = "fixed"
    objective: Objective = Objective.SSE
    warnings: Tuple[str, ...] = ()

    @property
    def n(self) -> int:
        return len(self.residuals)

    def to_report(self) -> Dict[str, Any]:
        return {
            "series_id": self.series_id,
            "k_mode": self.k_mode,
            "convention": self.convention.value,
            "C": self.params.C,
            "t0": self.params.t0,
            "k": self.params.k,
            "r": self.r,
            "r2": self.r2,
            "sse": self.sse,
            "warnings": list(self.warnings),
            "objective": self.objective.value,
            "n": self.n,
        }
