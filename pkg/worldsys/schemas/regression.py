"""
Regression result schemas
"""
from typing import Any, Dict, Optional, Tuple

from pydantic import BaseModel, ConfigDict


class RegressionResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    label: str = ""
    mode: str
    slope: float
    intercept: Optional[float] = None
    slope_se: float
    intercept_se: Optional[float] = None
    t_slope: float
    t_intercept: Optional[float] = None
    p_slope: float
    p_intercept: Optional[float] = None
    r: float
    r2: float
    n: int
    dof: int

    @property
    def through_origin(self) -> bool:
        return self.mode == "through_origin"

    def to_report(self) -> Dict[str, Any]:
        report = {"mode": self.mode, "slope": self.slope}
        if not self.through_origin:
            report["intercept"] = self.intercept
        report.update({
            "se": {"slope": self.slope_se, "intercept": self.intercept_se},
            "t": {"slope": self.t_slope, "intercept": self.t_intercept},
            "p": {"slope": self.p_slope, "intercept": self.p_intercept},
            "r": self.r,
            "r2": self.r2,
            "n": self.n,
            "dof": self.dof,
        })
        if self.through_origin:
            for key in ("se", "t", "p"):
                report[key].pop("intercept")
        if self.label:
            report["label"] = self.label
        return report


class PolyFitResult(BaseModel):
    """Coefficients in ascending powers of x"""
    model_config = ConfigDict(frozen=True)

    label: str = ""
    degree: int
    coefficients: Tuple[float, ...]
    r2: float
    sse: float
    sst: float
    n: int
    f_stat: Optional[float] = None
    p_value: Optional[float] = None

    def to_report(self) -> Dict[str, Any]:
        return self.model_dump()


class CorrelationResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    label: str = ""
    r: float
    p: float
    n: int
    dof: int

    def to_report(self) -> Dict[str, Any]:
        return self.model_dump()
