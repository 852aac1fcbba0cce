"""
Dynamical-system parameter and trace schemas
"""
from enum import Enum
from typing import Any, Dict, Iterable, Optional, Tuple

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, model_validator


class Integrator(str, Enum):
    EULER_ANNUAL = "euler_annual"
    RK4 = "rk4"

    @property
    def default_step(self) -> float:
        return 1.0 if self is Integrator.EULER_ANNUAL else 0.25


class _SpanMixin(BaseModel):
    @model_validator(mode="after")
    def _check_span(self):
        if not self.t_start < self.t_end:
            raise ValueError(f"t_end ({self.t_end}) must be after t_start ({self.t_start})")
        return self


class CompactModelParams(_SpanMixin):
    """dN/dt = aSN, dS/dt = b_ratio*a*NS"""
    model_config = ConfigDict(frozen=True)

    a: float = Field(gt=0)
    b_ratio: float = Field(default=0.96, gt=0)
    m: float = Field(default=440.0, gt=0)
    N0: float = Field(gt=0)
    S0: float = Field(gt=0)
    t_start: float = 1.0
    t_end: float = 1973.0

    @property
    def b(self) -> float:
        return self.b_ratio * self.a

    @classmethod
    def published(cls, t_end: float = 1973.0) -> "CompactModelParams":
        """Constants estimated from the world series at 1 CE"""
        return cls(a=0.000011383, b_ratio=0.96, m=440.0, N0=230.82, S0=4.225,
                   t_start=1.0, t_end=t_end)


class KremerParams(BaseModel):
    """Cobb-Douglas output r_tech*T*N^alpha with surplus-driven population.

    ``tech_coef`` is b (dT/dt = bNT) in Kuznetsian mode and c
    (dT/dt = cT) in exponential-technology mode.
    """
    model_config = ConfigDict(frozen=True)

    alpha: float = Field(gt=0, lt=1)
    r_tech: float = Field(gt=0)
    tech_coef: float = Field(ge=0)
    a: float = Field(gt=0)
    m: float = Field(default=440.0, gt=0)
    g_bar: Optional[float] = Field(default=None, gt=0)
    T0: float = Field(gt=0)
    N0: float = Field(gt=0)


class LogisticParams(_SpanMixin):
    """dN/dt = a1*N - (a2*N + b*N^2)"""
    model_config = ConfigDict(frozen=True)

    a1: float = Field(gt=0)
    a2: float = Field(ge=0)
    b: float = Field(gt=0)
    N0: float = Field(gt=0)
    t_start: float = 0.0
    t_end: float = 100.0

    @model_validator(mode="after")
    def _check_rates(self):
        if self.a1 < self.a2:
            raise ValueError(f"a1 ({self.a1}) must not be below a2 ({self.a2})")
        return self

    @property
    def r(self) -> float:
        return self.a1 - self.a2

    @property
    def K(self) -> float:
        return self.r / self.b


class CoalitionParams(_SpanMixin):
    """dN/dt = a0 * N^(1/k) * N"""
    model_config = ConfigDict(frozen=True)

    a0: float = Field(gt=0)
    k: float = Field(gt=0, le=1)
    N0: float = Field(gt=0)
    t_start: float = 1960.0
    t_end: float = 2100.0

    @classmethod
    def von_foerster(cls) -> "CoalitionParams":
        """Published coefficients, N counted in persons, anchored at 1960"""
        return cls(a0=5.5e-12, k=0.99, N0=2.1664e9, t_start=1960.0, t_end=2100.0)


class SimulationTrace(BaseModel):
    """Stored steps of one run; S and G are None for systems without surplus"""
    model_config = ConfigDict(frozen=True)

    model: str
    integrator: Integrator
    step: float
    years: Tuple[float, ...]
    N: Tuple[float, ...]
    S: Optional[Tuple[float, ...]] = None
    G: Optional[Tuple[float, ...]] = None
    T: Optional[Tuple[float, ...]] = None
    metadata: Dict[str, Any] = Field(default_factory=dict)
    aborted: bool = False
    abort_reason: Optional[str] = None
    abort_year: Optional[float] = None

    def __len__(self) -> int:
        return len(self.years)

    def column(self, name: str) -> np.ndarray:
        values = getattr(self, name)
        if values is None:
            raise KeyError(f"{self.model} trace has no {name} column")
        return np.asarray(values, dtype=float)

    def sample(self, years: Iterable[float]) -> Dict[str, np.ndarray]:
        """Stored values at exactly the requested years"""
        index = {year: i for i, year in enumerate(self.years)}
        wanted = list(years)
        missing = [y for y in wanted if y not in index]
        if missing:
            raise KeyError(f"years not stored in trace: {missing}")
        rows = [index[y] for y in wanted]
        out = {"years": np.asarray(wanted, dtype=float)}
        for name in ("N", "S", "G", "T"):
            if getattr(self, name) is not None:
                out[name] = self.column(name)[rows]
        return out

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame({"year": self.years, "N_millions": self.N})
        if self.S is not None:
            frame["S_dollars"] = self.S
        if self.G is not None:
            frame["G_billions"] = self.G
        if self.T is not None:
            frame["T_index"] = self.T
        return frame

    def summary(self) -> Dict[str, Any]:
        data = {
            "model": self.model,
            "integrator": self.integrator.value,
            "step": self.step,
            "rows": len(self),
            "first_year": self.years[0],
            "last_year": self.years[-1],
            "final_N": self.N[-1],
            "aborted": self.aborted,
        }
        if self.S is not None:
            data["final_S"] = self.S[-1]
        if self.G is not None:
            data["final_G"] = self.G[-1]
        if self.T is not None:
            data["final_T"] = self.T[-1]
        if self.aborted:
            data["abort_reason"] = self.abort_reason
            data["abort_year"] = self.abort_year
        return data


class CompactCalibration(BaseModel):
    """Best-fitting compact-model coefficient a for one dataset"""
    model_config = ConfigDict(frozen=True)

    params: CompactModelParams
    target: str
    sse: float
    r2_gdp: float
    r2_population: float
    years: Tuple[float, ...]
    a_bounds: Tuple[float, float]
    grid_size: int
