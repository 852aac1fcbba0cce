"""
Domain schemas
"""
from worldsys.schemas.series import (
    YearValueSeries,
    MacroDataset,
    GrowthInterval,
    GrowthRateSeries,
)
from worldsys.schemas.fit import Convention, Objective, TrendParams, TrendFit
from worldsys.schemas.simulation import (
    Integrator,
    CompactModelParams,
    CompactCalibration,
    KremerParams,
    LogisticParams,
    CoalitionParams,
    SimulationTrace,
)
from worldsys.schemas.regression import CorrelationResult, RegressionResult, PolyFitResult
from worldsys.schemas.report import PublishedCheck, StepOutcome, ReportBundle

__all__ = [
    "YearValueSeries",
    "MacroDataset",
    "GrowthInterval",
    "GrowthRateSeries",
    "Convention",
    "Objective",
    "TrendParams",
    "TrendFit",
    "Integrator",
    "CompactModelParams",
    "CompactCalibration",
    "KremerParams",
    "LogisticParams",
    "CoalitionParams",
    "SimulationTrace",
    "CorrelationResult",
    "RegressionResult",
    "PolyFitResult",
    "PublishedCheck",
    "StepOutcome",
    "ReportBundle",
]
