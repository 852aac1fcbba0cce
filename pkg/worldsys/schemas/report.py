"""
Reproduction report schemas
"""
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field


class PublishedCheck(BaseModel):
    """One computed statistic next to its published value"""
    model_config = ConfigDict(frozen=True)

    name: str
    statistic: str
    value: Optional[float] = None
    published: Optional[float] = None
    published_text: str = ""
    criterion: str = ""
    passed: Optional[bool] = None
    precision: int = 4


class StepOutcome(BaseModel):
    model_config = ConfigDict(frozen=True)

    step: str
    status: str  # ok | skipped | error
    message: str = ""
    checks: List[PublishedCheck] = Field(default_factory=list)


class ReportBundle(BaseModel):
    model_config = ConfigDict(frozen=True)

    fits: List[Dict[str, Any]] = Field(default_factory=list)
    regressions: List[Dict[str, Any]] = Field(default_factory=list)
    curve_fits: List[Dict[str, Any]] = Field(default_factory=list)
    traces: List[Dict[str, Any]] = Field(default_factory=list)
    figures: List[str] = Field(default_factory=list)
    artifacts: List[str] = Field(default_factory=list)
    steps: List[StepOutcome] = Field(default_factory=list)
    provenance: Dict[str, Any] = Field(default_factory=dict)

    @property
    def checks(self) -> List[PublishedCheck]:
        return [check for step in self.steps for check in step.checks]

    @property
    def pass_count(self) -> int:
        return sum(1 for check in self.checks if check.passed)

    @property
    def failed_steps(self) -> List[str]:
        return [step.step for step in self.steps if step.status == "error"]
