import math
from enum import Enum
from typing import Any, Dict, List, Optional
from pydantic import BaseModel, Field


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"

    def __str__(self) -> str:
        return self.value


class DualCertificate(BaseModel):
    """lambda per arrival and sparse theta per (resource, arrival) for one run."""
    lam: List[float] = Field(description="lambda_t per arrival index")
    theta: Dict[int, Dict[int, float]] = Field(default_factory=dict, description="theta[i][t], zero when absent")

    def theta_at(self, resource: int, arrival: int) -> float:
        return self.theta.get(resource, {}).get(arrival, 0.0)

    def window_sum(self, resource: int, start: int, end: int) -> float:
        """sum of theta[resource][tau] for start <= tau <= end."""
        row = self.theta.get(resource, {})
        return math.fsum(v for tau, v in row.items() if start <= tau <= end)

    def total(self) -> float:
        return math.fsum(self.lam) + math.fsum(v for row in self.theta.values() for v in row.values())


class ConstraintCheck(BaseModel):
    """Sum of the certificate against the run's reward."""
    passed: bool
    residual: float = Field(description="certificate total minus trace reward")
    certificate_total: float
    reward: float


class EdgeAuditReport(BaseModel):
    """Monte Carlo estimate of lambda_t + sum theta over the edge's window."""
    instance_id: str = ""
    resource: int
    arrival: int
    samples: int
    mean: float
    se: float
    target: float = Field(description="alpha * r_i")
    verdict: Verdict


class ScanPoint(BaseModel):
    """PR(y1, 1) at one grid value of y1."""
    y1: float
    matched_prev: bool = Field(description="resource matched in the period before the arrival's period")
    available: bool = Field(description="resource free at some arrival of p(t)")
    match_index: Optional[int] = Field(default=None, description="arrival it was matched to in that period")
    critical: float = Field(description="critical threshold y^c_t(y1)")

    @property
    def band(self) -> int:
        """0: matched earlier and back in time, 1: matched and still busy, 2: not matched."""
        if not self.matched_prev:
            return 2
        return 0 if self.available else 1


class ScanViolation(BaseModel):
    check: str
    y1: float
    y2: Optional[float] = None
    detail: str
    seeds: Dict[str, Any] = Field(default_factory=dict, description="root, trial, pins and every seed read")


class StructuralScanReport(BaseModel):
    instance_id: str = ""
    resource: int
    arrival: int
    grid: int
    points: List[ScanPoint] = Field(default_factory=list)
    z1: float
    z2: float
    critical_at_one: float
    conditional_mean: Optional[float] = Field(default=None, description="midpoint-grid mean of lambda_t + sum theta over (y1, y2)")
    combined_bound: Optional[float] = Field(default=None, description="r_i * f(z1, z2, y^c_t(1))")
    violations: List[ScanViolation] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations
