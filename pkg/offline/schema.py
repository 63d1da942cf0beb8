from enum import Enum
from typing import List, Optional, Tuple
from pydantic import BaseModel, Field


class OfflineMethod(str, Enum):
    """Offline benchmark used"""
    BRUTE_FORCE = "brute_force"
    LP = "lp"

    def __str__(self) -> str:
        return self.value


class OfflineStatus(str, Enum):
    """Outcome of an offline computation"""
    OPTIMAL = "optimal"
    TOO_LARGE = "too_large"

    def __str__(self) -> str:
        return self.value


class OfflineResult(BaseModel):
    """Offline benchmark value with its solution."""
    method: OfflineMethod
    status: OfflineStatus = OfflineStatus.OPTIMAL
    value: Optional[float] = Field(default=None, description="Objective value, None when not computed")
    matching: Optional[List[Tuple[int, int]]] = Field(default=None, description="Integral (resource, arrival) pairs")
    fractional: Optional[List[Tuple[int, int, float]]] = Field(default=None, description="LP edge weights (resource, arrival, x)")
    duals: Optional[List[float]] = Field(default=None, description="LP constraint duals in model row order")
    iterations: Optional[int] = None
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.status == OfflineStatus.OPTIMAL
