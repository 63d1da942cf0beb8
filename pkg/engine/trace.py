import json
import math
from typing import List, Optional, Tuple
from pydantic import BaseModel, Field


class ArrivalRecord(BaseModel):
    """Outcome of one arrival in a run."""
    arrival_id: int
    time: int
    matched: Optional[int] = Field(default=None, description="Matched resource id or None")
    reward: Optional[float] = Field(default=None, description="Reward of the matched resource")
    reduced_price: Optional[float] = None
    seed: Optional[float] = Field(default=None, description="Seed the policy used for the matched resource")
    epoch: Optional[int] = None
    duration: Optional[int] = Field(default=None, description="Sampled usage duration of the match")
    available: List[int] = Field(default_factory=list, description="Available neighbors at the arrival")


class MatchingTrace(BaseModel):
    """Complete record of one online run."""
    policy: str = ""
    d: Optional[int] = Field(default=None, description="Shared deterministic duration, if any")
    records: List[ArrivalRecord] = Field(default_factory=list)

    @property
    def total_reward(self) -> float:
        return math.fsum(r.reward for r in self.records if r.matched is not None)

    @property
    def times(self) -> List[int]:
        return [r.time for r in self.records]

    def matches(self) -> List[Tuple[int, int]]:
        """(resource, arrival) pairs in arrival order."""
        return [(r.matched, r.arrival_id) for r in self.records if r.matched is not None]

    def match_count(self) -> int:
        return sum(1 for r in self.records if r.matched is not None)

    def available_at(self, resource: int, arrival: int) -> bool:
        """Whether the resource was free at the arrival, adjacent or not."""
        now = self.records[arrival].time
        for r in reversed(self.records[:arrival]):
            if r.matched == resource:
                return now > r.time + r.duration
        return True

    def to_jsonl(self) -> str:
        fields = {"arrival_id", "matched", "reduced_price", "duration", "available", "time", "seed", "epoch", "reward"}
        return "".join(json.dumps(r.model_dump(include=fields)) + "\n" for r in self.records)

    @classmethod
    def from_jsonl(cls, text: str, policy: str = "", d: Optional[int] = None) -> "MatchingTrace":
        records = [ArrivalRecord.model_validate_json(line) for line in text.splitlines() if line.strip()]
        return cls(policy=policy, d=d, records=records)
