from abc import ABC, abstractmethod
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union
from pydantic import BaseModel, ConfigDict, Field
from instance.schema import Instance, Arrival, DeterministicUsage, DiscreteUsage
from policies.constants import RerankSchedule
from policies.seeds import SeedVector


class PolicyContext(BaseModel):
    """What a policy may know before the first arrival: the offline side only."""
    model_config = ConfigDict(frozen=True)

    rewards: List[float]
    usages: List[Union[DeterministicUsage, DiscreteUsage]] = Field(description="Usage model per resource")
    shared_d: Optional[int] = Field(default=None, description="Common deterministic duration, if any")

    @classmethod
    def from_instance(cls, instance: Instance) -> "PolicyContext":
        return cls(
            rewards=instance.rewards,
            usages=[instance.usage_of(r.id) for r in instance.resources],
            shared_d=instance.shared_d(),
        )


class Choice(BaseModel):
    """A policy decision for one arrival."""
    resource: int
    reduced_price: Optional[float] = None
    seed: Optional[float] = None
    epoch: Optional[int] = None


class Policy(ABC):
    """Online policy: sees one arrival at a time and its available neighbors."""

    key: str = ""

    def reset(self, context: PolicyContext, seeds: Optional[SeedVector]) -> None:
        """Prepare for a fresh run."""
        self.context = context
        self.seeds = seeds

    @abstractmethod
    def choose(self, arrival: Arrival, available: Sequence[Tuple[int, float]]) -> Optional[Choice]:
        """Pick one of the available (resource, reward) pairs or None."""

    def observe(self, arrival: Arrival, choice: Optional[Choice], busy_until: Optional[int]) -> None:
        """Called by the engine after each decision with the resulting busy-until tick."""


def epoch_of(
    schedule: RerankSchedule,
    resource: int,
    arrival_index: int,
    arrival_time: int,
    history: Mapping[int, Sequence[int]],
    d: Optional[int] = None,
) -> int:
    """Epoch whose seed the resource uses at this arrival.

    history maps resource -> busy-until ticks of its past matches; a return
    is complete once the current time is past its busy-until tick.
    """
    if schedule == RerankSchedule.NEVER:
        return 0
    if schedule == RerankSchedule.EVERY_ARRIVAL:
        return arrival_index
    if schedule == RerankSchedule.EVERY_PERIOD:
        if not d:
            raise ValueError("periodic reranking needs a positive shared duration d")
        return arrival_time // d
    if schedule == RerankSchedule.ON_RETURN:
        return sum(1 for busy_until in history.get(resource, ()) if arrival_time > busy_until)
    raise ValueError(f"unknown schedule {schedule}")


def empty_history(n_resources: int) -> Dict[int, List[int]]:
    return {i: [] for i in range(n_resources)}
