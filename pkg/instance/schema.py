import bisect
from typing import List, Literal, Optional, Tuple, Union, Dict
from typing_extensions import Annotated
import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class DeterministicUsage(BaseModel):
    """Resource is busy for exactly d ticks after every match."""
    model_config = ConfigDict(frozen=True)

    kind: Literal["det"] = "det"
    d: int = Field(description="Usage duration in ticks, must be positive")

    @property
    def max_duration(self) -> int:
        return self.d

    def cdf(self, x: int) -> float:
        """P(duration <= x)."""
        return 1.0 if x >= self.d else 0.0

    def survival(self, x: int) -> float:
        """P(duration > x)."""
        return 1.0 - self.cdf(x)

    def sample(self, rng: Optional[np.random.Generator] = None, size: Optional[int] = None) -> Union[int, np.ndarray]:
        return self.d if size is None else np.full(size, self.d, dtype=np.int64)


class DiscreteUsage(BaseModel):
    """Duration drawn from finitely many integer atoms."""
    model_config = ConfigDict(frozen=True)

    kind: Literal["disc"] = "disc"
    atoms: List[Tuple[int, float]] = Field(description="(duration ticks, probability) pairs, durations increasing")

    @property
    def durations(self) -> List[int]:
        return [dur for dur, _ in self.atoms]

    @property
    def probabilities(self) -> List[float]:
        return [p for _, p in self.atoms]

    @property
    def max_duration(self) -> int:
        return self.atoms[-1][0]

    def cdf(self, x: int) -> float:
        """P(duration <= x), summed over atoms so integer x is exact."""
        k = bisect.bisect_right(self.durations, x)
        return float(sum(self.probabilities[:k]))

    def survival(self, x: int) -> float:
        """P(duration > x)."""
        k = bisect.bisect_right(self.durations, x)
        return float(sum(self.probabilities[k:]))

    def sample(self, rng: np.random.Generator, size: Optional[int] = None) -> Union[int, np.ndarray]:
        """One duration, or an int64 array of `size` draws."""
        draws = rng.choice(np.asarray(self.durations, dtype=np.int64), size=size, p=np.asarray(self.probabilities))
        return draws if size is not None else int(draws)


UsageModel = Annotated[Union[DeterministicUsage, DiscreteUsage], Field(discriminator="kind")]


class Resource(BaseModel):
    """Offline vertex with unit inventory."""
    model_config = ConfigDict(frozen=True)

    id: int
    reward: float = Field(default=1.0, description="Reward r_i collected per match")
    usage: Optional[UsageModel] = Field(default=None, description="Per-resource usage model, falls back to d_default")


class Arrival(BaseModel):
    """Online vertex, revealed at its time together with its edges."""
    model_config = ConfigDict(frozen=True)

    id: int
    time: int = Field(description="Arrival tick")
    neighbors: List[int] = Field(default_factory=list, description="Adjacent resource ids")


class Instance(BaseModel):
    """Problem instance: resources, usage model and ordered arrivals."""
    model_config = ConfigDict(frozen=True)

    d_default: int = Field(description="Deterministic usage duration for resources without their own usage")
    resources: List[Resource]
    arrivals: List[Arrival]
    name: Optional[str] = Field(default=None, description="Free-form label used in reports")

    @property
    def n_resources(self) -> int:
        return len(self.resources)

    @property
    def n_arrivals(self) -> int:
        return len(self.arrivals)

    @property
    def times(self) -> List[int]:
        return [a.time for a in self.arrivals]

    @property
    def rewards(self) -> List[float]:
        return [r.reward for r in self.resources]

    def usage_of(self, resource: int) -> Union[DeterministicUsage, DiscreteUsage]:
        usage = self.resources[resource].usage
        return usage if usage is not None else DeterministicUsage(d=self.d_default)

    def shared_d(self) -> Optional[int]:
        """The common deterministic duration, or None when usage differs or is random."""
        ds = set()
        for r in self.resources:
            usage = self.usage_of(r.id)
            if not isinstance(usage, DeterministicUsage):
                return None
            ds.add(usage.d)
        if not ds:
            return self.d_default
        return ds.pop() if len(ds) == 1 else None

    def edges(self) -> List[Tuple[int, int]]:
        """All edges as (resource, arrival), ordered by arrival then resource."""
        return [(i, a.id) for a in self.arrivals for i in sorted(a.neighbors)]

    def adjacency(self) -> Dict[int, List[int]]:
        """A_i: arrival indices adjacent to each resource, in arrival order."""
        adj: Dict[int, List[int]] = {r.id: [] for r in self.resources}
        for a in self.arrivals:
            for i in a.neighbors:
                adj.setdefault(i, []).append(a.id)
        return adj

    def label(self) -> str:
        return self.name or f"instance[{self.n_resources}x{self.n_arrivals}]"
