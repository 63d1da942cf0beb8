import math
from typing import List, Optional, Sequence, Union
import numpy as np
from pydantic import BaseModel, Field
from instance.schema import DeterministicUsage, DiscreteUsage
from util.logger import logger

MIN_MC_SAMPLES = 10_000


class AvailabilityProfile(BaseModel):
    """eta(tau): probability the single unit is free at each arrival of the process."""
    times: List[int] = Field(default_factory=list)
    eta: List[float] = Field(default_factory=list)
    se: Optional[List[float]] = Field(default=None, description="Binomial standard errors, Monte Carlo only")
    samples: Optional[int] = None


class AvailabilityProcess:
    """Single unit matched greedily at every arrival where it is free.

    Arrivals are pushed one at a time, so eta at an arrival only depends on
    arrivals before it. The unit matched at s is free at t iff
    time_t > time_s + D, hence
    eta_t = sum_s eta_s * P(time_{t-1} - time_s <= D < time_t - time_s).
    """

    def __init__(self, usage: Union[DeterministicUsage, DiscreteUsage]):
        self.usage = usage
        self.times: List[int] = []
        self.etas: List[float] = []
        self._start = 0

    def _window_prob(self, lo: int, hi: int) -> float:
        # P(lo <= D < hi) for integer D
        if hi <= lo:
            return 0.0
        return self.usage.cdf(hi - 1) - self.usage.cdf(lo - 1)

    def push(self, time: int) -> float:
        if self.times and time < self.times[-1]:
            raise ValueError(f"arrival times must be nondecreasing, got {time} after {self.times[-1]}")
        if not self.times:
            eta = 1.0
        else:
            prev = self.times[-1]
            max_d = self.usage.max_duration
            # matches older than max_d before the previous arrival returned before it
            while self._start < len(self.times) and prev - self.times[self._start] > max_d:
                self._start += 1
            eta = math.fsum(
                self.etas[s] * self._window_prob(prev - self.times[s], time - self.times[s])
                for s in range(self._start, len(self.times))
            )
            eta = min(1.0, max(0.0, eta))
        self.times.append(time)
        self.etas.append(eta)
        return eta


def eta_dp(usage: Union[DeterministicUsage, DiscreteUsage], times: Sequence[int]) -> AvailabilityProfile:
    """Exact availability probabilities of the (F, times) process."""
    process = AvailabilityProcess(usage)
    etas = [process.push(int(t)) for t in times]
    return AvailabilityProfile(times=[int(t) for t in times], eta=etas)


def eta_mc(
    usage: Union[DeterministicUsage, DiscreteUsage],
    times: Sequence[int],
    n_samples: int,
    rng: Union[int, np.random.Generator, None] = None,
) -> AvailabilityProfile:
    """Monte Carlo estimate of the same probabilities, used as an independent oracle."""
    if n_samples < MIN_MC_SAMPLES:
        raise ValueError(f"eta_mc needs at least {MIN_MC_SAMPLES} samples, got {n_samples}")
    rng = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)

    busy_until = np.full(n_samples, np.iinfo(np.int64).min, dtype=np.int64)
    freq, se = [], []
    for t in times:
        free = t > busy_until
        p = float(free.mean())
        freq.append(p)
        se.append(math.sqrt(p * (1.0 - p) / n_samples))
        n_free = int(free.sum())
        if n_free:
            busy_until[free] = t + usage.sample(rng, size=n_free)

    logger.debug(f"eta_mc: {len(times)} arrivals, {n_samples} samples")
    return AvailabilityProfile(times=[int(t) for t in times], eta=freq, se=se, samples=n_samples)
