import bisect
from typing import List, Optional, Sequence
import numpy as np
from instance.schema import Instance, DeterministicUsage
from engine.trace import ArrivalRecord, MatchingTrace
from policies.base import Policy, PolicyContext
from policies.seeds import SeedVector
from util.errors import PolicyContractError


class AvailabilityState:
    """busy_until per resource; None means never matched."""

    def __init__(self, n_resources: int):
        self.busy_until: List[Optional[int]] = [None] * n_resources

    def is_available(self, resource: int, time: int) -> bool:
        b = self.busy_until[resource]
        return b is None or time > b

    def occupy(self, resource: int, time: int, duration: int) -> int:
        self.busy_until[resource] = time + duration
        return self.busy_until[resource]


def simulate(
    instance: Instance,
    policy: Policy,
    seeds: Optional[SeedVector] = None,
    duration_rng: Optional[np.random.Generator] = None,
) -> MatchingTrace:
    """Run the policy over the arrivals in index order and record every decision."""
    context = PolicyContext.from_instance(instance)
    policy.reset(context, seeds)
    state = AvailabilityState(instance.n_resources)
    rewards = context.rewards
    usages = context.usages

    records = []
    for arrival in instance.arrivals:
        available = [(i, rewards[i]) for i in sorted(arrival.neighbors) if state.is_available(i, arrival.time)]
        choice = policy.choose(arrival, available)

        busy_until = None
        duration = None
        if choice is not None:
            i = choice.resource
            if i not in arrival.neighbors:
                raise PolicyContractError(f"{policy.key} matched arrival {arrival.id} to non-neighbor {i}")
            if not state.is_available(i, arrival.time):
                raise PolicyContractError(f"{policy.key} matched arrival {arrival.id} to busy resource {i}")
            usage = usages[i]
            if not isinstance(usage, DeterministicUsage) and duration_rng is None:
                raise ValueError("stochastic usage needs a duration_rng")
            duration = usage.sample(duration_rng)
            busy_until = state.occupy(i, arrival.time, duration)

        policy.observe(arrival, choice, busy_until)
        records.append(ArrivalRecord.model_construct(
            arrival_id=arrival.id,
            time=arrival.time,
            matched=None if choice is None else choice.resource,
            reward=None if choice is None else rewards[choice.resource],
            reduced_price=None if choice is None else choice.reduced_price,
            seed=None if choice is None else choice.seed,
            epoch=None if choice is None else choice.epoch,
            duration=duration,
            available=[i for i, _ in available],
        ))

    return MatchingTrace.model_construct(policy=policy.key, d=context.shared_d, records=records)


def window_end_from_times(times: Sequence[int], t: int, d: int) -> int:
    """Largest index tau with times[tau] <= times[t] + d; never below t."""
    return max(t, bisect.bisect_right(times, times[t] + d) - 1)


def window_end(instance: Instance, t: int, d: Optional[int] = None) -> int:
    """t(d): the last arrival at or before a(t) + d (t itself when nothing follows within d)."""
    d = d if d is not None else instance.shared_d()
    if d is None:
        raise ValueError("window_end needs a deterministic shared d")
    if not 0 <= t < instance.n_arrivals:
        raise IndexError(f"arrival index {t} out of range")
    return window_end_from_times(instance.times, t, d)


def period_index(time: int, d: int) -> int:
    """k(t): period containing the time, offset by the dummy period so k >= 2."""
    return time // d + 2


def period_prefix(instance: Instance, t: int, d: int) -> List[int]:
    """p(t): arrivals of t's period up to and including t."""
    k = period_index(instance.arrivals[t].time, d)
    return [a.id for a in instance.arrivals[: t + 1] if period_index(a.time, d) == k]
