from collections import deque
from typing import Deque, Dict, Optional, Sequence, Tuple
from instance.schema import Arrival
from fluid.availability import AvailabilityProcess
from fluid.seed import aggregate_seed
from policies.base import Policy, Choice, PolicyContext
from policies.constants import PolicyKey
from policies.seeds import SeedVector
from policies.tradeoff import TradeoffFunction


class FluidReranking(Policy):
    """Reranking for stochastic usage.

    Every edge (i, t) draws a fresh uniform z_i(t); the seed of i at t is
    the survival-weighted sum of eta_i(tau) * z_i(tau) over the arrivals
    adjacent to i so far. eta comes from the greedy availability process
    on those same arrivals and is built incrementally, one arrival at a time.
    """

    key = PolicyKey.FLUID.value

    def __init__(self, tradeoff: TradeoffFunction):
        self.tradeoff = tradeoff

    def reset(self, context: PolicyContext, seeds: Optional[SeedVector]) -> None:
        if seeds is None:
            raise ValueError("fluid reranking needs a seed vector")
        super().reset(context, seeds)
        self.processes = {i: AvailabilityProcess(u) for i, u in enumerate(context.usages)}
        # (arrival index, time, eta) of adjacent arrivals that still carry weight
        self.terms: Dict[int, Deque[Tuple[int, int, float]]] = {i: deque() for i in range(len(context.usages))}

    def seed_of(self, resource: int, arrival: Arrival) -> float:
        usage = self.context.usages[resource]
        window = self.terms[resource]
        while window and arrival.time - window[0][1] >= usage.max_duration:
            window.popleft()
        return aggregate_seed(
            usage,
            arrival.time,
            ((time, eta, self.seeds.get(resource, index)) for index, time, eta in window),
        )

    def choose(self, arrival: Arrival, available: Sequence[Tuple[int, float]]) -> Optional[Choice]:
        for i in arrival.neighbors:
            eta = self.processes[i].push(arrival.time)
            self.terms[i].append((arrival.id, arrival.time, eta))

        best = None
        best_key = None
        for resource, reward in available:
            y = self.seed_of(resource, arrival)
            price = self.tradeoff.reduced_price(reward, y)
            key = (-price, resource)
            if best_key is None or key < best_key:
                best_key = key
                best = Choice.model_construct(resource=resource, reduced_price=price, seed=y, epoch=arrival.id)
        return best
