from typing import Optional, Sequence, Tuple
from instance.schema import Arrival
from policies.base import Policy, Choice, PolicyContext, epoch_of, empty_history
from policies.constants import PolicyKey, RerankSchedule
from policies.seeds import SeedVector
from policies.tradeoff import TradeoffFunction
from util.errors import UsageModelMismatch


class SeededPolicy(Policy):
    """Reduced-price greedy over uniform seeds, refreshed on a rerank schedule.

    Covers Perturbed Greedy (never), Random (every arrival), RoR (on
    return) and PR (every period of length d). With rank_only the policy
    ignores rewards and picks the lowest seed, which is classic Ranking.
    A seed of exactly 1 gives a zero reduced price and takes the resource
    out of contention for that epoch.
    """

    def __init__(self, key: str, schedule: RerankSchedule, tradeoff: TradeoffFunction, rank_only: bool = False):
        self.key = key
        self.schedule = schedule
        self.tradeoff = tradeoff
        self.rank_only = rank_only

    def reset(self, context: PolicyContext, seeds: Optional[SeedVector]) -> None:
        if seeds is None:
            raise ValueError(f"policy {self.key} needs a seed vector")
        if self.schedule == RerankSchedule.EVERY_PERIOD and context.shared_d is None:
            raise UsageModelMismatch(f"{self.key} requires deterministic shared d")
        super().reset(context, seeds)
        self.history = empty_history(len(context.rewards))

    def epoch(self, resource: int, arrival: Arrival) -> int:
        return epoch_of(self.schedule, resource, arrival.id, arrival.time, self.history, self.context.shared_d)

    def choose(self, arrival: Arrival, available: Sequence[Tuple[int, float]]) -> Optional[Choice]:
        best = None
        best_key = None
        for resource, reward in available:
            epoch = self.epoch(resource, arrival)
            seed = self.seeds.get(resource, epoch)
            if seed >= 1.0:
                continue
            price = self.tradeoff.reduced_price(reward, seed)
            key = (seed, resource) if self.rank_only else (-price, resource)
            if best_key is None or key < best_key:
                best_key = key
                best = Choice.model_construct(resource=resource, reduced_price=price, seed=seed, epoch=epoch)
        return best

    def observe(self, arrival: Arrival, choice: Optional[Choice], busy_until: Optional[int]) -> None:
        if choice is not None and busy_until is not None:
            self.history[choice.resource].append(busy_until)


def periodic_reranking(tradeoff: TradeoffFunction) -> SeededPolicy:
    return SeededPolicy(PolicyKey.PERIODIC_RERANKING.value, RerankSchedule.EVERY_PERIOD, tradeoff)


def perturbed_greedy(tradeoff: TradeoffFunction) -> SeededPolicy:
    return SeededPolicy(PolicyKey.PERTURBED_GREEDY.value, RerankSchedule.NEVER, tradeoff)


def ranking(tradeoff: TradeoffFunction) -> SeededPolicy:
    return SeededPolicy(PolicyKey.RANKING.value, RerankSchedule.NEVER, tradeoff, rank_only=True)


def frequent_reranking(tradeoff: TradeoffFunction) -> SeededPolicy:
    return SeededPolicy(PolicyKey.RANDOM.value, RerankSchedule.EVERY_ARRIVAL, tradeoff)


def rerank_on_return(tradeoff: TradeoffFunction) -> SeededPolicy:
    return SeededPolicy(PolicyKey.RERANK_ON_RETURN.value, RerankSchedule.ON_RETURN, tradeoff)


def requires_shared_d(policy: Policy) -> bool:
    return isinstance(policy, SeededPolicy) and policy.schedule == RerankSchedule.EVERY_PERIOD
