from enum import Enum

DEFAULT_BETA = 0.89


class PolicyKey(str, Enum):
    """Policy selector strings accepted by the command line."""
    GREEDY = "greedy"
    RANKING = "ranking"
    PERTURBED_GREEDY = "pg"
    RANDOM = "random"
    RERANK_ON_RETURN = "ror"
    PERIODIC_RERANKING = "pr"
    FLUID = "fluid"

    def __str__(self) -> str:
        return self.value


class RerankSchedule(str, Enum):
    """When a seeded policy draws fresh seeds"""
    NEVER = "never"
    EVERY_ARRIVAL = "every_arrival"
    EVERY_PERIOD = "every_period"
    ON_RETURN = "on_return"

    def __str__(self) -> str:
        return self.value
