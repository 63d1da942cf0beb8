from typing import Optional, Sequence, Tuple
from instance.schema import Arrival
from policies.base import Policy, Choice
from policies.constants import PolicyKey


class GreedyPolicy(Policy):
    """Match to the available neighbor with the highest reward, ties to the lowest id."""

    key = PolicyKey.GREEDY.value

    def choose(self, arrival: Arrival, available: Sequence[Tuple[int, float]]) -> Optional[Choice]:
        if not available:
            return None
        resource, reward = min(available, key=lambda item: (-item[1], item[0]))
        return Choice.model_construct(resource=resource, reduced_price=reward, seed=None, epoch=None)
