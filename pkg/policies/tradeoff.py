import math
from pydantic import BaseModel, ConfigDict, Field, field_validator
from policies.constants import DEFAULT_BETA


class TradeoffFunction(BaseModel):
    """g(y) = exp(beta * (y - 1)) and its antiderivative G(y) = g(y) / beta."""
    model_config = ConfigDict(frozen=True)

    beta: float = Field(default=DEFAULT_BETA, description="Steepness of g, in (0, 1]")

    @field_validator("beta")
    @classmethod
    def _check_beta(cls, v: float) -> float:
        if not 0.0 < v <= 1.0:
            raise ValueError(f"beta must lie in (0, 1], got {v}")
        return v

    def g(self, y: float) -> float:
        return math.exp(self.beta * (y - 1.0))

    def G(self, y: float) -> float:
        return self.g(y) / self.beta

    def reduced_price(self, reward: float, seed: float) -> float:
        return reward * (1.0 - self.g(seed))

    def inverse_price(self, reward: float, price: float) -> float:
        """Seed y with reward * (1 - g(y)) == price; nan when price >= reward."""
        if reward <= 0 or price >= reward:
            return float("nan")
        return 1.0 + math.log(1.0 - price / reward) / self.beta


def reduced_price(reward: float, seed: float, tradeoff: TradeoffFunction) -> float:
    """r * (1 - g(y)); zero iff the seed is 1 or the reward is 0."""
    if not 0.0 <= seed <= 1.0:
        raise ValueError(f"seed must lie in [0, 1], got {seed}")
    return tradeoff.reduced_price(reward, seed)
