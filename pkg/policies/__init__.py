from .constants import PolicyKey, RerankSchedule, DEFAULT_BETA
from .tradeoff import TradeoffFunction, reduced_price
from .seeds import SeedVector
from .base import Policy, PolicyContext, Choice, epoch_of
from .greedy import GreedyPolicy
from .seeded import SeededPolicy, periodic_reranking, perturbed_greedy, ranking, frequent_reranking, rerank_on_return
from .fluid_rerank import FluidReranking
from .registry import PolicyRegistry

__all__ = [
    "PolicyKey",
    "RerankSchedule",
    "DEFAULT_BETA",
    "TradeoffFunction",
    "reduced_price",
    "SeedVector",
    "Policy",
    "PolicyContext",
    "Choice",
    "epoch_of",
    "GreedyPolicy",
    "SeededPolicy",
    "periodic_reranking",
    "perturbed_greedy",
    "ranking",
    "frequent_reranking",
    "rerank_on_return",
    "FluidReranking",
    "PolicyRegistry",
    ]
