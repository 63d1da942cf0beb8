from typing import Callable, Dict, List
from policies.base import Policy
from policies.constants import PolicyKey
from policies.greedy import GreedyPolicy
from policies.seeded import (
    periodic_reranking,
    perturbed_greedy,
    ranking,
    frequent_reranking,
    rerank_on_return,
)
from policies.fluid_rerank import FluidReranking
from policies.tradeoff import TradeoffFunction


class PolicyRegistry:
    """Registry for all online policies."""

    policy_factory_mapping: Dict[str, Callable[[TradeoffFunction], Policy]] = {}
    policy_doc_mapping: Dict[str, str] = {}

    POLICY_KEYS = [
        PolicyKey.GREEDY,
        PolicyKey.RANKING,
        PolicyKey.PERTURBED_GREEDY,
        PolicyKey.RANDOM,
        PolicyKey.RERANK_ON_RETURN,
        PolicyKey.PERIODIC_RERANKING,
        PolicyKey.FLUID,
    ]

    @classmethod
    def get_policy(cls, key: str, beta: float) -> Policy:
        """Build a fresh policy object for key."""
        if not cls.policy_factory_mapping:
            cls.run_registry()
        if not cls.check_policy_key(key):
            raise ValueError(f"Unknown policy '{key}', choose from {cls.get_all_policy_keys()}")
        return cls.policy_factory_mapping[str(key)](TradeoffFunction(beta=beta))

    @classmethod
    def get_all_policy_keys(cls) -> List[str]:
        """Get all policy keys."""
        return [k.value for k in cls.POLICY_KEYS]

    @classmethod
    def check_policy_key(cls, key: str) -> bool:
        """Check if a policy key is valid."""
        return str(key) in cls.get_all_policy_keys()

    @classmethod
    def get_policy_info(cls, key: str) -> str:
        """Get policy description."""
        if not cls.policy_doc_mapping:
            cls.run_registry()
        return cls.policy_doc_mapping[str(key)]

    @classmethod
    def register_policy(cls, key: str, factory: Callable[[TradeoffFunction], Policy], doc: str) -> None:
        """
        Register a new policy.

        Args:
            key: Selector string used on the command line
            factory: Builds the policy from a tradeoff function
            doc: short description of the policy
        """
        cls.policy_factory_mapping[str(key)] = factory
        cls.policy_doc_mapping[str(key)] = doc

    @classmethod
    def run_registry(cls):
        """Register the built-in policies."""

        cls.register_policy(
            key=PolicyKey.GREEDY,
            factory=lambda tradeoff: GreedyPolicy(),
            doc="Highest-reward available neighbor, ties to the lowest id."
        )

        cls.register_policy(
            key=PolicyKey.RANKING,
            factory=ranking,
            doc="One random rank order for the whole horizon; best-ranked available neighbor, rewards ignored."
        )

        cls.register_policy(
            key=PolicyKey.PERTURBED_GREEDY,
            factory=perturbed_greedy,
            doc="Highest reduced price r(1-g(y)) with one seed per resource for the whole horizon."
        )

        cls.register_policy(
            key=PolicyKey.RANDOM,
            factory=frequent_reranking,
            doc="Fresh seeds at every arrival; uniform among available neighbors when rewards are equal."
        )

        cls.register_policy(
            key=PolicyKey.RERANK_ON_RETURN,
            factory=rerank_on_return,
            doc="A resource draws a fresh seed every time it returns from use."
        )

        cls.register_policy(
            key=PolicyKey.PERIODIC_RERANKING,
            factory=periodic_reranking,
            doc="Fresh seeds for all resources every d time units (epochs anchored at time 0)."
        )

        cls.register_policy(
            key=PolicyKey.FLUID,
            factory=FluidReranking,
            doc="Survival and availability weighted aggregate of per-edge uniforms; handles stochastic usage."
        )
