import math
from functools import partial
from typing import List, Optional
import numpy as np
from pydantic import BaseModel, Field
from instance.schema import Instance
from engine.simulator import simulate
from policies.registry import PolicyRegistry
from policies.seeded import requires_shared_d
from policies.seeds import SeedVector
from util.errors import UsageModelMismatch
from util.logger import logger
from util.parallel import run_trials


class RunStats(BaseModel):
    """Reward statistics of one policy on one instance."""
    instance_id: str
    policy: str
    beta: float
    trials: int
    root_seed: int
    mean: float
    se: float
    min: float
    max: float
    opt: Optional[float] = Field(default=None, description="Brute-force optimum when computed")
    lp: Optional[float] = Field(default=None, description="LP upper bound when computed")
    ratio_opt: Optional[float] = None
    ratio_lp: Optional[float] = None


def duration_rng(root: int, trial: int) -> np.random.Generator:
    """Usage-duration stream of a trial, separate from its seed vector."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([root, trial, 1])))


def trial_reward(instance: Instance, key: str, beta: float, root: int, trial: int) -> float:
    policy = PolicyRegistry.get_policy(key, beta)
    trace = simulate(instance, policy, SeedVector(root, trial), duration_rng(root, trial))
    return trace.total_reward


def summarize(instance: Instance, key: str, beta: float, root: int, rewards: List[float]) -> RunStats:
    n = len(rewards)
    mean = math.fsum(rewards) / n
    se = float(np.std(rewards, ddof=1)) / math.sqrt(n) if n > 1 else 0.0
    return RunStats(
        instance_id=instance.label(),
        policy=str(key),
        beta=beta,
        trials=n,
        root_seed=root,
        mean=mean,
        se=se,
        min=float(min(rewards)),
        max=float(max(rewards)),
    )


def run_policy(
    instance: Instance,
    key: str,
    beta: float,
    trials: int,
    root_seed: int = 0,
    workers: int = 1,
) -> RunStats:
    """Run `trials` independent simulations; trial k uses seeds (root_seed, k)."""
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    if requires_shared_d(PolicyRegistry.get_policy(key, beta)) and instance.shared_d() is None:
        raise UsageModelMismatch(f"{key} requires deterministic shared d")

    fn = partial(trial_reward, instance, str(key), beta, root_seed)
    stats = summarize(instance, key, beta, root_seed, run_trials(fn, trials, workers))
    logger.log_run_stats(stats.instance_id, stats.policy, stats)
    return stats
