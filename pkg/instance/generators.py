from typing import Optional, Sequence
import numpy as np
from instance.schema import Instance, Resource, Arrival, DiscreteUsage


def gen_example1(d: int, gap_small: int, gap_large: int) -> Instance:
    """Two unit-reward resources, four arrivals; fixed ranks are wrong for one of the two pairs.

    Arrivals 0 and 2 see both resources, arrival 1 only resource 1 and
    arrival 3 only resource 0. Pairs are gap_small apart and separated by
    gap_large, so decisions on the first pair never affect the second.
    """
    if not 0 < gap_small < d < gap_large:
        raise ValueError(f"need 0 < gap_small < d < gap_large, got gap_small={gap_small}, d={d}, gap_large={gap_large}")

    times = [0, gap_small, gap_small + gap_large, 2 * gap_small + gap_large]
    edges = [[0, 1], [1], [0, 1], [0]]
    return Instance(
        d_default=d,
        resources=[Resource(id=0, reward=1.0), Resource(id=1, reward=1.0)],
        arrivals=[Arrival(id=k, time=t, neighbors=e) for k, (t, e) in enumerate(zip(times, edges))],
        name="example1",
    )


def gen_kvv_window(n: int, blocks: int, d: int, permute: bool = True, rng_seed: int = 0) -> Instance:
    """Upper-triangular hard instance for online matching, squeezed inside one usage window per block.

    Block b starts at b*(d+n); its arrival j has edges to the images of
    resources j..n-1 under a block-local permutation (identity when
    permute is False). Consecutive blocks are more than d apart, so every
    resource is free again when the next block begins.
    """
    if n < 1 or blocks < 1:
        raise ValueError(f"n and blocks must be at least 1, got n={n}, blocks={blocks}")
    if d <= n:
        raise ValueError(f"d must exceed n so a block fits inside one window, got d={d}, n={n}")

    rng = np.random.default_rng(rng_seed)
    arrivals = []
    for b in range(blocks):
        perm = rng.permutation(n) if permute else np.arange(n)
        start = b * (d + n)
        for j in range(n):
            neighbors = sorted(int(perm[k]) for k in range(j, n))
            arrivals.append(Arrival(id=len(arrivals), time=start + j, neighbors=neighbors))

    return Instance(
        d_default=d,
        resources=[Resource(id=i, reward=1.0) for i in range(n)],
        arrivals=arrivals,
        name=f"kvv-n{n}-b{blocks}-d{d}",
    )


def gen_random(
    n_resources: int,
    n_arrivals: int,
    edge_prob: float,
    horizon: int,
    d: int,
    reward_range: Sequence[float] = (1.0, 1.0),
    rng_seed: Optional[int] = 0,
) -> Instance:
    """Random bipartite instance with deterministic shared usage d."""
    if not 0.0 <= edge_prob <= 1.0:
        raise ValueError(f"edge_prob must lie in [0, 1], got {edge_prob}")
    if horizon <= 0:
        raise ValueError(f"horizon must be positive, got {horizon}")
    lo, hi = float(reward_range[0]), float(reward_range[1])
    if lo < 0 or hi < lo:
        raise ValueError(f"reward_range must satisfy 0 <= lo <= hi, got {reward_range}")

    rng = np.random.default_rng(rng_seed)
    times = np.sort(rng.integers(0, horizon + 1, size=n_arrivals))
    adjacency = rng.random((n_arrivals, n_resources)) < edge_prob
    rewards = rng.uniform(lo, hi, size=n_resources)

    resources = [Resource(id=i, reward=round(float(rewards[i]), 6)) for i in range(n_resources)]
    arrivals = [
        Arrival(id=k, time=int(times[k]), neighbors=[int(i) for i in np.flatnonzero(adjacency[k])])
        for k in range(n_arrivals)
    ]
    return Instance(
        d_default=d,
        resources=resources,
        arrivals=arrivals,
        name=f"random-s{rng_seed}",
    )


def gen_random_usage(max_atoms: int, max_duration: int, rng_seed: Optional[int] = 0) -> DiscreteUsage:
    """Random finite discrete usage model with integer atoms in [1, max_duration]."""
    rng = np.random.default_rng(rng_seed)
    k = int(rng.integers(1, min(max_atoms, max_duration) + 1))
    durations = np.sort(rng.choice(np.arange(1, max_duration + 1), size=k, replace=False))
    weights = rng.random(k) + 0.05
    probs = weights / weights.sum()
    # push the rounding residue into the last atom so the sum is exact
    probs = [float(p) for p in probs]
    probs[-1] = 1.0 - sum(probs[:-1])
    return DiscreteUsage(atoms=[(int(dur), p) for dur, p in zip(durations, probs)])
