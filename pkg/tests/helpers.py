from instance import Instance, Resource, Arrival, gen_random


def chain(times, neighbors, d=10, rewards=None) -> Instance:
    """Instance from parallel lists of arrival times and neighbor lists."""
    n = 1 + max((i for ns in neighbors for i in ns), default=0)
    rewards = rewards or [1.0] * n
    return Instance(
        d_default=d,
        resources=[Resource(id=i, reward=rewards[i]) for i in range(n)],
        arrivals=[Arrival(id=k, time=t, neighbors=list(ns)) for k, (t, ns) in enumerate(zip(times, neighbors))],
    )


def small_corpus(count: int, base_seed: int = 100, reward_range=(0.5, 2.0)):
    """Random instances with |I| <= 6 and |T| <= 20."""
    return [
        gen_random(
            n_resources=2 + k % 5,
            n_arrivals=8 + k % 13,
            edge_prob=0.5,
            horizon=40,
            d=10,
            reward_range=reward_range,
            rng_seed=base_seed + k,
        )
        for k in range(count)
    ]
