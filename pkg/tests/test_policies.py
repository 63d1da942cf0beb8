import itertools
import math
import pytest
from hypothesis import given, settings, strategies as st
from engine import simulate
from instance import gen_random, DiscreteUsage, Resource, Instance, Arrival
from policies import (
    PolicyKey,
    PolicyRegistry,
    RerankSchedule,
    SeedVector,
    TradeoffFunction,
    reduced_price,
    epoch_of,
    periodic_reranking,
    perturbed_greedy,
    ranking,
)
from util.errors import UsageModelMismatch
from helpers import chain


def test_reduced_price_values():
    assert reduced_price(1.0, 0.0, TradeoffFunction(beta=0.89)) == pytest.approx(0.58935, abs=1e-5)
    assert reduced_price(2.0, 0.5, TradeoffFunction(beta=1.0)) == pytest.approx(0.78694, abs=1e-5)
    assert reduced_price(3.0, 1.0, TradeoffFunction(beta=0.5)) == 0.0


def test_reduced_price_rejects_bad_seed():
    with pytest.raises(ValueError):
        reduced_price(1.0, 1.5, TradeoffFunction())


@pytest.mark.parametrize("beta", [0.0, -0.1, 1.5])
def test_beta_out_of_range(beta):
    with pytest.raises(ValueError):
        TradeoffFunction(beta=beta)


def test_inverse_price_round_trip():
    tradeoff = TradeoffFunction(beta=0.89)
    price = tradeoff.reduced_price(2.0, 0.3)
    assert tradeoff.inverse_price(2.0, price) == pytest.approx(0.3)
    assert math.isnan(tradeoff.inverse_price(2.0, 2.0))


def test_epoch_of_examples():
    assert epoch_of(RerankSchedule.EVERY_PERIOD, 0, 3, 21, {}, d=10) == 2
    assert epoch_of(RerankSchedule.NEVER, 0, 3, 21, {}) == 0
    assert epoch_of(RerankSchedule.EVERY_ARRIVAL, 0, 3, 21, {}) == 3
    assert epoch_of(RerankSchedule.ON_RETURN, 0, 1, 20, {0: [10]}) == 1
    assert epoch_of(RerankSchedule.ON_RETURN, 0, 1, 10, {0: [10]}) == 0


def test_every_period_needs_d():
    with pytest.raises(ValueError):
        epoch_of(RerankSchedule.EVERY_PERIOD, 0, 0, 5, {}, d=None)


def test_seed_vector_is_counter_based():
    a = SeedVector(5, 1)
    b = SeedVector(5, 1)
    assert [b.get(3, e) for e in range(-1, 40)][::-1] == [a.get(3, e) for e in range(39, -2, -1)]
    assert a.get(0, 0) != SeedVector(5, 2).get(0, 0)


def test_pin_leaves_other_seeds_alone():
    base = SeedVector(11, 0)
    pinned = base.pinned({(1, 4): 0.25})
    assert pinned.get(1, 4) == 0.25
    assert pinned.get(1, 5) == base.get(1, 5)
    assert pinned.get(0, 4) == base.get(0, 4)


def test_pin_out_of_range():
    with pytest.raises(ValueError):
        SeedVector(0, 0, {(0, 0): 1.2})


def test_seed_before_dummy_epoch():
    with pytest.raises(ValueError):
        SeedVector(0).get(0, -2)


@pytest.mark.parametrize("root, trial", [(-1, 0), (0, -3)])
def test_negative_root_or_trial(root, trial):
    with pytest.raises(ValueError, match="nonnegative"):
        SeedVector(root, trial)


def _pin_orders(epochs, n_resources=2):
    """Every assignment of strict rank orders to the given epochs as pin maps."""
    orders = list(itertools.permutations([0.2, 0.6][:n_resources]))
    for combo in itertools.product(orders, repeat=len(epochs)):
        pins = {}
        for epoch, order in zip(epochs, combo):
            for i, value in enumerate(order):
                pins[(i, epoch)] = value
        yield pins


def test_periodic_reranking_example1_exact(example1):
    totals = [
        simulate(example1, periodic_reranking(TradeoffFunction(beta=0.89)), SeedVector(0, 0, pins)).total_reward
        for pins in _pin_orders([0, 2])
    ]
    assert len(totals) == 4
    assert sum(totals) / len(totals) == 3.0


def test_ranking_example1_both_orders(example1):
    for pins in _pin_orders([0]):
        trace = simulate(example1, ranking(TradeoffFunction()), SeedVector(0, 0, pins))
        assert trace.total_reward == 3.0


def test_ranking_ignores_rewards():
    inst = chain([0], [[0, 1]], d=10, rewards=[1.0, 5.0])
    trace = simulate(inst, ranking(TradeoffFunction()), SeedVector(0, 0, {(0, 0): 0.1, (1, 0): 0.9}))
    assert trace.matches() == [(0, 0)]


def test_seed_one_leaves_arrival_unmatched():
    inst = chain([0], [[0]], d=10)
    trace = simulate(inst, perturbed_greedy(TradeoffFunction()), SeedVector(0, 0, {(0, 0): 1.0}))
    assert trace.match_count() == 0


def test_ties_go_to_lowest_id():
    inst = chain([0], [[0, 1]], d=10)
    trace = simulate(inst, perturbed_greedy(TradeoffFunction()), SeedVector(0, 0, {(0, 0): 0.4, (1, 0): 0.4}))
    assert trace.matches() == [(0, 0)]


def test_pr_matches_pg_when_d_exceeds_horizon():
    tradeoff = TradeoffFunction(beta=0.89)
    for seed in range(100):
        inst = gen_random(5, 15, 0.5, 40, 41, (0.5, 2.0), rng_seed=seed)
        pr = simulate(inst, periodic_reranking(tradeoff), SeedVector(seed, 0))
        pg = simulate(inst, perturbed_greedy(tradeoff), SeedVector(seed, 0))
        assert pr.to_jsonl() == pg.to_jsonl()


def test_pr_with_equal_rewards_takes_lowest_seed():
    tradeoff = TradeoffFunction(beta=0.89)
    for seed in range(100):
        inst = gen_random(2 + seed % 5, 8 + seed % 13, 0.5, 40, 8, rng_seed=3000 + seed)
        trace = simulate(inst, periodic_reranking(tradeoff), SeedVector(seed, 1))
        lookup = SeedVector(seed, 1)
        for rec in trace.records:
            ranked = sorted((lookup.get(j, rec.time // 8), j) for j in rec.available)
            ranked = [pair for pair in ranked if pair[0] < 1.0]
            assert rec.matched == (ranked[0][1] if ranked else None)


def test_random_schedule_is_uniform_over_available():
    # arrival 0 takes resource 3, so arrival 1 sees 0, 1 and 2 free
    inst = chain([0, 1], [[3], [0, 1, 2, 3]], d=10)
    n = 3000
    counts = {0: 0, 1: 0, 2: 0}
    for root in range(n):
        trace = simulate(inst, PolicyRegistry.get_policy("random", 0.89), SeedVector(root, 0))
        assert trace.records[1].available == [0, 1, 2]
        counts[trace.records[1].matched] += 1
    sigma = math.sqrt(n * (1 / 3) * (2 / 3))
    for resource, count in counts.items():
        assert abs(count - n / 3) <= 3 * sigma, (resource, counts)


def test_pr_rejects_stochastic_usage():
    inst = Instance(
        d_default=10,
        resources=[Resource(id=0, usage=DiscreteUsage(atoms=[(4, 0.5), (9, 0.5)]))],
        arrivals=[Arrival(id=0, time=0, neighbors=[0])],
    )
    with pytest.raises(UsageModelMismatch, match="requires deterministic shared d"):
        simulate(inst, periodic_reranking(TradeoffFunction()), SeedVector(0))


def test_seeded_policy_needs_seeds(example1):
    with pytest.raises(ValueError):
        simulate(example1, periodic_reranking(TradeoffFunction()))


def test_registry_keys():
    assert PolicyRegistry.get_all_policy_keys() == ["greedy", "ranking", "pg", "random", "ror", "pr", "fluid"]
    assert PolicyRegistry.check_policy_key(PolicyKey.PERIODIC_RERANKING)
    assert not PolicyRegistry.check_policy_key("balance")
    with pytest.raises(ValueError, match="Unknown policy"):
        PolicyRegistry.get_policy("balance", 0.89)
    assert PolicyRegistry.get_policy_info("pr")


@pytest.mark.parametrize("key", PolicyRegistry.get_all_policy_keys())
def test_registry_builds_fresh_objects(key):
    a = PolicyRegistry.get_policy(key, 0.89)
    b = PolicyRegistry.get_policy(key, 0.89)
    assert a is not b
    assert a.key == key


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from(["pg", "pr", "ror", "random", "ranking"]))
def test_same_seeds_same_trace(seed, key):
    inst = gen_random(4, 12, 0.5, 30, 7, (0.5, 2.0), rng_seed=seed)
    first = simulate(inst, PolicyRegistry.get_policy(key, 0.89), SeedVector(seed, 1))
    second = simulate(inst, PolicyRegistry.get_policy(key, 0.89), SeedVector(seed, 1))
    assert first.to_jsonl() == second.to_jsonl()


@pytest.mark.slow
def test_pr_example1_monte_carlo(example1):
    from cli.stats import run_policy
    stats = run_policy(example1, "pr", 0.89, trials=100_000)
    assert stats.mean == pytest.approx(3.0, abs=0.01)
