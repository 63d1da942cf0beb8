import numpy as np
import pytest
from instance import gen_random, DiscreteUsage, Resource, Instance, Arrival
from engine import simulate, window_end, period_index, period_prefix, MatchingTrace
from policies import GreedyPolicy, SeedVector, Policy, Choice, PolicyRegistry
from util.errors import PolicyContractError
from helpers import chain


def test_greedy_example1(example1):
    trace = simulate(example1, GreedyPolicy())
    assert trace.matches() == [(0, 0), (1, 1), (0, 2)]
    assert trace.records[3].matched is None
    assert trace.total_reward == 3.0


def test_empty_arrivals():
    inst = Instance(d_default=10, resources=[Resource(id=0)], arrivals=[])
    trace = simulate(inst, GreedyPolicy())
    assert trace.records == []
    assert trace.total_reward == 0.0


def test_resource_reused_after_window():
    inst = chain([0, 11], [[0], [0]], d=10, rewards=[5.0])
    assert simulate(inst, GreedyPolicy()).total_reward == 10.0


def test_resource_busy_at_boundary():
    # free at t iff t > match time + d
    inst = chain([0, 10], [[0], [0]], d=10)
    assert simulate(inst, GreedyPolicy()).match_count() == 1


def test_window_end_examples(example1):
    assert window_end(example1, 0) == 1
    assert window_end(example1, 1) == 1
    inst = chain([0, 5, 10], [[0], [0], [0]], d=10)
    assert window_end(inst, 0) == 2


def test_window_end_counts_same_tick_arrivals():
    inst = chain([0, 10, 10, 21], [[0], [0], [0], [0]], d=10)
    assert window_end(inst, 1) == 2
    assert window_end(inst, 2) == 2
    assert window_end(inst, 3) == 3


def test_period_helpers():
    assert period_index(21, 10) == 4
    inst = chain([0, 12, 15, 25], [[0], [0], [0], [0]], d=10)
    assert period_prefix(inst, 2, 10) == [1, 2]


class _Cheater(Policy):
    key = "cheater"

    def choose(self, arrival, available):
        return Choice(resource=0)


def test_contract_violation_raises():
    inst = chain([0, 1], [[0], [0]], d=10)
    with pytest.raises(PolicyContractError):
        simulate(inst, _Cheater())


def test_stochastic_usage_needs_rng():
    inst = Instance(
        d_default=10,
        resources=[Resource(id=0, usage=DiscreteUsage(atoms=[(2, 0.5), (8, 0.5)]))],
        arrivals=[Arrival(id=0, time=0, neighbors=[0])],
    )
    with pytest.raises(ValueError):
        simulate(inst, GreedyPolicy())
    trace = simulate(inst, GreedyPolicy(), duration_rng=np.random.default_rng(0))
    assert trace.records[0].duration in (2, 8)


@pytest.mark.parametrize("key", PolicyRegistry.get_all_policy_keys())
def test_matches_respect_availability(key):
    for seed in range(20):
        inst = gen_random(4, 16, 0.6, 40, 10, (0.5, 2.0), rng_seed=seed)
        trace = simulate(inst, PolicyRegistry.get_policy(key, 0.89), SeedVector(seed, 0))
        last = {}
        for rec in trace.records:
            if rec.matched is None:
                continue
            assert rec.matched in inst.arrivals[rec.arrival_id].neighbors
            if rec.matched in last:
                assert rec.time > last[rec.matched]
            last[rec.matched] = rec.time + rec.duration


def test_trace_jsonl_replay_identical(example1):
    policy = PolicyRegistry.get_policy("pr", 0.89)
    seeds = SeedVector(7, 3)
    first = simulate(example1, policy, seeds)
    replayed = simulate(example1, PolicyRegistry.get_policy("pr", 0.89), SeedVector.replay(seeds.snapshot()))
    assert first.to_jsonl() == replayed.to_jsonl()
    back = MatchingTrace.from_jsonl(first.to_jsonl(), policy="pr", d=10)
    assert back.total_reward == first.total_reward


def test_available_at(example1):
    trace = simulate(example1, GreedyPolicy())
    assert not trace.available_at(0, 3)
    assert trace.available_at(1, 2)
