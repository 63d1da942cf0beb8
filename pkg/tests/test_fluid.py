import numpy as np
import pytest
from scipy import stats
from engine import simulate
from fluid import AvailabilityProcess, eta_dp, eta_mc, fluid_seed, resource_profile, aggregate_seed
from instance import DeterministicUsage, DiscreteUsage, Instance, Resource, Arrival
from policies import FluidReranking, SeedVector, TradeoffFunction


@pytest.mark.parametrize(
    "usage, expected",
    [
        (DeterministicUsage(d=15), [1.0, 0.0, 1.0]),
        (DeterministicUsage(d=5), [1.0, 1.0, 1.0]),
        (DiscreteUsage(atoms=[(5, 0.5), (15, 0.5)]), [1.0, 0.5, 0.75]),
    ],
)
def test_eta_dp_examples(usage, expected):
    assert eta_dp(usage, [0, 10, 20]).eta == pytest.approx(expected)


def test_eta_dp_empty():
    profile = eta_dp(DeterministicUsage(d=3), [])
    assert profile.eta == []


def test_process_rejects_decreasing_times():
    process = AvailabilityProcess(DeterministicUsage(d=3))
    process.push(5)
    with pytest.raises(ValueError):
        process.push(4)


def test_eta_mc_agrees_with_dp():
    usage = DiscreteUsage(atoms=[(3, 0.2), (7, 0.5), (12, 0.3)])
    times = [0, 2, 4, 5, 9, 11, 15, 16, 22, 30]
    exact = eta_dp(usage, times)
    mc = eta_mc(usage, times, n_samples=40_000, rng=7)
    for p, q, se in zip(exact.eta, mc.eta, mc.se):
        assert abs(p - q) <= 4 * se + 1e-3


def test_eta_mc_needs_samples():
    with pytest.raises(ValueError):
        eta_mc(DeterministicUsage(d=3), [0, 1], n_samples=100)


def _two_arrivals(usage):
    return Instance(
        d_default=10,
        resources=[Resource(id=0, usage=usage)],
        arrivals=[Arrival(id=0, time=0, neighbors=[0]), Arrival(id=1, time=20, neighbors=[0])],
    )


def test_fluid_seed_is_uniform_on_dense_arrivals():
    times = list(range(0, 31, 3))
    inst = Instance(
        d_default=10,
        resources=[Resource(id=0)],
        arrivals=[Arrival(id=k, time=t, neighbors=[0]) for k, t in enumerate(times)],
    )
    profile = resource_profile(inst, 0)
    assert profile.eta == pytest.approx([1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0])
    # time 15 looks back over times 6..15, where only time 12 has eta 1
    rng = np.random.default_rng(3)
    draws = rng.random((10_000, len(times)))
    values = [fluid_seed(inst, 0, 5, dict(enumerate(row)), profile) for row in draws]
    assert stats.kstest(values, "uniform").pvalue > 0.001


def test_fluid_seed_missing_z():
    inst = _two_arrivals(DeterministicUsage(d=10))
    with pytest.raises(ValueError, match="missing z"):
        fluid_seed(inst, 0, 1, {0: 0.5})


def test_aggregate_seed_weights_by_survival():
    usage = DiscreteUsage(atoms=[(5, 0.5), (15, 0.5)])
    # survival(10) = 0.5 for the first term, survival(0) = 1 for the second
    assert aggregate_seed(usage, 10, [(0, 1.0, 0.4), (10, 0.5, 0.6)]) == pytest.approx(0.5 * 0.4 + 0.5 * 0.6)


def test_fluid_policy_handles_stochastic_usage():
    inst = Instance(
        d_default=10,
        resources=[
            Resource(id=0, reward=1.0, usage=DiscreteUsage(atoms=[(2, 0.5), (8, 0.5)])),
            Resource(id=1, reward=2.0),
        ],
        arrivals=[Arrival(id=k, time=3 * k, neighbors=[0, 1]) for k in range(8)],
    )
    for trial in range(5):
        trace = simulate(inst, FluidReranking(TradeoffFunction()), SeedVector(1, trial), np.random.default_rng(trial))
        for rec in trace.records:
            if rec.matched is not None:
                assert 0.0 <= rec.seed <= 1.0 + 1e-12


@pytest.mark.slow
def test_eta_mc_agrees_on_random_models():
    from instance import gen_random_usage
    for seed in range(20):
        usage = gen_random_usage(4, 12, rng_seed=seed)
        times = sorted(np.random.default_rng(seed).integers(0, 60, size=15).tolist())
        exact = eta_dp(usage, times)
        mc = eta_mc(usage, times, n_samples=100_000, rng=seed)
        for p, q, se in zip(exact.eta, mc.eta, mc.se):
            assert abs(p - q) <= 4 * se + 1e-3


@pytest.mark.slow
def test_fluid_and_pr_means_are_reported():
    from cli.stats import run_policy
    from instance import gen_random
    from offline import lp_upper_bound
    from util.logger import logger
    for seed in range(20):
        inst = gen_random(4, 12, 0.5, 40, 10, (0.5, 2.0), rng_seed=seed)
        fluid = run_policy(inst, "fluid", 0.89, trials=10_000, root_seed=seed)
        pr = run_policy(inst, "pr", 0.89, trials=10_000, root_seed=seed)
        bound = lp_upper_bound(inst).value
        assert fluid.mean <= bound + 1e-9 and pr.mean <= bound + 1e-9
        if abs(fluid.mean - pr.mean) > 3 * (fluid.se ** 2 + pr.se ** 2) ** 0.5:
            logger.warning(f"{inst.label()}: fluid {fluid.mean:.4f} vs pr {pr.mean:.4f}")
