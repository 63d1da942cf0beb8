import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import linprog
from instance import gen_kvv_window, gen_random, Instance, Resource, Arrival, DiscreteUsage
from offline import (
    OfflineStatus,
    RevisedSimplex,
    brute_force_opt,
    build_lp,
    dump_lp,
    lp_upper_bound,
    prune_window_constraints,
    search_size,
)
from util.errors import SimplexError, UsageModelMismatch
from helpers import chain, small_corpus


def _naive_opt(instance: Instance) -> float:
    """Plain enumeration of every per-arrival choice, no memo."""
    d = instance.shared_d()
    rewards = instance.rewards

    def go(k, busy_until):
        if k == instance.n_arrivals:
            return 0.0
        a = instance.arrivals[k]
        best = go(k + 1, busy_until)
        for i in a.neighbors:
            if busy_until[i] is None or a.time > busy_until[i]:
                nxt = list(busy_until)
                nxt[i] = a.time + d
                best = max(best, rewards[i] + go(k + 1, nxt))
        return best

    return go(0, [None] * instance.n_resources)


def test_example1_offline(example1):
    result = brute_force_opt(example1)
    assert result.ok
    assert result.value == 4
    assert sorted(result.matching, key=lambda p: p[1]) == [(0, 0), (1, 1), (1, 2), (0, 3)]
    assert lp_upper_bound(example1).value == pytest.approx(4.0)


def test_single_resource_window():
    inst = chain([0, 1, 2], [[0], [0], [0]], d=10, rewards=[7.0])
    assert brute_force_opt(inst).value == 7.0
    assert lp_upper_bound(inst).value == pytest.approx(7.0)


def test_kvv_offline():
    assert brute_force_opt(gen_kvv_window(3, 2, 10)).value == 6
    assert brute_force_opt(gen_kvv_window(3, 1, 10)).value == 3
    assert lp_upper_bound(gen_kvv_window(2, 1, 10)).value == pytest.approx(2.0)


def test_empty_instance():
    inst = Instance(d_default=5, resources=[Resource(id=0)], arrivals=[])
    assert brute_force_opt(inst).value == 0.0
    assert lp_upper_bound(inst).value == 0.0


def test_brute_force_cap():
    inst = gen_random(6, 30, 1.0, 100, 10, rng_seed=1)
    assert search_size(inst, cap=1000) > 1000
    result = brute_force_opt(inst, cap=1000)
    assert result.status == OfflineStatus.TOO_LARGE
    assert result.value is None
    assert "too large for exact" in result.note


def test_stochastic_usage_rejected():
    inst = Instance(
        d_default=5,
        resources=[Resource(id=0, usage=DiscreteUsage(atoms=[(2, 0.5), (4, 0.5)]))],
        arrivals=[Arrival(id=0, time=0, neighbors=[0])],
    )
    with pytest.raises(UsageModelMismatch):
        brute_force_opt(inst)
    with pytest.raises(UsageModelMismatch):
        build_lp(inst)


@pytest.mark.parametrize("times, kept", [([0, 1], 1), ([0, 20], 2)])
def test_prune_window_rows(times, kept):
    model = build_lp(chain(times, [[0], [0]], d=10))
    assert len(model.windows) == 2
    assert len(prune_window_constraints(model).windows) == kept


def test_pruning_keeps_value():
    for inst in small_corpus(8):
        full = lp_upper_bound(inst, prune=False).value
        pruned = lp_upper_bound(inst, prune=True).value
        assert pruned == pytest.approx(full, abs=1e-7)


def test_lp_solution_is_feasible_and_dual_tight():
    for inst in small_corpus(8, base_seed=300):
        model = prune_window_constraints(build_lp(inst))
        result = lp_upper_bound(inst, model=model, prune=False)
        x = np.zeros(len(model.edges))
        index = {e: k for k, e in enumerate(model.edges)}
        for i, t, value in result.fractional:
            x[index[(i, t)]] = value
        assert model.violations(x, tol=1e-7) == []
        assert min(result.duals) >= -1e-9
        assert sum(result.duals) == pytest.approx(result.value, abs=1e-7)


def test_opt_below_lp_on_corpus():
    for seed in range(12):
        inst = gen_random(2 + seed % 3, 4 + seed % 5, 0.5, 20, 6, (0.5, 2.0), rng_seed=500 + seed)
        opt = brute_force_opt(inst).value
        assert opt == pytest.approx(_naive_opt(inst))
        assert lp_upper_bound(inst).value >= opt - 1e-7


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.integers(1, 8), st.integers(0, 10_000))
def test_simplex_agrees_with_linprog(m, n, seed):
    rng = np.random.default_rng(seed)
    A = (rng.random((m, n)) < 0.6).astype(float) * rng.uniform(0.5, 2.0, (m, n))
    A[0] = np.maximum(A[0], 0.1)
    b = rng.uniform(0.5, 3.0, m)
    c = rng.uniform(0.0, 2.0, n)
    ours = RevisedSimplex(c, A, b).solve()
    ref = linprog(-c, A_ub=A, b_ub=b, bounds=(0, None), method="highs")
    assert ours.objective == pytest.approx(-ref.fun, abs=1e-7)


def test_simplex_unbounded():
    with pytest.raises(SimplexError, match="unbounded"):
        RevisedSimplex(np.array([1.0, 1.0]), np.array([[1.0, 0.0]]), np.array([1.0])).solve()


def test_simplex_iteration_cap():
    with pytest.raises(SimplexError, match="iteration cap"):
        RevisedSimplex(np.array([1.0, 1.0]), np.eye(2), np.ones(2), max_iterations=1).solve()


def test_simplex_negative_rhs():
    with pytest.raises(ValueError):
        RevisedSimplex(np.array([1.0]), np.array([[1.0]]), np.array([-1.0]))


def test_dump_lp_format(tmp_path, example1):
    path = tmp_path / "ex1.lp"
    model = prune_window_constraints(build_lp(example1))
    dump_lp(model, str(path))
    text = path.read_text()
    lines = text.splitlines()
    assert lines[1] == "Maximize"
    assert lines[-1] == "End"
    assert lines.index("Subject To") < lines.index("Bounds")
    assert "x_0_0" in text
    assert "1.000000000000" in text
    assert sum(1 for line in lines if line.startswith(" u_")) == example1.n_arrivals


def test_greedy_is_half_competitive():
    from engine import simulate
    from policies import GreedyPolicy
    for seed in range(12):
        inst = gen_random(2 + seed % 3, 4 + seed % 5, 0.5, 20, 6, (0.5, 2.0), rng_seed=700 + seed)
        opt = brute_force_opt(inst).value
        assert simulate(inst, GreedyPolicy()).total_reward >= 0.5 * opt - 1e-12
