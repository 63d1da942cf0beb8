import math
from typing import List, Optional, Tuple
import numpy as np
from instance.schema import Instance
from engine.simulator import simulate, window_end_from_times, period_prefix
from engine.trace import MatchingTrace
from analysis.certificate import dual_fit, edge_value
from analysis.schema import ScanPoint, ScanViolation, StructuralScanReport
from bounds.function import combined_lower_bound
from policies.constants import DEFAULT_BETA
from policies.seeded import periodic_reranking
from policies.seeds import SeedVector
from policies.tradeoff import TradeoffFunction
from util.errors import UsageModelMismatch
from util.logger import logger

TOL = 1e-9


def threshold_from_price(reward: float, best: float, tradeoff: TradeoffFunction) -> float:
    """y with reward * (1 - g(y)) == best, 0 when no such y exists in [0, 1]."""
    if best <= 0.0:
        return 1.0
    if reward <= 0.0 or best >= tradeoff.reduced_price(reward, 0.0):
        return 0.0
    return min(1.0, max(0.0, tradeoff.inverse_price(reward, best)))


def _edge_periods(instance: Instance, edge: Tuple[int, int]) -> Tuple[int, int, int]:
    d = instance.shared_d()
    if d is None:
        raise UsageModelMismatch("structural scans require deterministic shared d")
    i, t = edge
    if not 0 <= t < instance.n_arrivals or i not in instance.arrivals[t].neighbors:
        raise ValueError(f"({i}, {t}) is not an edge of {instance.label()}")
    e2 = instance.arrivals[t].time // d
    return d, e2 - 1, e2


def _run(instance: Instance, tradeoff: TradeoffFunction, seeds: SeedVector) -> MatchingTrace:
    return simulate(instance, periodic_reranking(tradeoff), seeds)


def critical_threshold(
    instance: Instance,
    edge: Tuple[int, int],
    seeds: SeedVector,
    tradeoff: TradeoffFunction,
    trace: Optional[MatchingTrace] = None,
) -> float:
    """y^c_t: seed at which i's reduced price ties the best competitor at t.

    The resource's seed in t's period is pinned to 1 first. trace, when given,
    must be the PR run under exactly those seeds.
    """
    d, _, e2 = _edge_periods(instance, edge)
    i, t = edge
    seeds = seeds.pinned({(i, e2): 1.0})
    if trace is None:
        trace = _run(instance, tradeoff, seeds)
    rewards = instance.rewards
    best = 0.0
    for j in trace.records[t].available:
        if j == i:
            continue
        y = seeds.get(j, e2)
        if y < 1.0:
            best = max(best, tradeoff.reduced_price(rewards[j], y))
    return threshold_from_price(rewards[i], best, tradeoff)


def _scan_point(
    instance: Instance,
    tradeoff: TradeoffFunction,
    seeds: SeedVector,
    trace: MatchingTrace,
    edge: Tuple[int, int],
    d: int,
    e1: int,
    prefix: List[int],
    y1: float,
) -> ScanPoint:
    i, t = edge
    prev = [r for r in trace.records if r.matched == i and r.time // d == e1]
    return ScanPoint(
        y1=y1,
        matched_prev=bool(prev),
        available=any(trace.available_at(i, tau) for tau in prefix),
        match_index=prev[0].arrival_id if prev else None,
        critical=critical_threshold(instance, edge, seeds, tradeoff, trace),
    )


def _fit_thresholds(points: List[ScanPoint]) -> Tuple[float, float]:
    matched = [p.y1 for p in points if p.matched_prev]
    back = [p.y1 for p in points if p.matched_prev and p.available]
    z2 = max(matched) if matched else 0.0
    z1 = max(back) if back else 0.0
    return z1, z2


def structural_scan(
    instance: Instance,
    edge: Tuple[int, int],
    beta: float = DEFAULT_BETA,
    grid_size: int = 512,
    root: int = 0,
    trial: int = 0,
    y2_samples: int = 4,
    joint_grid: int = 32,
) -> StructuralScanReport:
    """Sweep i's previous-period seed y1 with the rest of the seed vector fixed.

    The other seeds come from SeedVector(root, trial). Checked at every grid
    point: band order (matched and back, matched and busy, unmatched), match
    arrival nondecreasing in y1, critical threshold versus y1 = 1, and the
    pointwise lambda / theta bounds for sampled y2.
    """
    if grid_size < 2:
        raise ValueError("grid_size must be at least 2")
    d, e1, e2 = _edge_periods(instance, edge)
    i, t = edge
    tradeoff = TradeoffFunction(beta=beta)
    base = SeedVector(root, trial)
    reward = instance.rewards[i]
    end = window_end_from_times(instance.times, t, d)
    prefix = period_prefix(instance, t, d)
    violations: List[ScanViolation] = []

    def flag(check: str, y1: float, y2: Optional[float], detail: str, seeds: SeedVector):
        v = ScanViolation(check=check, y1=y1, y2=y2, detail=detail, seeds=seeds.describe())
        logger.log_violation(v)
        violations.append(v)

    grid = np.linspace(0.0, 1.0, grid_size)
    points: List[ScanPoint] = []
    runs = []
    for y1 in grid:
        y1 = float(y1)
        seeds = base.pinned({(i, e1): y1, (i, e2): 1.0})
        trace = _run(instance, tradeoff, seeds)
        points.append(_scan_point(instance, tradeoff, seeds, trace, edge, d, e1, prefix, y1))
        runs.append((seeds, trace))

    z1, z2 = _fit_thresholds(points)
    at_one = points[-1].critical

    for k, p in enumerate(points):
        seeds, _ = runs[k]
        if not p.matched_prev and not p.available:
            flag("band", p.y1, None, "unmatched in the previous period yet busy throughout p(t)", seeds)
        if k and p.band < points[k - 1].band:
            flag("band", p.y1, None, f"band {points[k - 1].band} -> {p.band} as y1 increases", seeds)
        prev = points[k - 1] if k else None
        if prev is not None and prev.matched_prev and p.matched_prev and p.match_index < prev.match_index:
            flag("match_index", p.y1, None, f"matched at {p.match_index} after {prev.match_index}", seeds)
        if p.band == 2 and abs(p.critical - at_one) > TOL:
            flag("critical", p.y1, None, f"y^c {p.critical:.12f} != y^c(1) {at_one:.12f}", seeds)
        if p.band == 1 and p.critical > at_one + TOL:
            flag("critical", p.y1, None, f"y^c {p.critical:.12f} > y^c(1) {at_one:.12f}", seeds)

    y2_values = np.random.default_rng([root, trial, 2]).random(y2_samples) if y2_samples > 0 else []
    for k, p in enumerate(points):
        seeds_one, trace_one = runs[k]
        lam_one = dual_fit(trace_one, tradeoff).lam[t]
        if p.available and lam_one < tradeoff.reduced_price(reward, p.critical) - TOL:
            flag("lambda", p.y1, 1.0, f"lambda(y1,1) {lam_one:.12f} below r(1-g(y^c))", seeds_one)
        for y2 in y2_values:
            y2 = float(y2)
            seeds = base.pinned({(i, e1): p.y1, (i, e2): y2})
            cert = dual_fit(_run(instance, tradeoff, seeds), tradeoff)
            lam = cert.lam[t]
            theta = cert.window_sum(i, t, end)
            if p.available:
                if lam < lam_one - TOL:
                    flag("lambda", p.y1, y2, f"lambda {lam:.12f} < lambda(y1,1) {lam_one:.12f}", seeds)
                need = reward * tradeoff.g(y2) if y2 < p.critical else 0.0
                if theta < need - TOL:
                    flag("theta", p.y1, y2, f"theta sum {theta:.12f} < {need:.12f}", seeds)
            else:
                need = reward * tradeoff.g(p.y1)
                if theta < need - TOL:
                    flag("theta_busy", p.y1, y2, f"theta sum {theta:.12f} < r g(y1) {need:.12f}", seeds)

    conditional_mean = None
    if joint_grid > 0:
        mids = (np.arange(joint_grid) + 0.5) / joint_grid
        values = []
        for y1 in mids:
            for y2 in mids:
                seeds = base.pinned({(i, e1): float(y1), (i, e2): float(y2)})
                cert = dual_fit(_run(instance, tradeoff, seeds), tradeoff)
                values.append(edge_value(cert, i, t, end))
        conditional_mean = math.fsum(values) / len(values)

    report = StructuralScanReport(
        instance_id=instance.label(),
        resource=i,
        arrival=t,
        grid=grid_size,
        points=points,
        z1=z1,
        z2=z2,
        critical_at_one=at_one,
        conditional_mean=conditional_mean,
        combined_bound=reward * combined_lower_bound(z1, z2, at_one, beta),
        violations=violations,
    )
    logger.debug(f"scan ({i}, {t}) on {instance.label()}: z1={z1:.4f} z2={z2:.4f} "
                 f"violations={len(violations)}")
    return report
