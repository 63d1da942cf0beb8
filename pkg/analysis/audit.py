import math
from functools import partial
from typing import List, Optional, Sequence, Tuple
import numpy as np
from instance.schema import Instance
from engine.simulator import simulate, window_end_from_times
from analysis.certificate import dual_fit, edge_value
from analysis.schema import EdgeAuditReport, Verdict
from policies.constants import DEFAULT_BETA
from policies.seeded import periodic_reranking
from policies.seeds import SeedVector
from policies.tradeoff import TradeoffFunction
from util.errors import UsageModelMismatch
from util.logger import logger
from util.parallel import run_trials

MIN_AUDIT_SAMPLES = 1000
SE_MULTIPLIER = 3.0


def _audit_sample(
    instance: Instance,
    beta: float,
    root: int,
    edges: Sequence[Tuple[int, int]],
    ends: Sequence[int],
    trial: int,
) -> List[float]:
    tradeoff = TradeoffFunction(beta=beta)
    trace = simulate(instance, periodic_reranking(tradeoff), SeedVector(root, trial))
    cert = dual_fit(trace, tradeoff)
    return [edge_value(cert, i, t, end) for (i, t), end in zip(edges, ends)]


def audit_instance(
    instance: Instance,
    beta: float = DEFAULT_BETA,
    alpha: float = 0.589,
    samples: int = 20000,
    root_seed: int = 0,
    workers: int = 1,
    edges: Optional[Sequence[Tuple[int, int]]] = None,
) -> List[EdgeAuditReport]:
    """Estimate E[lambda_t + sum theta] for every edge from one batch of PR runs.

    Each sample draws a full seed vector keyed by (root_seed, sample index).
    An edge passes when mean >= alpha * r_i - 3 SE.
    """
    d = instance.shared_d()
    if d is None:
        raise UsageModelMismatch("audit requires deterministic shared d")
    if samples < MIN_AUDIT_SAMPLES:
        raise ValueError(f"audit needs at least {MIN_AUDIT_SAMPLES} samples, got {samples}")

    all_edges = set(instance.edges())
    edges = list(edges) if edges is not None else instance.edges()
    for e in edges:
        if tuple(e) not in all_edges:
            raise ValueError(f"({e[0]}, {e[1]}) is not an edge of {instance.label()}")
    if not edges:
        return []

    times = instance.times
    ends = [window_end_from_times(times, t, d) for _, t in edges]
    fn = partial(_audit_sample, instance, beta, root_seed, edges, ends)
    values = np.asarray(run_trials(fn, samples, workers), dtype=float)

    rewards = instance.rewards
    reports = []
    for k, (i, t) in enumerate(edges):
        column = values[:, k]
        mean = math.fsum(column) / samples
        se = float(column.std(ddof=1)) / math.sqrt(samples)
        target = alpha * rewards[i]
        ok = mean >= target - SE_MULTIPLIER * se - 1e-12
        report = EdgeAuditReport(
            instance_id=instance.label(),
            resource=i,
            arrival=t,
            samples=samples,
            mean=mean,
            se=se,
            target=target,
            verdict=Verdict.PASS if ok else Verdict.FAIL,
        )
        logger.log_audit(report)
        reports.append(report)
    return reports


def audit_edge(
    instance: Instance,
    edge: Tuple[int, int],
    beta: float = DEFAULT_BETA,
    alpha: float = 0.589,
    samples: int = 20000,
    root_seed: int = 0,
    workers: int = 1,
) -> EdgeAuditReport:
    return audit_instance(instance, beta, alpha, samples, root_seed, workers, edges=[edge])[0]
