import math
from engine.simulator import window_end_from_times
from engine.trace import MatchingTrace
from analysis.schema import DualCertificate, ConstraintCheck
from policies.tradeoff import TradeoffFunction

RELATIVE_TOL = 1e-12


def dual_fit(trace: MatchingTrace, tradeoff: TradeoffFunction) -> DualCertificate:
    """Certificate of one run: each match (i, t) with seed y sets
    lambda_t = r_i (1 - g(y)) and adds r_i g(y) to theta[i][t(d)].
    """
    lam = [0.0] * len(trace.records)
    theta = {}
    if trace.match_count() == 0:
        return DualCertificate(lam=lam, theta=theta)
    if trace.d is None:
        raise ValueError("dual fitting needs the run's shared duration d")

    times = trace.times
    for t, rec in enumerate(trace.records):
        if rec.matched is None:
            continue
        if rec.seed is None:
            raise ValueError(f"arrival {rec.arrival_id} was matched without a recorded seed")
        g = tradeoff.g(rec.seed)
        lam[t] = rec.reward * (1.0 - g)
        end = window_end_from_times(times, t, trace.d)
        row = theta.setdefault(rec.matched, {})
        row[end] = row.get(end, 0.0) + rec.reward * g
    return DualCertificate(lam=lam, theta=theta)


def check_constraint_i(trace: MatchingTrace, certificate: DualCertificate) -> ConstraintCheck:
    """sum lambda + sum theta must equal the run's reward."""
    reward = trace.total_reward
    total = certificate.total()
    residual = total - reward
    return ConstraintCheck(
        passed=abs(residual) <= RELATIVE_TOL * max(1.0, abs(reward)),
        residual=residual,
        certificate_total=total,
        reward=reward,
    )


def edge_value(certificate: DualCertificate, resource: int, arrival: int, window_end: int) -> float:
    """lambda_t + sum_{tau=t}^{t(d)} theta_{i tau}."""
    return math.fsum((certificate.lam[arrival], certificate.window_sum(resource, arrival, window_end)))
