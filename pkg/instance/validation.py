from typing import List
from instance.schema import Instance, DeterministicUsage, DiscreteUsage

PROBABILITY_TOL = 1e-12


def usage_violations(usage, where: str) -> List[str]:
    """Violations of a single usage model."""
    out = []
    if isinstance(usage, DeterministicUsage):
        if usage.d <= 0:
            out.append(f"{where}: d must be positive")
    elif isinstance(usage, DiscreteUsage):
        if not usage.atoms:
            out.append(f"{where}: discrete usage needs at least one atom")
            return out
        durations = usage.durations
        if any(dur <= 0 for dur in durations):
            out.append(f"{where}: durations must be positive")
        if any(b <= a for a, b in zip(durations, durations[1:])):
            out.append(f"{where}: durations must be strictly increasing")
        if any(p < 0 for p in usage.probabilities):
            out.append(f"{where}: probabilities must be nonnegative")
        if abs(sum(usage.probabilities) - 1.0) > PROBABILITY_TOL:
            out.append(f"{where}: probabilities must sum to 1")
    return out


def validate(instance: Instance) -> List[str]:
    """Return every invariant violation of the instance; empty means ok."""
    violations: List[str] = []

    violations.extend(usage_violations(DeterministicUsage(d=instance.d_default), "d_default"))

    for k, r in enumerate(instance.resources):
        if r.id != k:
            violations.append(f"resource {k}: ids must be dense 0..|I|-1, got {r.id}")
        if r.reward < 0:
            violations.append(f"resource {r.id}: reward must be nonnegative")
        if r.usage is not None:
            violations.extend(usage_violations(r.usage, f"resource {r.id}"))

    n = instance.n_resources
    prev_time = None
    for k, a in enumerate(instance.arrivals):
        if a.id != k:
            violations.append(f"arrival {k}: ids must be dense 0..|T|-1, got {a.id}")
        if a.time < 0:
            violations.append(f"arrival {a.id}: time must be nonnegative")
        if prev_time is not None and a.time < prev_time:
            violations.append(f"arrival {a.id}: times not sorted")
        prev_time = a.time
        if len(set(a.neighbors)) != len(a.neighbors):
            violations.append(f"arrival {a.id}: duplicate neighbor ids")
        for i in a.neighbors:
            if not 0 <= i < n:
                violations.append(f"arrival {a.id}: dangling resource id {i}")

    return violations


def is_valid(instance: Instance) -> bool:
    return not validate(instance)
