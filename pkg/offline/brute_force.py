import sys
from typing import Dict, List, Optional, Tuple
from instance.schema import Instance, DeterministicUsage
from offline.schema import OfflineResult, OfflineMethod, OfflineStatus
from util.errors import UsageModelMismatch
from util.logger import logger

DEFAULT_CAP = 10 ** 8


def search_size(instance: Instance, cap: Optional[int] = None) -> int:
    """Product of (degree + 1) over arrivals, stopping once it passes cap."""
    size = 1
    for a in instance.arrivals:
        size *= len(a.neighbors) + 1
        if cap is not None and size > cap:
            return size
    return size


def brute_force_opt(instance: Instance, cap: int = DEFAULT_CAP) -> OfflineResult:
    """Exact offline optimum by depth-first search over per-arrival choices.

    States are memoised on (arrival index, busy-until vector) with every
    resource that is already free at the arrival collapsed to one value.
    """
    durations = []
    for r in instance.resources:
        usage = instance.usage_of(r.id)
        if not isinstance(usage, DeterministicUsage):
            raise UsageModelMismatch("brute force needs deterministic usage")
        durations.append(usage.d)

    size = search_size(instance, cap)
    if size > cap:
        logger.debug(f"{instance.label()}: search size exceeds cap {cap}")
        return OfflineResult(method=OfflineMethod.BRUTE_FORCE, status=OfflineStatus.TOO_LARGE,
                             note=f"too large for exact: search size > {cap}")

    times = instance.times
    rewards = instance.rewards
    arrivals = instance.arrivals
    n_arrivals = instance.n_arrivals
    free = -1
    memo: Dict[Tuple[int, Tuple[int, ...]], Tuple[float, Optional[int]]] = {}

    def solve(k: int, busy: Tuple[int, ...]) -> float:
        if k == n_arrivals:
            return 0.0
        now = times[k]
        busy = tuple(b if b >= now else free for b in busy)
        key = (k, busy)
        hit = memo.get(key)
        if hit is not None:
            return hit[0]

        best_value = solve(k + 1, busy)
        best_choice = None
        for i in sorted(arrivals[k].neighbors):
            if busy[i] != free:
                continue
            nxt = busy[:i] + (now + durations[i],) + busy[i + 1:]
            value = rewards[i] + solve(k + 1, nxt)
            if value > best_value:
                best_value, best_choice = value, i
        memo[key] = (best_value, best_choice)
        return best_value

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * n_arrivals + 100))
    try:
        start = tuple([free] * instance.n_resources)
        value = solve(0, start)
    finally:
        sys.setrecursionlimit(limit)

    matching: List[Tuple[int, int]] = []
    busy = tuple([free] * instance.n_resources)
    for k in range(n_arrivals):
        busy = tuple(b if b >= times[k] else free for b in busy)
        _, choice = memo[(k, busy)]
        if choice is not None:
            matching.append((choice, k))
            busy = busy[:choice] + (times[k] + durations[choice],) + busy[choice + 1:]

    return OfflineResult(method=OfflineMethod.BRUTE_FORCE, value=value, matching=matching,
                         note=f"{len(memo)} states")
