from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, TypeVar

T = TypeVar("T")


def _chunks(trials: int, workers: int) -> List[range]:
    size = -(-trials // workers)
    return [range(start, min(start + size, trials)) for start in range(0, trials, size)]


def _run_chunk(fn: Callable[[int], T], indices: range) -> List[T]:
    return [fn(k) for k in indices]


def run_trials(fn: Callable[[int], T], trials: int, workers: int = 1) -> List[T]:
    """Evaluate fn(k) for k in 0..trials-1 and return results in trial order.

    fn must be picklable when workers > 1. Each trial derives its own
    randomness from its index, so the output does not depend on workers.
    """
    if trials <= 0:
        return []
    if workers <= 1 or trials == 1:
        return [fn(k) for k in range(trials)]

    chunks = _chunks(trials, workers)
    results: List[T] = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_run_chunk, [fn] * len(chunks), chunks):
            results.extend(part)
    return results
