from typing import Dict, Mapping, Optional, Tuple
import numpy as np

# Seeds are produced in fixed-size chunks per (resource, epoch block); a chunk
# is addressed by the Philox counter, so any seed can be recomputed alone.
CHUNK = 16
# Lowest epoch a caller may ask for: the dummy period before the first arrival.
MIN_EPOCH = -1


class SeedVector:
    """Uniform seeds y[i, e] for every (resource, epoch), derived from a root seed.

    Counter-based: the Philox key is (root, trial) and the counter encodes
    (resource, epoch block), so seeds of distinct pairs are independent and
    a pinned seed never shifts any other seed.
    """

    def __init__(self, root: int, trial: int = 0, pins: Optional[Mapping[Tuple[int, int], float]] = None):
        self.root = int(root)
        self.trial = int(trial)
        if self.root < 0 or self.trial < 0:
            raise ValueError(f"root and trial must be nonnegative, got root={self.root} trial={self.trial}")
        self.pins: Dict[Tuple[int, int], float] = {}
        for key, value in (pins or {}).items():
            self._check_pin(key, value)
            self.pins[(int(key[0]), int(key[1]))] = float(value)
        self._key = np.array([self.root, self.trial], dtype=np.uint64)
        self._chunks: Dict[Tuple[int, int], np.ndarray] = {}
        self._used: Dict[Tuple[int, int], float] = {}

    @staticmethod
    def _check_pin(key, value):
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"pinned seed {key} must lie in [0, 1], got {value}")

    def _chunk(self, resource: int, block: int) -> np.ndarray:
        cached = self._chunks.get((resource, block))
        if cached is None:
            counter = np.array([0, 0, resource, block], dtype=np.uint64)
            gen = np.random.Generator(np.random.Philox(key=self._key, counter=counter))
            cached = gen.random(CHUNK)
            self._chunks[(resource, block)] = cached
        return cached

    def get(self, resource: int, epoch: int) -> float:
        """Seed of resource in epoch (pinned value if one was set)."""
        key = (resource, epoch)
        pinned = self.pins.get(key)
        if pinned is not None:
            self._used[key] = pinned
            return pinned
        if epoch < MIN_EPOCH or resource < 0:
            raise ValueError(f"no seed for resource {resource}, epoch {epoch}")
        offset = epoch - MIN_EPOCH
        value = float(self._chunk(resource, offset // CHUNK)[offset % CHUNK])
        self._used[key] = value
        return value

    def pinned(self, pins: Mapping[Tuple[int, int], float]) -> "SeedVector":
        """Copy with the same root and additional pins; every other seed is unchanged."""
        merged = dict(self.pins)
        merged.update(pins)
        return SeedVector(self.root, self.trial, merged)

    def snapshot(self) -> Dict[str, float]:
        """Every seed read so far, keyed "resource:epoch", enough to replay a run."""
        return {f"{i}:{e}": v for (i, e), v in sorted(self._used.items())}

    def describe(self) -> Dict[str, object]:
        return {
            "root": self.root,
            "trial": self.trial,
            "pins": {f"{i}:{e}": v for (i, e), v in sorted(self.pins.items())},
            "seeds": self.snapshot(),
        }

    @classmethod
    def replay(cls, snapshot: Mapping[str, float], root: int = 0, trial: int = 0) -> "SeedVector":
        """Rebuild a vector whose every recorded seed is pinned to the recorded value."""
        pins = {}
        for key, value in snapshot.items():
            i, e = key.split(":")
            pins[(int(i), int(e))] = value
        return cls(root, trial, pins)
