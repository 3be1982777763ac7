"""Deterministic seeding and random draws built on SplitMix64.

Every random decision in the engine flows through this module so that two
runs with the same seeds produce byte-identical output regardless of worker
count or call order.  Sub-streams are derived by mixing a tag into a parent
seed; a `Stream` is the canonical SplitMix64 sequence, so the n-th output of
``Stream(seed)`` equals ``_finalize(seed + (n+1)*GOLDEN)`` and vectorized
draws can reproduce it without iteration.
"""

import math

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_MIX_C1 = 0xBF58476D1CE4E5B9
_MIX_C2 = 0x94D049BB133111EB


def _finalize(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * _MIX_C1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX_C2) & MASK64
    return z ^ (z >> 31)


def mix64(x: int) -> int:
    """SplitMix64 of x: one golden-gamma step plus the avalanche finalizer."""
    return _finalize((x + GOLDEN) & MASK64)


def derive(seed: int, tag: int) -> int:
    """Child seed for a named sub-stream: mix64(seed ^ tag)."""
    return mix64((seed ^ tag) & MASK64)


def mix64_array(x: np.ndarray) -> np.ndarray:
    """Vectorized mix64 over a uint64 array."""
    with np.errstate(over="ignore"):
        z = (x + np.uint64(GOLDEN)).astype(np.uint64)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX_C1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX_C2)
        return z ^ (z >> np.uint64(31))


def u64_to_unit(h) -> np.ndarray | float:
    """Map uint64 to float64 in [0, 1) using the top 53 bits."""
    if isinstance(h, np.ndarray):
        return (h >> np.uint64(11)).astype(np.float64) * 2.0**-53
    return (int(h) >> 11) * 2.0**-53


class Stream:
    """Sequential SplitMix64 draw stream.

    Stateless reproduction: output n (0-based) is mix64 of
    seed + n*GOLDEN, so `block` can hand out vectorized chunks that agree
    exactly with scalar draws.
    """

    def __init__(self, seed: int):
        self._seed = seed & MASK64
        self._n = 0

    def u64(self) -> int:
        h = _finalize((self._seed + (self._n + 1) * GOLDEN) & MASK64)
        self._n += 1
        return h

    def u64_block(self, count: int) -> np.ndarray:
        start = self._n
        self._n += count
        with np.errstate(over="ignore"):
            idx = np.arange(start + 1, start + count + 1, dtype=np.uint64)
            state = np.uint64(self._seed) + idx * np.uint64(GOLDEN)
        return mix64_array((state - np.uint64(GOLDEN)))

    def unit(self) -> float:
        return u64_to_unit(self.u64())

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.unit()

    def randint(self, lo: int, hi: int) -> int:
        """Integer uniform on [lo, hi] inclusive."""
        if hi < lo:
            raise ValueError(f"empty integer range [{lo}, {hi}]")
        span = hi - lo + 1
        return min(lo + int(self.unit() * span), hi)

    def normal(self) -> float:
        """Standard normal via one Box-Muller pair (second value discarded)."""
        u1 = ((self.u64() >> 11) + 1) * 2.0**-53
        u2 = self.unit()
        return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)

    def unit_block(self, count: int) -> np.ndarray:
        return u64_to_unit(self.u64_block(count))

    def normal_block(self, count: int) -> np.ndarray:
        """Vectorized Box-Muller, two uniforms per variate (matches normal())."""
        h = self.u64_block(2 * count)
        u1 = ((h[0::2] >> np.uint64(11)).astype(np.float64) + 1.0) * 2.0**-53
        u2 = u64_to_unit(h[1::2])
        return np.sqrt(-2.0 * np.log(u1)) * np.cos(2.0 * np.pi * u2)

    def weighted_choice(self, items, weights) -> int:
        """Index into items drawn with the given nonnegative weights."""
        total = float(sum(weights))
        if total <= 0:
            raise ValueError("weights sum to zero")
        r = self.unit() * total
        acc = 0.0
        for i, w in enumerate(weights):
            acc += float(w)
            if r < acc:
                return i
        return len(items) - 1
