"""Seedable SplitMix64 streams with Box-Muller normal variates.

SplitMix64 is counter based: the k-th output of a stream is a pure function
of (seed, k). That makes stream derivation trivial and keeps results identical
on every platform, independent of numpy's own generators.
"""

from __future__ import annotations

import numpy as np

GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MASK64 = (1 << 64) - 1

_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_TWO_POW_M53 = 2.0**-53


def _mix_array(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def mix64(z: int) -> int:
    """SplitMix64 finalizer on a Python int."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, key: int) -> int:
    """Seed of the child stream number ``key`` of ``seed``."""
    return mix64((seed & MASK64) ^ mix64((key * GOLDEN_GAMMA + GOLDEN_GAMMA) & MASK64))


class SplitMix64:
    """One SplitMix64 stream. Not shared between threads."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self, count: int) -> np.ndarray:
        """Next ``count`` raw 64-bit outputs."""
        steps = np.arange(1, count + 1, dtype=np.uint64) * np.uint64(GOLDEN_GAMMA)
        out = _mix_array(np.uint64(self.state) + steps)
        self.state = (self.state + count * GOLDEN_GAMMA) & MASK64
        return out

    def uniform(self, count: int) -> np.ndarray:
        """Uniform doubles on [0, 1) with 53 random bits."""
        return (self.next_u64(count) >> np.uint64(11)).astype(np.float64) * _TWO_POW_M53

    def normal(self, count: int) -> np.ndarray:
        """Standard normal variates by the Box-Muller pair transform."""
        pairs = (count + 1) // 2
        raw = self.next_u64(2 * pairs) >> np.uint64(11)
        # u1 in (0, 1] so the log is finite
        u1 = (raw[0::2].astype(np.float64) + 1.0) * _TWO_POW_M53
        u2 = raw[1::2].astype(np.float64) * _TWO_POW_M53
        radius = np.sqrt(-2.0 * np.log(u1))
        angle = 2.0 * np.pi * u2
        out = np.empty(2 * pairs)
        out[0::2] = radius * np.cos(angle)
        out[1::2] = radius * np.sin(angle)
        return out[:count]
