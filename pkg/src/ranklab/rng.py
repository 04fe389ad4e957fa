"""Seeding conventions for everything randomized in this package.

All sampling goes through ``random.Random`` (Mersenne Twister) seeded
explicitly; nothing reads global RNG state.  Independent substreams for
trial i of a seeded run are derived as ``substream_seed(seed, i)``:
the 64-bit trial index is folded into the seed with the splitmix64
finalizer, so substreams are decorrelated, reproducible, and do not
depend on how trials are scheduled across workers.
"""
from __future__ import annotations

import random

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(z: int) -> int:
    """One splitmix64 finalizer round on a 64-bit value."""
    z = (z + _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def substream_seed(seed: int, index: int) -> int:
    """Seed for substream ``index`` of the run seeded with ``seed``."""
    if index < 0:
        raise ValueError("substream index must be non-negative")
    return splitmix64((seed & _MASK64) ^ ((index * _GOLDEN) & _MASK64))


def make_rng(seed: int) -> random.Random:
    """A fresh deterministic generator for the given 64-bit seed."""
    return random.Random(seed & _MASK64)
