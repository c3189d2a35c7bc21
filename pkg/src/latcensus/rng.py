"""Seedable, reproducible 64-bit random generator (SplitMix64).

The generator is fully specified by its 64-bit seed, so identical seeds
give bit-identical streams on every platform and Python version.  Parallel
draws use the documented stream-split rule: child stream i of a generator
seeded with s is seeded with mix64(s + (i + 1) * GOLDEN), where mix64 is
the SplitMix64 output function.  Distinct children are decorrelated and
deterministic.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def _mix64(z: int) -> int:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _MASK
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK
    return z ^ (z >> 31)


class SplitMix64:
    """SplitMix64 stream over 64-bit unsigned integers."""

    __slots__ = ("seed", "_state")

    def __init__(self, seed: int):
        self.seed = seed & _MASK
        self._state = self.seed

    def next_u64(self) -> int:
        self._state = (self._state + GOLDEN) & _MASK
        return _mix64(self._state)

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n), by rejection (exactly uniform)."""
        if n <= 0:
            raise ValueError("randbelow requires n >= 1")
        if n == 1:
            return 0
        limit = _MASK + 1 - (_MASK + 1) % n
        while True:
            u = self.next_u64()
            if u < limit:
                return u % n

    def split(self, i: int) -> "SplitMix64":
        """Child stream i (see module docstring for the split rule)."""
        if i < 0:
            raise ValueError("stream index must be nonnegative")
        return SplitMix64(_mix64((self.seed + (i + 1) * GOLDEN) & _MASK))
