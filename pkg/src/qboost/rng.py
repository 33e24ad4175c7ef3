"""Portable seeded random number generator.

SplitMix64 (Steele, Lea & Flood 2014) is used for every random choice in the
package so that a seed reproduces the same stream on any platform and in any
language. The state is a single unsigned 64-bit integer::

    state += 0x9E3779B97F4A7C15
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    out = z ^ (z >> 31)

all arithmetic mod 2**64. Uniform doubles take the top 53 bits,
``(out >> 11) * 2**-53``, which lies in [0, 1). An index below ``n`` is
``floor(u * n)`` for such a uniform ``u``.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_INV_2_53 = 1.0 / (1 << 53)


def splitmix64_next(state: int) -> tuple[int, int]:
    """Advance ``state`` once. Returns ``(new_state, output)``."""
    state = (state + GOLDEN_GAMMA) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return state, z ^ (z >> 31)


class SplitMix64:
    """Seeded SplitMix64 stream.

    The compiled kernels read ``state``, run, and hand the advanced state
    back, so a generator can be shared between Python code and the kernels
    without the two ever drawing different numbers.
    """

    __slots__ = ("state",)

    def __init__(self, seed: int = 0):
        self.state = int(seed) & MASK64

    def next_u64(self) -> int:
        self.state, out = splitmix64_next(self.state)
        return out

    def random(self) -> float:
        """Uniform double in [0, 1)."""
        return (self.next_u64() >> 11) * _INV_2_53

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n)."""
        return int(self.random() * n)

    def spawn(self, key: int) -> SplitMix64:
        """Independent child stream derived from the current state and ``key``."""
        _, out = splitmix64_next((self.state ^ ((key * GOLDEN_GAMMA) & MASK64)) & MASK64)
        return SplitMix64(out)

    def __repr__(self):
        return f"SplitMix64(state=0x{self.state:016x})"
