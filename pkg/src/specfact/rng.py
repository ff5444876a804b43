"""Portable deterministic random source for instance generation.

Test problems must be reproducible bit-for-bit from ``(r, m, seed, ...)``
alone, across platforms and across independent implementations of the same
file formats.  numpy's generators are stable in practice but their stream
layout is an implementation detail, so generation uses splitmix64 instead: a
64-bit Weyl sequence (increment 0x9E3779B97F4A7C15) whose state is scrambled
by two xor-multiply rounds per output.  The algorithm fits in a dozen lines
and has published reference outputs, which the test suite pins.

Draw conventions, part of the reproducibility contract:

* ``uniform`` takes the top 53 bits of one output: ``(u >> 11) * 2**-53``.
* ``normal`` is Box-Muller on two outputs (cosine branch first, sine branch
  cached and returned by the next call).
* ``integer(n)`` is one output reduced mod ``n`` (bias is irrelevant at the
  sizes used here).
"""

from __future__ import annotations

import math

_MASK64 = (1 << 64) - 1
_WEYL = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """splitmix64 stream seeded with a 64-bit integer."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64
        self._spare_normal = None

    def next_u64(self) -> int:
        """Advance the Weyl state and return one scrambled 64-bit output."""
        self._state = (self._state + _WEYL) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """Uniform double in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * 2.0**-53

    def normal(self) -> float:
        """Standard normal via Box-Muller; generates in pairs."""
        if self._spare_normal is not None:
            value = self._spare_normal
            self._spare_normal = None
            return value
        # u1 in (0, 1] so the log is finite.
        u1 = ((self.next_u64() >> 11) + 1) * 2.0**-53
        u2 = self.uniform()
        radius = math.sqrt(-2.0 * math.log(u1))
        angle = 2.0 * math.pi * u2
        self._spare_normal = radius * math.sin(angle)
        return radius * math.cos(angle)

    def integer(self, n: int) -> int:
        """Integer in [0, n)."""
        if n <= 0:
            raise ValueError("n must be positive")
        return self.next_u64() % n
