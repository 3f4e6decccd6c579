"""Seeded 64-bit stream for all randomness in the package.

Backed by numpy's PCG64 (PCG-XSL-RR 128/64). Only the raw 64-bit outputs
are used, and integers are derived from them here, so results do not depend
on numpy's distribution code. The raw stream is pinned by test vectors in
the test suite.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1


class Pcg64Stream:
    def __init__(self, seed: int, substream: int | None = None):
        if substream is None:
            self._bitgen = np.random.PCG64(seed & MASK64)
        else:
            self._bitgen = np.random.PCG64(np.random.SeedSequence([seed & MASK64, substream]))

    def raw(self, count: int) -> np.ndarray:
        return self._bitgen.random_raw(count)

    def next64(self) -> int:
        return int(self._bitgen.random_raw())

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)`` by rejection (no modulo bias)."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            r = self.next64()
            if r < limit:
                return r % bound

    def between(self, lo: int, hi: int) -> int:
        """Uniform integer in the closed range ``[lo, hi]``."""
        return lo + self.below(hi - lo + 1)
