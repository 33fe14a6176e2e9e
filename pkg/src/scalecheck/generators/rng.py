"""Seeded random source shared by all generators."""
from __future__ import annotations

import numpy as np


class SeededRng:
    """Deterministic uniform stream: one seed, one byte-identical sample path.

    Draws are buffered but consumed strictly in order, so outputs depend only
    on the seed and the sequence of calls.
    """

    algorithm = "numpy.random.PCG64"

    def __init__(self, seed: int, _block: int = 1 << 16):
        self.seed = int(seed)
        self._gen = np.random.Generator(np.random.PCG64(self.seed))
        self._block = _block
        self._buf = self._gen.random(_block)
        self._pos = 0

    def uniform(self) -> float:
        """Next float in [0, 1)."""
        if self._pos == self._buf.size:
            self._buf = self._gen.random(self._block)
            self._pos = 0
        u = self._buf[self._pos]
        self._pos += 1
        return float(u)

    def randrange(self, n: int) -> int:
        """Uniform integer in [0, n)."""
        return int(self.uniform() * n)

    def choice_index(self, cumulative: np.ndarray) -> int:
        """Index drawn proportionally to the increments of a cumulative weight array."""
        u = self.uniform() * cumulative[-1]
        i = int(np.searchsorted(cumulative, u, side="right"))
        return min(i, len(cumulative) - 1)
