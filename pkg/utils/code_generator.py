"""
Seeded generators for random codes, LLR vectors and LP instances (tests and CLI)
"""

from typing import Optional, Tuple

import numpy as np

from channels.random_streams import frame_stream


class CodeGenerator:
    """Generate random parity-check matrices and decoder inputs from one seed."""

    def __init__(self, seed: int = 0):
        self.seed = seed
        self.rng = frame_stream(seed, 0xC0DE)

    def gallager_matrix(self, n: int, column_weight: int, row_weight: int) -> np.ndarray:
        """Regular (wc, wr) matrix: stacked column permutations of a banded block."""
        if n <= 0 or column_weight < 1 or row_weight < 2 or n % row_weight != 0:
            raise ValueError(f"n={n} must be a positive multiple of row weight {row_weight}")
        band_rows = n // row_weight
        band = np.zeros((band_rows, n), dtype=np.uint8)
        for j in range(band_rows):
            band[j, j * row_weight:(j + 1) * row_weight] = 1
        bands = [band] + [band[:, self.rng.permutation(n)] for _ in range(column_weight - 1)]
        return np.vstack(bands)

    def random_matrix(self, m: int, n: int, density: float = 0.5) -> np.ndarray:
        """Random m x n matrix with no all-zero row or column."""
        while True:
            H = (self.rng.random((m, n)) < density).astype(np.uint8)
            if H.any(axis=1).all() and H.any(axis=0).all():
                return H

    def random_llrs(self, n: int, scale: float = 1.0, count: Optional[int] = None) -> np.ndarray:
        """Gaussian LLR vectors; continuous, so ties occur with probability zero."""
        shape = (n,) if count is None else (count, n)
        return self.rng.normal(0.0, scale, size=shape)

    def random_bounded_lp(self, m: int, n: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Feasible box-bounded LP data (c, A, b, upper) with a known interior point."""
        A = self.rng.normal(size=(m, n))
        upper = self.rng.uniform(1.0, 3.0, size=n)
        interior = self.rng.uniform(0.1, 0.9, size=n) * upper
        b = A @ interior + self.rng.uniform(0.0, 1.0, size=m)
        c = self.rng.normal(size=n)
        return c, A, b, upper
