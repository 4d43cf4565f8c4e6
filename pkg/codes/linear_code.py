"""
Binary linear block codes defined by a parity-check matrix
"""

import itertools
import logging
from typing import List, Optional

import numpy as np

from config.settings import Settings
from models.code_models import FactorGraph
from models.errors import LengthMismatchError, TooLargeError, ZeroMatrixError
from utils.gf2 import BitMatrix, nullspace, rank

logger = logging.getLogger(__name__)


class LinearCode:
    """(n, k) code C = {x : Hx = 0}; redundant rows of H are kept."""

    def __init__(self, H: BitMatrix, name: Optional[str] = None, enumeration_limit: Optional[int] = None):
        if H.is_zero():
            raise ZeroMatrixError("parity-check matrix has no nonzero entry")
        self.H = H
        self.name = name or f"code{H.cols}"
        self.n = H.cols
        self.m = H.rows
        self.rank = rank(H)
        self.k = self.n - self.rank
        self.enumeration_limit = (enumeration_limit if enumeration_limit is not None
                                  else Settings().ENUMERATION_LIMIT)
        # empty rows carry no constraint; they are kept in H but get no check
        self.checks: List[tuple] = [H.support(j) for j in range(self.m)]
        basis = nullspace(H)
        self.generator = (np.array(basis, dtype=np.uint8) if basis
                          else np.zeros((0, self.n), dtype=np.uint8))
        self._codewords: Optional[np.ndarray] = None

    def __repr__(self) -> str:
        return f"LinearCode({self.name}: n={self.n}, k={self.k}, m={self.m})"

    @property
    def rate(self) -> float:
        return self.k / self.n

    @property
    def H_array(self) -> np.ndarray:
        return self.H.to_array()

    def encode(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=np.int64).reshape(-1)
        if u.shape[0] != self.k:
            raise LengthMismatchError(f"expected {self.k} information bits, got {u.shape[0]}")
        if self.k == 0:
            return np.zeros(self.n, dtype=np.uint8)
        return (u @ self.generator.astype(np.int64) % 2).astype(np.uint8)

    def is_codeword(self, x) -> bool:
        return not self.H.multiply(x).any()

    def _check_enumerable(self) -> None:
        if self.k > self.enumeration_limit:
            raise TooLargeError(f"k={self.k} exceeds the enumeration limit {self.enumeration_limit}")

    def codewords(self) -> np.ndarray:
        """All 2^k codewords as rows of a (2^k, n) uint8 array."""
        self._check_enumerable()
        if self._codewords is None:
            if self.k == 0:
                words = np.zeros((1, self.n), dtype=np.uint8)
            else:
                infos = np.array(list(itertools.product((0, 1), repeat=self.k)), dtype=np.int64)
                words = (infos @ self.generator.astype(np.int64) % 2).astype(np.uint8)
            words.flags.writeable = False
            self._codewords = words
        return self._codewords

    def min_distance_bruteforce(self) -> int:
        words = self.codewords()
        weights = words.sum(axis=1)
        nonzero = weights[weights > 0]
        if nonzero.size == 0:
            raise ValueError("the code has no nonzero codeword")
        return int(nonzero.min())

    def factor_graph(self) -> FactorGraph:
        edges = [(j, i) for j, support in enumerate(self.checks) for i in support]
        return FactorGraph(num_variables=self.n, num_checks=self.m, edges=edges)

    def sample_codeword(self, rng: np.random.Generator) -> np.ndarray:
        """Uniform codeword: encode a uniform information word."""
        return self.encode(rng.integers(0, 2, size=self.k))

    @property
    def max_row_weight(self) -> int:
        return max(len(s) for s in self.checks)


def make_code(H, name: Optional[str] = None) -> LinearCode:
    """Build a LinearCode from a BitMatrix or a 0/1 array."""
    matrix = H if isinstance(H, BitMatrix) else BitMatrix.from_array(H)
    return LinearCode(matrix, name=name)
