"""
Exact linear algebra over the binary field.

Matrices are stored with their rows packed into 64-bit words, so the row XOR
that dominates elimination is a single vectorised operation per row.
"""

from typing import List, NamedTuple, Sequence

import numpy as np

from models.errors import LengthMismatchError, PivotOnZeroError

WORD_BITS = 64
_ONE = np.uint64(1)


def _pack_rows(dense: np.ndarray) -> np.ndarray:
    rows, cols = dense.shape
    words = max(1, (cols + WORD_BITS - 1) // WORD_BITS)
    padded = np.zeros((rows, words * WORD_BITS), dtype=np.uint8)
    padded[:, :cols] = dense
    packed = np.packbits(padded, axis=1, bitorder="little")
    return packed.view("<u8").astype(np.uint64).reshape(rows, words)


def _unpack_rows(packed: np.ndarray, cols: int) -> np.ndarray:
    as_bytes = packed.astype("<u8").view(np.uint8).reshape(packed.shape[0], -1)
    return np.unpackbits(as_bytes, axis=1, bitorder="little")[:, :cols]


class BitMatrix:
    """Immutable matrix over F2 with word-packed rows."""

    def __init__(self, packed: np.ndarray, cols: int):
        if packed.ndim != 2 or packed.shape[0] < 1 or cols < 1:
            raise ValueError("BitMatrix needs at least one row and one column")
        self._packed = packed.astype(np.uint64, copy=True)
        self._packed.flags.writeable = False
        self._cols = cols
        self._dense = None

    @classmethod
    def from_array(cls, array) -> "BitMatrix":
        dense = np.asarray(array)
        if dense.ndim == 1:
            dense = dense.reshape(1, -1)
        if dense.ndim != 2 or dense.shape[0] < 1 or dense.shape[1] < 1:
            raise ValueError(f"expected a non-empty 2-D array, got shape {dense.shape}")
        if not np.all((dense == 0) | (dense == 1)):
            raise ValueError("BitMatrix entries must be 0 or 1")
        return cls(_pack_rows(dense.astype(np.uint8)), dense.shape[1])

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls.from_array(np.eye(n, dtype=np.uint8))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls.from_array(np.zeros((rows, cols), dtype=np.uint8))

    @property
    def rows(self) -> int:
        return self._packed.shape[0]

    @property
    def cols(self) -> int:
        return self._cols

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def packed(self) -> np.ndarray:
        return self._packed

    def to_array(self) -> np.ndarray:
        """Dense uint8 copy of the matrix."""
        if self._dense is None:
            dense = _unpack_rows(self._packed, self._cols)
            dense.flags.writeable = False
            self._dense = dense
        return self._dense.copy()

    def __getitem__(self, index) -> int:
        i, j = index
        word = self._packed[i, j // WORD_BITS]
        return int((word >> np.uint64(j % WORD_BITS)) & _ONE)

    def row(self, i: int) -> np.ndarray:
        return self.to_array()[i]

    def column(self, j: int) -> np.ndarray:
        words = self._packed[:, j // WORD_BITS]
        return ((words >> np.uint64(j % WORD_BITS)) & _ONE).astype(np.uint8)

    def support(self, i: int) -> tuple:
        return tuple(int(j) for j in np.flatnonzero(self.row(i)))

    def count_ones(self) -> int:
        return int(self.to_array().sum())

    def is_zero(self) -> bool:
        return not self._packed.any()

    def multiply(self, x) -> np.ndarray:
        """Product M·x over F2 (a syndrome when M is a parity-check matrix)."""
        vector = np.asarray(x, dtype=np.int64).reshape(-1)
        if vector.shape[0] != self._cols:
            raise LengthMismatchError(f"expected length {self._cols}, got {vector.shape[0]}")
        return (self.to_array().astype(np.int64) @ vector % 2).astype(np.uint8)

    def permute_columns(self, order: Sequence[int]) -> "BitMatrix":
        """Matrix whose t-th column is column order[t] of this one."""
        return BitMatrix.from_array(self.to_array()[:, list(order)])

    def transpose(self) -> "BitMatrix":
        return BitMatrix.from_array(self.to_array().T)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self._packed, other._packed)

    def __hash__(self):
        return hash((self.shape, self._packed.tobytes()))

    def __repr__(self) -> str:
        body = "\n".join(" ".join(str(int(b)) for b in row) for row in self.to_array())
        return f"BitMatrix({self.rows}x{self.cols})\n{body}"


class EchelonForm(NamedTuple):
    matrix: BitMatrix
    rank: int
    pivot_cols: List[int]


def _bit(packed: np.ndarray, r: int, j: int) -> bool:
    return bool((packed[r, j // WORD_BITS] >> np.uint64(j % WORD_BITS)) & _ONE)


def _column_bits(packed: np.ndarray, j: int) -> np.ndarray:
    return ((packed[:, j // WORD_BITS] >> np.uint64(j % WORD_BITS)) & _ONE).astype(bool)


def _eliminate_column(packed: np.ndarray, i: int, j: int) -> None:
    """XOR row i into every other row with a 1 in column j (in place)."""
    hits = _column_bits(packed, j)
    hits[i] = False
    if hits.any():
        packed[hits] ^= packed[i]


def gaussian_pivot(M: BitMatrix, i: int, j: int) -> BitMatrix:
    """Pivot on entry (i, j): column j becomes the i-th unit vector, row space unchanged."""
    if M[i, j] != 1:
        raise PivotOnZeroError(f"entry ({i}, {j}) is zero")
    packed = np.array(M.packed)
    _eliminate_column(packed, i, j)
    return BitMatrix(packed, M.cols)


def _reduce(packed: np.ndarray, cols: int, column_order: Sequence[int]) -> List[int]:
    """Gauss-Jordan elimination in place, visiting columns in the given order."""
    rows = packed.shape[0]
    pivot_row = 0
    pivots = []
    for j in column_order:
        if pivot_row == rows:
            break
        candidates = np.flatnonzero(_column_bits(packed, j)[pivot_row:])
        if candidates.size == 0:
            continue
        r = pivot_row + int(candidates[0])
        if r != pivot_row:
            packed[[pivot_row, r]] = packed[[r, pivot_row]]
        _eliminate_column(packed, pivot_row, j)
        pivots.append(int(j))
        pivot_row += 1
    return pivots


def row_echelon(M: BitMatrix) -> EchelonForm:
    """Reduced row-echelon form over F2 with its rank and pivot columns."""
    packed = np.array(M.packed)
    pivots = _reduce(packed, M.cols, range(M.cols))
    return EchelonForm(BitMatrix(packed, M.cols), len(pivots), pivots)


def rank(M: BitMatrix) -> int:
    return row_echelon(M).rank


def nullspace(M: BitMatrix) -> List[np.ndarray]:
    """Basis of {x : M·x = 0} as a list of uint8 vectors."""
    reduced, r, pivots = row_echelon(M)
    dense = reduced.to_array()
    free = [j for j in range(M.cols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = np.zeros(M.cols, dtype=np.uint8)
        v[f] = 1
        for row, p in enumerate(pivots):
            v[p] = dense[row, f]
        basis.append(v)
    return basis


def diagonalize_left(M: BitMatrix, col_order: Sequence[int]) -> BitMatrix:
    """Row-reduce M so that, read in col_order, the leading columns are unit vectors.

    The result is returned in the original column order.
    """
    order = [int(j) for j in col_order]
    if sorted(order) != list(range(M.cols)):
        raise ValueError("col_order must be a permutation of all column indices")
    packed = np.array(M.packed)
    _reduce(packed, M.cols, order)
    return BitMatrix(packed, M.cols)
