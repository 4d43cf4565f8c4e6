"""
Reader and writer for parity-check matrices in alist format.

Layout (all counts whitespace separated, indices 1-based, zero padding allowed):

    n m
    max_column_degree max_row_degree
    column degrees (n numbers)
    row degrees (m numbers)
    n lines: row indices of the ones in each column
    m lines: column indices of the ones in each row
"""

import logging
from pathlib import Path
from typing import List, Union

import numpy as np

from models.errors import AlistParseError, InconsistentAlistError
from utils.gf2 import BitMatrix

logger = logging.getLogger(__name__)


def _int_lines(text: str) -> List[List[int]]:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        raw = raw.strip()
        if not raw:
            continue
        try:
            lines.append([int(tok) for tok in raw.split()])
        except ValueError:
            raise AlistParseError(f"line {number}: non-integer entry in {raw!r}")
    return lines


def _index_block(lines: List[List[int]], start: int, count: int, degrees: List[int], bound: int, what: str):
    block = []
    for t in range(count):
        if start + t >= len(lines):
            raise AlistParseError(f"missing {what} index line {t + 1}")
        indices = [v for v in lines[start + t] if v != 0]
        if len(indices) != degrees[t]:
            raise AlistParseError(f"{what} {t + 1}: degree {degrees[t]} but {len(indices)} indices")
        if any(not 1 <= v <= bound for v in indices):
            raise AlistParseError(f"{what} {t + 1}: index out of range 1..{bound}")
        block.append(sorted(indices))
    return block


def parse_alist(text: str) -> BitMatrix:
    """Parse alist text into a parity-check matrix."""
    lines = _int_lines(text)
    if len(lines) < 4:
        raise AlistParseError("alist needs at least the header and both degree lines")
    if len(lines[0]) != 2 or len(lines[1]) != 2:
        raise AlistParseError("first two lines must hold exactly two numbers")
    n, m = lines[0]
    if n <= 0 or m <= 0:
        raise AlistParseError(f"non-positive dimensions n={n}, m={m}")
    column_degrees, row_degrees = lines[2], lines[3]
    if len(column_degrees) != n or len(row_degrees) != m:
        raise AlistParseError("degree lines do not match the declared dimensions")
    if max(column_degrees) > lines[1][0] or max(row_degrees) > lines[1][1]:
        raise AlistParseError("a degree exceeds the declared maximum")

    by_column = _index_block(lines, 4, n, column_degrees, m, "column")
    by_row = _index_block(lines, 4 + n, m, row_degrees, n, "row")

    H = np.zeros((m, n), dtype=np.uint8)
    for i, rows in enumerate(by_column):
        H[[r - 1 for r in rows], i] = 1
    H_rows = np.zeros((m, n), dtype=np.uint8)
    for j, cols in enumerate(by_row):
        H_rows[j, [c - 1 for c in cols]] = 1
    if not np.array_equal(H, H_rows):
        raise InconsistentAlistError("column and row index lists describe different matrices")
    return BitMatrix.from_array(H)


def load_alist(path: Union[str, Path]) -> BitMatrix:
    """Read a parity-check matrix from an alist file."""
    path = Path(path)
    logger.debug(f"loading alist {path}")
    return parse_alist(path.read_text())


def format_alist(H: BitMatrix) -> str:
    dense = H.to_array()
    m, n = dense.shape
    columns = [list(np.flatnonzero(dense[:, i]) + 1) for i in range(n)]
    rows = [list(np.flatnonzero(dense[j]) + 1) for j in range(m)]
    col_max = max(len(c) for c in columns)
    row_max = max(len(r) for r in rows)

    def padded(indices, width):
        return " ".join(str(v) for v in list(indices) + [0] * (width - len(indices)))

    out = [f"{n} {m}", f"{col_max} {row_max}",
           " ".join(str(len(c)) for c in columns),
           " ".join(str(len(r)) for r in rows)]
    out += [padded(c, col_max) for c in columns]
    out += [padded(r, row_max) for r in rows]
    return "\n".join(out) + "\n"


def save_alist(H: BitMatrix, path: Union[str, Path]) -> Path:
    """Write a parity-check matrix in alist format (zero padded to the maximum degrees)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_alist(H))
    return path
