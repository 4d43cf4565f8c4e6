"""
Forbidden-set inequalities: explicit enumeration, exact separation, RPC cut search.
"""

import itertools
import logging
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from codes.linear_code import LinearCode
from config.settings import Settings
from models.decoder_models import ForbiddenSetCut
from models.errors import NoFractionalEntryError, RowTooDenseError
from utils.gf2 import diagonalize_left

logger = logging.getLogger(__name__)


def separate_row(support: Sequence[int], x: np.ndarray, row: int = -1,
                 tol: float = 1e-7) -> Optional[ForbiddenSetCut]:
    """Most violated forbidden-set inequality of one check, or None.

    S starts as {i : x_i > 1/2}; if |S| is even the entry closest to 1/2 (lowest
    index on ties) is toggled. That S minimises sum_S (1 - x_i) + sum_{N\\S} x_i,
    and the cut is returned only if the minimum is below 1 - tol.
    """
    support = tuple(sorted(int(i) for i in support))
    if not support:
        return None
    values = np.asarray(x, dtype=float)[list(support)]
    chosen = values > 0.5
    if chosen.sum() % 2 == 0:
        closest = int(np.argmin(np.abs(values - 0.5)))
        chosen[closest] = not chosen[closest]
    lhs = float(np.sum(1.0 - values[chosen]) + np.sum(values[~chosen]))
    if lhs >= 1.0 - tol:
        return None
    odd_set = tuple(i for i, keep in zip(support, chosen) if keep)
    return ForbiddenSetCut(support=support, odd_set=odd_set, row=row)


def odd_subsets(support: Sequence[int]):
    for size in range(1, len(support) + 1, 2):
        yield from itertools.combinations(support, size)


def full_polytope_inequalities(code: LinearCode, max_row_weight: Optional[int] = None) -> List[ForbiddenSetCut]:
    """Every forbidden-set inequality of every check row (2^(|N_j| - 1) per row)."""
    limit = max_row_weight if max_row_weight is not None else Settings().MAX_ROW_WEIGHT
    cuts = []
    for j, support in enumerate(code.checks):
        if len(support) > limit:
            raise RowTooDenseError(f"row {j} has weight {len(support)} > {limit}")
        cuts.extend(ForbiddenSetCut(support=support, odd_set=s, row=j) for s in odd_subsets(support))
    return cuts


def cut_matrix(cuts: Sequence[ForbiddenSetCut], n: int) -> Tuple[np.ndarray, np.ndarray]:
    """Stack cuts into A x <= b."""
    if not cuts:
        return np.zeros((0, n)), np.zeros(0)
    return np.vstack([c.coefficients(n) for c in cuts]), np.array([c.rhs for c in cuts])


def in_fundamental_polytope(code: LinearCode, x, tol: float = 1e-9) -> bool:
    """Membership in P(H): box bounds and no separable forbidden-set cut on any row."""
    x = np.asarray(x, dtype=float)
    if np.any(x < -tol) or np.any(x > 1.0 + tol):
        return False
    return all(separate_row(s, x, tol=tol) is None for s in code.checks)


def rpc_cut_search(code: LinearCode, x: np.ndarray, integrality_tol: Optional[float] = None,
                   violation_tol: Optional[float] = None) -> List[ForbiddenSetCut]:
    """Cuts from redundant parity checks.

    Columns of H are ordered by |x_i - 1/2| (most fractional first), H is
    diagonalized on that order, and every row of the result, a dual codeword, is
    run through separate_row.
    """
    settings = Settings()
    int_tol = integrality_tol if integrality_tol is not None else settings.INTEGRALITY_TOL
    cut_tol = violation_tol if violation_tol is not None else settings.CUT_VIOLATION_TOL
    x = np.asarray(x, dtype=float)
    fractional = (x > int_tol) & (x < 1.0 - int_tol)
    if not fractional.any():
        raise NoFractionalEntryError("RPC cut search needs a fractional point")
    order = np.argsort(np.abs(x - 0.5), kind="stable")
    reduced = diagonalize_left(code.H, order)

    found: Dict[tuple, ForbiddenSetCut] = {}
    for r in range(reduced.rows):
        support = reduced.support(r)
        cut = separate_row(support, x, row=-1, tol=cut_tol)
        if cut is not None and cut.key not in found:
            found[cut.key] = cut
    logger.debug(f"RPC search on {int(fractional.sum())} fractional entries found {len(found)} cuts")
    return list(found.values())
