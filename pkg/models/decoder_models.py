"""
Data models for LP / IP decoding results and cutting planes
"""

from enum import Enum
from typing import FrozenSet, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field, model_validator


class NodeSelection(Enum):
    """Branch-and-bound node selection rule."""
    BEST_FIRST = "best-first"
    DEPTH_FIRST = "depth-first"


class ForbiddenSetCut(BaseModel):
    """Forbidden-set inequality sum_S x_i - sum_{N\\S} x_i <= |S| - 1 for one check row.

    ``support`` is the sorted index set N of the row (a row of H or an RPC dual
    codeword); ``odd_set`` is the odd-sized subset S being forbidden.
    """
    support: Tuple[int, ...]
    odd_set: Tuple[int, ...]
    row: int = -1

    class Config:
        frozen = True

    @model_validator(mode="after")
    def _check_odd_subset(self):
        if len(self.odd_set) % 2 != 1:
            raise ValueError(f"forbidden set must have odd size, got {len(self.odd_set)}")
        if not set(self.odd_set) <= set(self.support):
            raise ValueError("forbidden set must lie inside the row support")
        return self

    @property
    def key(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        return (self.support, self.odd_set)

    @property
    def rhs(self) -> float:
        return float(len(self.odd_set) - 1)

    def coefficients(self, n: int) -> np.ndarray:
        a = np.zeros(n)
        a[list(self.support)] = -1.0
        a[list(self.odd_set)] = 1.0
        return a

    def lhs_slack(self, x: np.ndarray) -> float:
        """Left side of the separation form sum_S (1 - x_i) + sum_{N\\S} x_i (>= 1 when satisfied)."""
        x = np.asarray(x, dtype=float)
        inside = np.asarray(self.odd_set, dtype=int)
        outside = np.asarray(sorted(set(self.support) - set(self.odd_set)), dtype=int)
        return float(np.sum(1.0 - x[inside]) + (np.sum(x[outside]) if outside.size else 0.0))

    def is_violated_by(self, x: np.ndarray, tol: float = 1e-7) -> bool:
        return self.lhs_slack(x) < 1.0 - tol


class DecodeResult(BaseModel):
    """Output of an LP-family decoder."""
    x: np.ndarray
    objective: float
    integral: bool
    ml_certificate: bool
    cuts_added: int = 0
    lp_solves: int = 0
    rpc_rounds: int = 0
    max_model_rows: int = 0

    class Config:
        arbitrary_types_allowed = True

    @property
    def codeword(self) -> Optional[np.ndarray]:
        """Rounded output when the LP optimum is integral, else None."""
        if not self.integral:
            return None
        return np.rint(self.x).astype(np.uint8)


class BnbNode(BaseModel):
    """Subproblem of the branch-and-bound tree: variables fixed to 0 / to 1."""
    fixed_zero: FrozenSet[int] = Field(default_factory=frozenset)
    fixed_one: FrozenSet[int] = Field(default_factory=frozenset)
    bound: float = -np.inf
    parent_bound: float = -np.inf
    depth: int = 0

    @model_validator(mode="after")
    def _check_disjoint(self):
        if self.fixed_zero & self.fixed_one:
            raise ValueError("a variable cannot be fixed to both 0 and 1")
        return self

    def child(self, index: int, value: int) -> "BnbNode":
        zero = self.fixed_zero | {index} if value == 0 else self.fixed_zero
        one = self.fixed_one | {index} if value == 1 else self.fixed_one
        return BnbNode(fixed_zero=zero, fixed_one=one, parent_bound=self.bound, depth=self.depth + 1)


class BnbResult(BaseModel):
    """Exact optimum found by branch-and-bound."""
    x: np.ndarray
    objective: float
    nodes_explored: int
    lower_bound: float
    lp_solves: int = 0
    bound_history: List[Tuple[float, float]] = Field(default_factory=list)

    class Config:
        arbitrary_types_allowed = True


class TurboDecodeResult(BaseModel):
    """Output of the coupled-flow turbo LP decoder."""
    flows_a: np.ndarray
    flows_b: np.ndarray
    x: np.ndarray
    objective: float
    integral: bool
    ml_certificate: bool
    lp_solves: int = 1

    class Config:
        arbitrary_types_allowed = True

    @property
    def codeword(self) -> Optional[np.ndarray]:
        if not self.integral:
            return None
        return np.rint(self.x).astype(np.uint8)
