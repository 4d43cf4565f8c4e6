"""
Data models for linear programs and simplex results
"""

from enum import Enum
from typing import List, Optional, Sequence

import numpy as np
from pydantic import BaseModel, Field, model_validator


class RowSense(Enum):
    """Constraint row sense."""
    LE = "<="
    EQ = "="
    GE = ">="


class LpStatus(Enum):
    """Outcome of a simplex run."""
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"
    STALLED = "stalled"


class LpModel(BaseModel):
    """Dense LP: optimise c·x subject to row constraints A·x (sense) b and variable bounds."""
    c: np.ndarray
    A: np.ndarray
    b: np.ndarray
    senses: List[RowSense]
    lower: np.ndarray
    upper: np.ndarray
    maximize: bool = False

    class Config:
        arbitrary_types_allowed = True

    @model_validator(mode="after")
    def _check_dimensions(self):
        n = self.c.shape[0]
        if self.A.shape != (len(self.senses), n):
            raise ValueError(f"A has shape {self.A.shape}, expected ({len(self.senses)}, {n})")
        if self.b.shape != (len(self.senses),):
            raise ValueError("b must have one entry per row")
        if self.lower.shape != (n,) or self.upper.shape != (n,):
            raise ValueError("bounds must have one entry per variable")
        if np.any(np.isnan(self.A)) or np.any(np.isnan(self.b)) or np.any(np.isnan(self.c)):
            raise ValueError("LP data must not contain NaN")
        return self

    @classmethod
    def build(cls, c, A=None, b=None, senses: Optional[Sequence] = None,
              lower=None, upper=None, maximize: bool = False) -> "LpModel":
        """Normalise shapes; default bounds are 0 <= x < inf, default sense is <=."""
        c = np.asarray(c, dtype=float).reshape(-1)
        n = c.shape[0]
        A = np.zeros((0, n)) if A is None else np.asarray(A, dtype=float).reshape(-1, n)
        b = np.zeros(0) if b is None else np.asarray(b, dtype=float).reshape(-1)
        if senses is None:
            senses = [RowSense.LE] * A.shape[0]
        senses = [s if isinstance(s, RowSense) else RowSense(s) for s in senses]
        lower = np.zeros(n) if lower is None else np.asarray(lower, dtype=float).reshape(-1)
        upper = np.full(n, np.inf) if upper is None else np.asarray(upper, dtype=float).reshape(-1)
        return cls(c=c, A=A, b=b, senses=senses, lower=lower, upper=upper, maximize=maximize)

    @property
    def num_vars(self) -> int:
        return self.c.shape[0]

    @property
    def num_rows(self) -> int:
        return len(self.senses)

    def with_rows(self, A_new, b_new, senses_new: Sequence[RowSense]) -> "LpModel":
        """Copy of the model with rows appended at the end."""
        A_new = np.asarray(A_new, dtype=float).reshape(-1, self.num_vars)
        return LpModel(
            c=self.c, A=np.vstack([self.A, A_new]),
            b=np.concatenate([self.b, np.asarray(b_new, dtype=float).reshape(-1)]),
            senses=list(self.senses) + list(senses_new),
            lower=self.lower, upper=self.upper, maximize=self.maximize,
        )

    def with_bounds(self, lower, upper) -> "LpModel":
        return LpModel(
            c=self.c, A=self.A, b=self.b, senses=list(self.senses),
            lower=np.asarray(lower, dtype=float), upper=np.asarray(upper, dtype=float),
            maximize=self.maximize,
        )

    def with_objective(self, c, maximize: Optional[bool] = None) -> "LpModel":
        return LpModel(
            c=np.asarray(c, dtype=float), A=self.A, b=self.b, senses=list(self.senses),
            lower=self.lower, upper=self.upper,
            maximize=self.maximize if maximize is None else maximize,
        )


class Basis(BaseModel):
    """Simplex basis over the columns of a standard-form model.

    ``basic[r]`` is the column basic in row r; ``at_upper[j]`` records the bound
    a nonbasic column sits at.
    """
    basic: List[int]
    at_upper: np.ndarray

    class Config:
        arbitrary_types_allowed = True

    def nonbasic(self) -> List[int]:
        members = set(self.basic)
        return [j for j in range(self.at_upper.shape[0]) if j not in members]


class LpSolution(BaseModel):
    """Result of a simplex run, reported in the variables of the original model."""
    status: LpStatus
    x: Optional[np.ndarray] = None
    z: Optional[float] = None
    y: Optional[np.ndarray] = None
    iterations: int = 0
    basis: Optional[Basis] = None
    ray: Optional[np.ndarray] = None
    infeasible_row: Optional[int] = None
    std_x: Optional[np.ndarray] = None
    std_dual: Optional[np.ndarray] = None
    bound_dual: Optional[np.ndarray] = None

    class Config:
        arbitrary_types_allowed = True

    @property
    def is_optimal(self) -> bool:
        return self.status == LpStatus.OPTIMAL


class DualWitness(BaseModel):
    """Dual certificate on the standard form: A'y - w <= c, w >= 0, b'y - u'w = c'x."""
    y: np.ndarray
    w: np.ndarray
    primal_objective: float
    dual_objective: float
    max_dual_violation: float = Field(ge=0.0)

    class Config:
        arbitrary_types_allowed = True

    @property
    def gap(self) -> float:
        return abs(self.primal_objective - self.dual_objective)
