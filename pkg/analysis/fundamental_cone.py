"""
Fundamental cone K(H), its normalized slice K1(H) and the LP-decoding success predicates
"""

import itertools
import logging
from typing import List, Optional

import numpy as np

from codes.linear_code import LinearCode
from models.errors import SimplexStalledError, TooLargeError
from models.lp_models import LpModel, LpStatus, RowSense
from solvers.simplex import SimplexSolver

logger = logging.getLogger(__name__)


class ConeModel:
    """Cone inequalities x_i <= sum_{N_j \\ {i}} x_i', one per 1-entry of H, plus x >= 0."""

    def __init__(self, code: LinearCode):
        self.code = code
        rows = []
        for support in code.checks:
            for i in support:
                row = np.zeros(code.n)
                row[list(support)] = -1.0
                row[i] = 1.0
                rows.append(row)
        self.A = np.vstack(rows) if rows else np.zeros((0, code.n))

    @property
    def num_inequalities(self) -> int:
        return self.A.shape[0]

    def contains(self, x, tol: float = 1e-9) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(np.all(x >= -tol) and np.all(self.A @ x <= tol))

    def k1_model(self, objective, maximize: bool = False) -> LpModel:
        """LP over K1(H) = K(H) with sum x = 1."""
        n = self.code.n
        A = np.vstack([self.A, np.ones((1, n))])
        b = np.concatenate([np.zeros(self.num_inequalities), [1.0]])
        senses = [RowSense.LE] * self.num_inequalities + [RowSense.EQ]
        return LpModel.build(objective, A, b, senses, lower=np.zeros(n), maximize=maximize)

    def all_rows(self) -> np.ndarray:
        """Every inequality of K1 in the form a x <= 0: cone rows followed by -x_i <= 0."""
        return np.vstack([self.A, -np.eye(self.code.n)])


def in_fundamental_cone(code: LinearCode, x, tol: float = 1e-9) -> bool:
    return ConeModel(code).contains(x, tol)


def decodes_to_zero(code: LinearCode, llr, tol: float = 1e-9, solver: Optional[SimplexSolver] = None) -> bool:
    """True iff no x in K1(H) has lambda'x < 0, i.e. LP decoding returns the zero word."""
    solver = solver or SimplexSolver()
    solution = solver.solve(ConeModel(code).k1_model(np.asarray(llr, dtype=float)))
    if solution.status != LpStatus.OPTIMAL:
        raise SimplexStalledError(f"K1 LP ended {solution.status.value}")
    return solution.z >= -tol


def in_dual_cone(code: LinearCode, llr, solver: Optional[SimplexSolver] = None) -> bool:
    """-lambda in the conic hull of the rows a with a x <= 0 on K(H); feasibility LP in the multipliers."""
    llr = np.asarray(llr, dtype=float)
    rows = ConeModel(code).all_rows()
    count = rows.shape[0]
    model = LpModel.build(np.zeros(count), rows.T, -llr, [RowSense.EQ] * code.n)
    solver = solver or SimplexSolver()
    return solver.solve(model).status == LpStatus.OPTIMAL


def enumerate_cone_vertices(code: LinearCode, max_n: int = 8, tol: float = 1e-9) -> List[np.ndarray]:
    """All vertices of K1(H) by trying every choice of n - 1 active inequalities."""
    n = code.n
    if n > max_n:
        raise TooLargeError(f"vertex enumeration limited to n <= {max_n}, got n={n}")
    cone = ConeModel(code)
    rows = cone.all_rows()
    normal = np.ones(n)
    vertices: List[np.ndarray] = []
    for active in itertools.combinations(range(rows.shape[0]), n - 1):
        system = np.vstack([rows[list(active)], normal])
        if abs(np.linalg.det(system)) < 1e-9:
            continue
        rhs = np.zeros(n)
        rhs[-1] = 1.0
        x = np.linalg.solve(system, rhs)
        if np.all(rows @ x <= tol) and not any(np.allclose(x, v, atol=1e-9) for v in vertices):
            vertices.append(x)
    logger.debug(f"K1 of {code.name}: {len(vertices)} vertices")
    return vertices
