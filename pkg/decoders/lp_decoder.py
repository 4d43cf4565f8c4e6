"""
LP decoder over the explicitly enumerated fundamental polytope
"""

import logging
from typing import Optional

import numpy as np

from codes.linear_code import LinearCode
from config.settings import Settings
from decoders.base_decoder import BaseDecoder, is_integral
from decoders.separation import cut_matrix, full_polytope_inequalities
from models.decoder_models import DecodeResult
from models.errors import SimplexStalledError
from models.lp_models import LpModel, LpStatus
from solvers.simplex import SimplexSolver

logger = logging.getLogger(__name__)


class LpDecoder(BaseDecoder):
    """min lambda'x over P(H), with every forbidden-set inequality as a row."""

    def __init__(self, code: LinearCode, max_row_weight: Optional[int] = None,
                 integrality_tol: Optional[float] = None, settings: Optional[Settings] = None):
        super().__init__(code.n, name=f"lp[{code.name}]", settings=settings)
        self.code = code
        self.integrality_tol = integrality_tol if integrality_tol is not None else self.settings.INTEGRALITY_TOL
        self.cuts = full_polytope_inequalities(code, max_row_weight or self.settings.MAX_ROW_WEIGHT)
        self.A, self.b = cut_matrix(self.cuts, code.n)
        self.solver = SimplexSolver(
            feasibility_tol=self.settings.FEASIBILITY_TOL,
            optimality_tol=self.settings.OPTIMALITY_TOL,
            degeneracy_streak=self.settings.DEGENERACY_STREAK,
            max_iterations=self.settings.SIMPLEX_MAX_ITERATIONS,
        )
        logger.debug(f"{self.name}: {len(self.cuts)} polytope inequalities")

    def decode(self, llr) -> DecodeResult:
        llr = self._prepare(llr)
        n = self.code.n
        model = LpModel.build(llr, self.A, self.b, lower=np.zeros(n), upper=np.ones(n))
        solution = self.solver.solve(model)
        if solution.status != LpStatus.OPTIMAL:
            # 0 is always feasible and the box keeps the LP bounded
            raise SimplexStalledError(f"{self.name}: simplex ended {solution.status.value}")
        x = np.clip(solution.x, 0.0, 1.0)
        integral = is_integral(x, self.integrality_tol)
        if integral and not self.code.is_codeword(np.rint(x)):
            logger.warning(f"{self.name}: integral LP point is not a codeword")
            integral = False
        self._record(1, 0)
        return DecodeResult(
            x=x, objective=float(llr @ x), integral=integral, ml_certificate=integral,
            cuts_added=0, lp_solves=1, max_model_rows=len(self.cuts),
        )


def lp_decode(code: LinearCode, llr) -> DecodeResult:
    return LpDecoder(code).decode(llr)
