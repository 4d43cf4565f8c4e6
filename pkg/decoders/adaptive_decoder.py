"""
Adaptive LP decoding: start from the unit hypercube and add violated
forbidden-set cuts (optionally redundant-parity-check cuts) until none remain.
"""

import logging
from typing import Dict, NamedTuple, Optional, Sequence

import numpy as np

from codes.linear_code import LinearCode
from config.settings import Settings
from decoders.base_decoder import BaseDecoder, is_integral
from decoders.separation import cut_matrix, rpc_cut_search, separate_row
from models.decoder_models import DecodeResult, ForbiddenSetCut
from models.errors import IterationCapError, SimplexStalledError
from models.lp_models import LpModel, LpStatus, RowSense
from solvers.simplex import SimplexSolver

logger = logging.getLogger(__name__)


class CutLoopOutcome(NamedTuple):
    x: Optional[np.ndarray]
    value: float
    lp_solves: int
    cuts_added: int
    rpc_rounds: int
    model_rows: int

    @property
    def feasible(self) -> bool:
        return self.x is not None


class ExtraRows(NamedTuple):
    """Fixed rows placed ahead of the cut pool (e.g. sum x >= 1)."""
    A: np.ndarray
    b: np.ndarray
    senses: Sequence[RowSense]


class AdaptiveLpDecoder(BaseDecoder):
    """Cutting-plane LP decoder; with ``use_rpc`` it also searches redundant parity checks."""

    def __init__(self, code: LinearCode, use_rpc: bool = False, settings: Optional[Settings] = None,
                 iteration_cap: Optional[int] = None, rpc_max_rounds: Optional[int] = None):
        super().__init__(code.n, name=f"{'alp-rpc' if use_rpc else 'alp'}[{code.name}]", settings=settings)
        self.code = code
        self.use_rpc = use_rpc
        self.integrality_tol = self.settings.INTEGRALITY_TOL
        self.violation_tol = self.settings.CUT_VIOLATION_TOL
        self.iteration_cap = iteration_cap or self.settings.ITERATION_CAP_FACTOR * code.n
        self.rpc_max_rounds = rpc_max_rounds if rpc_max_rounds is not None else self.settings.RPC_MAX_ROUNDS
        self.solver = SimplexSolver(
            feasibility_tol=self.settings.FEASIBILITY_TOL,
            optimality_tol=self.settings.OPTIMALITY_TOL,
            degeneracy_streak=self.settings.DEGENERACY_STREAK,
            max_iterations=self.settings.SIMPLEX_MAX_ITERATIONS,
        )

    def _fractional(self, x: np.ndarray) -> bool:
        return bool(np.any((x > self.integrality_tol) & (x < 1.0 - self.integrality_tol)))

    def _separate(self, x: np.ndarray, pool: Dict[tuple, ForbiddenSetCut]):
        new = []
        for j, support in enumerate(self.code.checks):
            cut = separate_row(support, x, row=j, tol=self.violation_tol)
            if cut is not None and cut.key not in pool:
                new.append(cut)
        return new

    def _model(self, llr, lower, upper, pool, extra: Optional[ExtraRows]) -> LpModel:
        n = self.code.n
        A_cuts, b_cuts = cut_matrix(list(pool.values()), n)
        if extra is not None:
            A = np.vstack([extra.A, A_cuts])
            b = np.concatenate([extra.b, b_cuts])
            senses = list(extra.senses) + [RowSense.LE] * len(pool)
        else:
            A, b, senses = A_cuts, b_cuts, [RowSense.LE] * len(pool)
        return LpModel.build(llr, A, b, senses, lower=lower, upper=upper)

    def cut_loop(self, llr: np.ndarray, lower: Optional[np.ndarray] = None, upper: Optional[np.ndarray] = None,
                 pool: Optional[Dict[tuple, ForbiddenSetCut]] = None, extra: Optional[ExtraRows] = None,
                 warm: bool = False) -> CutLoopOutcome:
        """Solve, separate, add cuts and re-solve until no violated cut remains.

        ``pool`` is shared cut storage (cuts are valid for every codeword, so it may
        be reused across branch-and-bound nodes); it grows in place.
        """
        n = self.code.n
        lower = np.zeros(n) if lower is None else lower
        upper = np.ones(n) if upper is None else upper
        pool = {} if pool is None else pool
        start_size = len(pool)

        model = self._model(llr, lower, upper, pool, extra)
        solution = self.solver.resolve(model) if warm else self.solver.solve(model)
        lp_solves, rpc_rounds = 1, 0
        warned = False
        while True:
            if solution.status == LpStatus.INFEASIBLE:
                return CutLoopOutcome(None, np.inf, lp_solves, len(pool) - start_size, rpc_rounds, model.num_rows)
            if solution.status != LpStatus.OPTIMAL:
                raise SimplexStalledError(f"{self.name}: simplex ended {solution.status.value}")
            x = np.clip(solution.x, 0.0, 1.0)

            new = self._separate(x, pool)
            if not new and self.use_rpc and self._fractional(x) and rpc_rounds < self.rpc_max_rounds:
                new = [c for c in rpc_cut_search(self.code, x, self.integrality_tol, self.violation_tol)
                       if c.key not in pool]
                if new:
                    rpc_rounds += 1
            if not new:
                break
            if lp_solves >= self.iteration_cap:
                raise IterationCapError(f"{self.name}: {lp_solves} LP solves without convergence")

            for cut in new:
                pool[cut.key] = cut
            if len(pool) > n * n and not warned:
                logger.warning(f"{self.name}: adaptive model holds {len(pool)} cuts, above n^2 = {n * n}")
                warned = True
            A_new, b_new = cut_matrix(new, n)
            model = model.with_rows(A_new, b_new, [RowSense.LE] * len(new))
            solution = self.solver.resolve(model)
            lp_solves += 1

        return CutLoopOutcome(x, float(solution.z), lp_solves, len(pool) - start_size, rpc_rounds, model.num_rows)

    def decode(self, llr) -> DecodeResult:
        llr = self._prepare(llr)
        outcome = self.cut_loop(llr)
        x = outcome.x
        integral = is_integral(x, self.integrality_tol)
        if integral and not self.code.is_codeword(np.rint(x)):
            logger.warning(f"{self.name}: integral LP point is not a codeword")
            integral = False
        self._record(outcome.lp_solves, outcome.cuts_added)
        return DecodeResult(
            x=x, objective=float(llr @ x), integral=integral, ml_certificate=integral,
            cuts_added=outcome.cuts_added, lp_solves=outcome.lp_solves,
            rpc_rounds=outcome.rpc_rounds, max_model_rows=outcome.model_rows,
        )


def adaptive_lp_decode(code: LinearCode, llr) -> DecodeResult:
    return AdaptiveLpDecoder(code).decode(llr)


def adaptive_lp_decode_with_rpc(code: LinearCode, llr) -> DecodeResult:
    return AdaptiveLpDecoder(code, use_rpc=True).decode(llr)
