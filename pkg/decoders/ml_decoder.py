"""
Exact maximum-likelihood decoding and minimum distance via branch-and-bound
"""

import logging
from typing import Dict, Optional, Tuple

import numpy as np

from codes.linear_code import LinearCode
from config.settings import Settings
from decoders.adaptive_decoder import AdaptiveLpDecoder, ExtraRows
from decoders.base_decoder import BaseDecoder
from decoders.branch_and_bound import BranchAndBound, Relaxation
from models.decoder_models import BnbNode, BnbResult, DecodeResult, ForbiddenSetCut, NodeSelection
from models.errors import NoIntegralPointError
from models.lp_models import RowSense

logger = logging.getLogger(__name__)


def brute_force_ml(code: LinearCode, llr) -> Tuple[np.ndarray, float]:
    """Minimum of lambda'x over all 2^k codewords (first minimiser on ties)."""
    llr = np.asarray(llr, dtype=float).reshape(-1)
    words = code.codewords()
    costs = words @ llr
    best = int(np.argmin(costs))
    return words[best].copy(), float(costs[best])


def ip_parity_feasible(code: LinearCode, x) -> bool:
    """True iff H x, computed over the integers, has only even entries (Hx - 2z = 0 solvable)."""
    bits = np.asarray(x, dtype=np.int64).reshape(-1)
    if np.any((bits != 0) & (bits != 1)):
        raise ValueError("x must be binary")
    return not np.any((code.H_array.astype(np.int64) @ bits) % 2)


class MlBnbDecoder(BaseDecoder):
    """ML decoder: branch-and-bound with adaptive LP relaxations at every node."""

    def __init__(self, code: LinearCode, node_selection: NodeSelection = NodeSelection.BEST_FIRST,
                 node_budget: Optional[int] = None, prune: bool = True, rounding_heuristic: bool = False,
                 propagate_bounds: bool = False, settings: Optional[Settings] = None):
        super().__init__(code.n, name=f"ml-bnb[{code.name}]", settings=settings)
        self.code = code
        self.node_selection = node_selection
        self.node_budget = node_budget or self.settings.BNB_NODE_BUDGET
        self.prune = prune
        self.rounding_heuristic = rounding_heuristic
        self.propagate_bounds = propagate_bounds
        self.relaxer = AdaptiveLpDecoder(code, settings=self.settings)

    def search(self, llr: np.ndarray, extra: Optional[ExtraRows] = None) -> BnbResult:
        n = self.code.n
        pool: Dict[tuple, ForbiddenSetCut] = {}
        solved = 0

        def relax(node: BnbNode) -> Relaxation:
            nonlocal solved
            lower, upper = np.zeros(n), np.ones(n)
            upper[list(node.fixed_zero)] = 0.0
            lower[list(node.fixed_one)] = 1.0
            outcome = self.relaxer.cut_loop(llr, lower, upper, pool=pool, extra=extra, warm=solved > 0)
            solved += 1
            return Relaxation(outcome.x, outcome.value, outcome.lp_solves)

        def heuristic(x: np.ndarray) -> Optional[np.ndarray]:
            return np.rint(x).astype(np.uint8)

        engine = BranchAndBound(
            n, relax,
            objective=lambda c: float(llr @ c),
            accept=self.code.is_codeword,
            node_selection=self.node_selection,
            node_budget=self.node_budget,
            prune=self.prune,
            heuristic=heuristic if self.rounding_heuristic else None,
            propagate_bounds=self.propagate_bounds,
            integrality_tol=self.settings.INTEGRALITY_TOL,
            prune_tol=self.settings.BNB_PRUNE_TOL,
        )
        result = engine.run()
        logger.debug(f"{self.name}: {result.nodes_explored} nodes, {len(pool)} pooled cuts")
        return result

    def decode(self, llr) -> DecodeResult:
        llr = self._prepare(llr)
        result = self.search(llr)
        self._record(result.lp_solves, 0)
        x = result.x.astype(float)
        return DecodeResult(x=x, objective=float(llr @ x), integral=True, ml_certificate=True,
                            lp_solves=result.lp_solves, cuts_added=0)


def ml_decode_bnb(code: LinearCode, llr, **kwargs) -> Tuple[np.ndarray, float, int]:
    """(codeword, objective, nodes explored)."""
    decoder = MlBnbDecoder(code, **kwargs)
    result = decoder.search(decoder._prepare(llr))
    return result.x, result.objective, result.nodes_explored


def min_distance_ip(code: LinearCode, **kwargs) -> int:
    """d_min as min sum x_i over nonzero codewords: ML with lambda = 1 and the row sum x >= 1."""
    if code.k == 0:
        raise NoIntegralPointError(f"{code.name} has no nonzero codeword")
    n = code.n
    decoder = MlBnbDecoder(code, **kwargs)
    extra = ExtraRows(A=np.ones((1, n)), b=np.ones(1), senses=[RowSense.GE])
    result = decoder.search(np.ones(n), extra=extra)
    return int(round(result.objective))
