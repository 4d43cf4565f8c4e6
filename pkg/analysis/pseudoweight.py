"""
AWGN pseudoweight, pairwise error probability and minimum-pseudoweight search.

On K1(H) (sum x = 1) the pseudoweight is 1 / ||x||_2^2, so the minimum
pseudoweight is the reciprocal of the maximum squared norm over K1(H).
"""

import logging
import math
from typing import Optional, Tuple

import numpy as np
from scipy.special import erfc

from analysis.fundamental_cone import ConeModel, enumerate_cone_vertices
from channels.random_streams import frame_stream
from codes.linear_code import LinearCode
from config.settings import Settings
from models.errors import SimplexStalledError, ZeroVectorError
from models.lp_models import LpStatus
from solvers.simplex import SimplexSolver

logger = logging.getLogger(__name__)


def pseudoweight(x) -> float:
    """||x||_1^2 / ||x||_2^2 for a nonnegative nonzero vector."""
    x = np.asarray(x, dtype=float).reshape(-1)
    if np.any(x < 0):
        raise ValueError("pseudoweight needs a nonnegative vector")
    squared = float(x @ x)
    if squared == 0.0:
        raise ZeroVectorError("pseudoweight of the zero vector is undefined")
    return float(x.sum()) ** 2 / squared


def q_function(t: float) -> float:
    """Gaussian tail probability Q(t) = P(N(0,1) > t)."""
    return 0.5 * float(erfc(t / math.sqrt(2.0)))


def pairwise_error_probability(x, snr_b: float, rate: float) -> float:
    """Probability that x beats the zero word on the AWGN channel: Q(sqrt(2 r snr_b w_p(x)))."""
    return q_function(math.sqrt(2.0 * rate * snr_b * pseudoweight(x)))


def _improve(cone: ConeModel, solver: SimplexSolver, direction: np.ndarray, max_steps: int) -> np.ndarray:
    """Iterated linearization of max ||x||^2 over K1: move to the vertex maximising 2 x_t' x."""
    solution = solver.solve(cone.k1_model(direction, maximize=True))
    if solution.status != LpStatus.OPTIMAL:
        raise SimplexStalledError(f"K1 LP ended {solution.status.value}")
    x = solution.x
    for _ in range(max_steps):
        solution = solver.solve(cone.k1_model(2.0 * x, maximize=True))
        if solution.status != LpStatus.OPTIMAL:
            logger.warning(f"K1 LP ended {solution.status.value}; keeping the current iterate")
            break
        candidate = solution.x
        if float(candidate @ candidate) <= float(x @ x) + 1e-12:
            break
        x = candidate
    return x


def min_pseudoweight_search(code: LinearCode, restarts: int = 10, seed: int = 0,
                            max_steps: int = 50) -> Tuple[np.ndarray, float]:
    """Heuristic minimum pseudoweight over K1(H) from random starting directions.

    Scaled nonzero codewords are candidates as well when the code is enumerable,
    so the result never exceeds the minimum distance.
    """
    if restarts < 1:
        raise ValueError("restarts must be at least 1")
    cone = ConeModel(code)
    solver = SimplexSolver()
    best: Optional[np.ndarray] = None

    if code.k <= Settings().ENUMERATION_LIMIT:
        for word in code.codewords():
            weight = int(word.sum())
            if weight and (best is None or 1.0 / weight > float(best @ best)):
                best = word / weight

    for restart in range(restarts):
        rng = frame_stream(seed, restart, 0x9E)
        x = _improve(cone, solver, rng.random(code.n), max_steps)
        if best is None or float(x @ x) > float(best @ best) + 1e-12:
            best = x
    w = pseudoweight(best)
    logger.info(f"minimum pseudoweight search on {code.name}: {w:.6g} after {restarts} restarts")
    return best, w


def exhaustive_min_pseudoweight(code: LinearCode, max_n: int = 8) -> Tuple[np.ndarray, float]:
    vertices = enumerate_cone_vertices(code, max_n=max_n)
    best = max(vertices, key=lambda v: float(v @ v))
    return best, pseudoweight(best)
