"""
Finite graph covers of a code's factor graph and their scaled pseudocodewords
"""

import logging
from fractions import Fraction
from typing import List, Sequence

import numpy as np

from codes.linear_code import LinearCode
from models.code_models import GraphCover
from models.errors import NotCoverCodewordError, PermutationMismatchError
from utils.gf2 import BitMatrix

logger = logging.getLogger(__name__)


def _validate(code: LinearCode, M: int, perms: Sequence[Sequence[int]]) -> List[List[int]]:
    if M < 1:
        raise PermutationMismatchError(f"cover degree must be at least 1, got {M}")
    graph = code.factor_graph()
    if len(perms) != graph.num_edges:
        raise PermutationMismatchError(f"expected {graph.num_edges} permutations, got {len(perms)}")
    checked = []
    for e, perm in enumerate(perms):
        perm = [int(v) for v in perm]
        if sorted(perm) != list(range(M)):
            raise PermutationMismatchError(f"permutation {e} is not a permutation of range({M})")
        checked.append(perm)
    return checked


def cover_matrix(code: LinearCode, M: int, perms: Sequence[Sequence[int]]) -> np.ndarray:
    """(M*m) x (M*n) parity-check matrix of the cover; copy k of node v has index v*M + k."""
    perms = _validate(code, M, perms)
    graph = code.factor_graph()
    H = np.zeros((M * code.m, M * code.n), dtype=np.uint8)
    for (j, i), perm in zip(graph.edges, perms):
        for k in range(M):
            H[j * M + k, i * M + perm[k]] = 1
    return H


def build_cover(code: LinearCode, M: int, perms: Sequence[Sequence[int]]) -> LinearCode:
    """Code of the M-cover defined by one permutation per factor-graph edge."""
    H = cover_matrix(code, M, perms)
    cover = LinearCode(BitMatrix.from_array(H), name=f"{code.name}-cover{M}")
    logger.debug(f"built {M}-cover of {code.name}: n={cover.n}, k={cover.k}")
    return cover


def random_cover(code: LinearCode, M: int, rng: np.random.Generator) -> GraphCover:
    graph = code.factor_graph()
    perms = [list(int(v) for v in rng.permutation(M)) for _ in range(graph.num_edges)]
    return GraphCover(base=graph, degree=M, permutations=perms)


def scaled_pseudocodeword(cover_word, M: int, cover_code: LinearCode) -> List[Fraction]:
    """Average the M copies of every variable node: x_i = (1/M) sum_k x_i^(k)."""
    word = np.asarray(cover_word, dtype=np.int64).reshape(-1)
    if M < 1 or word.shape[0] % M != 0:
        raise NotCoverCodewordError(f"length {word.shape[0]} is not a multiple of M={M}")
    if np.any((word != 0) & (word != 1)):
        raise NotCoverCodewordError("cover word must be binary")
    if cover_code.n != word.shape[0] or not cover_code.is_codeword(word):
        raise NotCoverCodewordError("vector is not a codeword of the cover code")
    counts = word.reshape(-1, M).sum(axis=1)
    return [Fraction(int(c), M) for c in counts]
