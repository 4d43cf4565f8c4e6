"""
Parallel concatenated (turbo) codes built from one component FSM
"""

import itertools
from typing import List, Optional, Sequence

import numpy as np

from codes.trellis import admissible_basis, build_trellis, conv_encode, run_fsm, termination_map
from config.settings import Settings
from models.code_models import Fsm
from models.errors import LengthMismatchError, TooLargeError


class TurboCode:
    """Codeword (u, C_a(u), C_b(u_b)) with u_b[pi(i)] = u_i.

    Both component encodings must terminate; the admissible inputs are the
    common nullspace of both termination maps.
    """

    def __init__(self, fsm: Optional[Fsm] = None, k: int = 8, interleaver: Optional[Sequence[int]] = None,
                 name: Optional[str] = None):
        self.fsm = fsm or Fsm.accumulator()
        self.k = k
        perm = list(range(k)) if interleaver is None else [int(v) for v in interleaver]
        if sorted(perm) != list(range(k)):
            raise ValueError("interleaver must be a permutation of range(k)")
        self.interleaver = np.array(perm, dtype=np.int64)
        self.name = name or f"turbo{k}"
        self.trellis_a = build_trellis(self.fsm, k)
        self.trellis_b = build_trellis(self.fsm, k)

        T = termination_map(self.fsm, k)
        # column i of the second block is the effect of u_i entering trellis b at segment pi(i)
        stacked = np.vstack([T, self._interleaved_map(T)]) if T.size else T
        self.basis = admissible_basis(stacked)
        self.parity_length = k * self.fsm.outputs_per_step
        self.n = k + 2 * self.parity_length

    def _interleaved_map(self, T: np.ndarray) -> np.ndarray:
        mapped = np.zeros_like(T)
        for i in range(self.k):
            mapped[:, i] = T[:, self.interleaver[i]]
        return mapped

    @classmethod
    def random(cls, fsm: Optional[Fsm], k: int, rng: np.random.Generator, **kwargs) -> "TurboCode":
        return cls(fsm, k, interleaver=rng.permutation(k), **kwargs)

    def interleave(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=np.uint8).reshape(-1)
        if u.shape[0] != self.k:
            raise LengthMismatchError(f"expected {self.k} information bits, got {u.shape[0]}")
        u_b = np.zeros(self.k, dtype=np.uint8)
        u_b[self.interleaver] = u
        return u_b

    @property
    def dimension(self) -> int:
        return self.basis.shape[0]

    @property
    def nominal_rate(self) -> float:
        return 1.0 / (1 + 2 * self.fsm.outputs_per_step)

    @property
    def rate(self) -> float:
        return self.dimension / self.n

    def realized_rate(self) -> float:
        return self.rate

    def is_admissible(self, u) -> bool:
        return run_fsm(self.fsm, u)[1] == 0 and run_fsm(self.fsm, self.interleave(u))[1] == 0

    def encode(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=np.uint8).reshape(-1)
        u_b = self.interleave(u)
        return np.concatenate([u, conv_encode(self.fsm, u), conv_encode(self.fsm, u_b)]).astype(np.uint8)

    def sample_input(self, rng: np.random.Generator) -> np.ndarray:
        if self.dimension == 0:
            return np.zeros(self.k, dtype=np.uint8)
        coeffs = rng.integers(0, 2, size=self.dimension)
        return (coeffs @ self.basis.astype(np.int64) % 2).astype(np.uint8)

    def sample_codeword(self, rng: np.random.Generator) -> np.ndarray:
        return self.encode(self.sample_input(rng))

    def admissible_inputs(self) -> List[np.ndarray]:
        if self.k > Settings().ENUMERATION_LIMIT:
            raise TooLargeError(f"k={self.k} exceeds the enumeration limit")
        words = (np.array(u, dtype=np.uint8) for u in itertools.product((0, 1), repeat=self.k))
        return [u for u in words if self.is_admissible(u)]

    def codewords(self) -> np.ndarray:
        return np.array([self.encode(u) for u in self.admissible_inputs()], dtype=np.uint8)

    def is_codeword(self, x) -> bool:
        x = np.asarray(x, dtype=np.uint8).reshape(-1)
        if x.shape[0] != self.n:
            return False
        u = x[:self.k]
        return self.is_admissible(u) and np.array_equal(self.encode(u), x)


def turbo_encode(tc: TurboCode, u) -> np.ndarray:
    return tc.encode(u)
