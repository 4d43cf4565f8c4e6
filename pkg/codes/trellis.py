"""
Trellises of terminated convolutional codes and shortest-path ML decoding
"""

import itertools
import logging
from typing import List, NamedTuple, Optional, Sequence, Set, Tuple

import numpy as np

from config.settings import Settings
from models.code_models import Fsm
from models.errors import LengthMismatchError, NotTerminatedError, TooLargeError
from utils.gf2 import BitMatrix, nullspace

logger = logging.getLogger(__name__)


class TrellisEdge(NamedTuple):
    segment: int
    source: int
    target: int
    bit: int
    out: Tuple[int, ...]


class Trellis:
    """Layered DAG of a terminated FSM: layer i holds the states after i input bits.

    Only vertices on some path from state 0 at layer 0 to state 0 at layer k are
    kept, so start-to-end paths and codewords correspond one to one.
    """

    def __init__(self, fsm: Fsm, k: int, edges: List[TrellisEdge], layers: List[Set[int]]):
        self.fsm = fsm
        self.k = k
        self.edges = edges
        self.layers = layers
        self.segment_edges: List[List[int]] = [[] for _ in range(k)]
        for e, edge in enumerate(edges):
            self.segment_edges[edge.segment].append(e)

    @property
    def output_length(self) -> int:
        return self.k * self.fsm.outputs_per_step

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def edge_costs(self, llr) -> np.ndarray:
        """c_e = sum of the LLRs at the positions where the edge outputs a 1."""
        llr = np.asarray(llr, dtype=float).reshape(-1)
        if llr.shape[0] != self.output_length:
            raise LengthMismatchError(f"expected {self.output_length} LLRs, got {llr.shape[0]}")
        o = self.fsm.outputs_per_step
        costs = np.zeros(self.num_edges)
        for e, edge in enumerate(self.edges):
            positions = [edge.segment * o + j for j, bit in enumerate(edge.out) if bit]
            costs[e] = llr[positions].sum() if positions else 0.0
        return costs

    def word_of(self, path: Sequence[int]) -> np.ndarray:
        return np.array([b for e in path for b in self.edges[e].out], dtype=np.uint8)

    def inputs_of(self, path: Sequence[int]) -> np.ndarray:
        return np.array([self.edges[e].bit for e in path], dtype=np.uint8)

    def paths(self) -> List[List[int]]:
        """Every start-to-end path as a list of edge indices (small k only)."""
        partial = [([], 0)]
        for segment in range(self.k):
            grown = []
            for path, state in partial:
                for e in self.segment_edges[segment]:
                    if self.edges[e].source == state:
                        grown.append((path + [e], self.edges[e].target))
            partial = grown
        return [path for path, state in partial if state == 0]


def build_trellis(fsm: Fsm, k: int) -> Trellis:
    """Unfold ``fsm`` over k steps and prune vertices off every 0-to-0 path."""
    if k < 1:
        raise ValueError("k must be at least 1")
    forward = [{0}]
    for _ in range(k):
        forward.append({fsm.step(s, u)[0] for s in forward[-1] for u in (0, 1)})
    backward = [set() for _ in range(k + 1)]
    backward[k] = {0}
    for i in range(k - 1, -1, -1):
        backward[i] = {s for s in range(fsm.num_states) for u in (0, 1) if fsm.step(s, u)[0] in backward[i + 1]}
    layers = [forward[i] & backward[i] for i in range(k + 1)]

    edges = []
    for i in range(k):
        for s in sorted(layers[i]):
            for u in (0, 1):
                t, out = fsm.step(s, u)
                if t in layers[i + 1]:
                    edges.append(TrellisEdge(i, s, t, u, out))
    logger.debug(f"trellis k={k}: {len(edges)} edges, layer sizes {[len(l) for l in layers]}")
    return Trellis(fsm, k, edges, layers)


def run_fsm(fsm: Fsm, u) -> Tuple[np.ndarray, int]:
    """Output bits and final state for input bits u, starting in state 0."""
    state = 0
    out = []
    for bit in np.asarray(u, dtype=np.int64).reshape(-1):
        state, bits = fsm.step(state, int(bit))
        out.extend(bits)
    return np.array(out, dtype=np.uint8), state


def conv_encode(fsm: Fsm, u) -> np.ndarray:
    word, final = run_fsm(fsm, u)
    if final != 0:
        raise NotTerminatedError(f"input ends in state {final}, not 0")
    return word


def shortest_path(trellis: Trellis, costs: np.ndarray) -> Tuple[List[int], float]:
    """Minimum-cost start-to-end path by one forward sweep over the layers."""
    best = {0: (0.0, [])}
    for segment in range(trellis.k):
        nxt = {}
        for e in trellis.segment_edges[segment]:
            edge = trellis.edges[e]
            if edge.source not in best:
                continue
            value = best[edge.source][0] + costs[e]
            if edge.target not in nxt or value < nxt[edge.target][0]:
                nxt[edge.target] = (value, best[edge.source][1] + [e])
        best = nxt
    value, path = best[0]
    return path, float(value)


def shortest_path_decode(trellis: Trellis, llr) -> Tuple[np.ndarray, float]:
    """Exact ML codeword of the convolutional code and its objective lambda'x."""
    costs = trellis.edge_costs(llr)
    path, value = shortest_path(trellis, costs)
    return trellis.word_of(path), value


def termination_map(fsm: Fsm, k: int) -> np.ndarray:
    """memory x k matrix whose column i is the final state (as bits) of the unit input e_i."""
    T = np.zeros((fsm.memory, k), dtype=np.uint8)
    for i in range(k):
        unit = np.zeros(k, dtype=np.uint8)
        unit[i] = 1
        _, final = run_fsm(fsm, unit)
        T[:, i] = [(final >> b) & 1 for b in range(fsm.memory)]
    return T


def admissible_basis(T: np.ndarray) -> np.ndarray:
    """Basis (as rows) of {u : T u = 0} over F2."""
    k = T.shape[1]
    if T.shape[0] == 0 or not T.any():
        return np.eye(k, dtype=np.uint8)
    basis = nullspace(BitMatrix.from_array(T))
    return np.array(basis, dtype=np.uint8) if basis else np.zeros((0, k), dtype=np.uint8)


class ConvolutionalCode:
    """Terminated convolutional code: FSM plus information length k.

    Admissible information words drive the encoder back to state 0; for a
    linear FSM they form the nullspace of the termination map.
    """

    def __init__(self, fsm: Optional[Fsm] = None, k: int = 8, name: Optional[str] = None):
        self.fsm = fsm or Fsm.accumulator()
        self.k = k
        self.name = name or f"conv{k}"
        self.trellis = build_trellis(self.fsm, k)
        self.basis = admissible_basis(termination_map(self.fsm, k))
        self.n = k * self.fsm.outputs_per_step

    @property
    def dimension(self) -> int:
        return self.basis.shape[0]

    @property
    def nominal_rate(self) -> float:
        return 1.0 / self.fsm.outputs_per_step

    @property
    def rate(self) -> float:
        """Realized rate: admissible dimension over block length."""
        return self.dimension / self.n

    def is_admissible(self, u) -> bool:
        return run_fsm(self.fsm, u)[1] == 0

    def encode(self, u) -> np.ndarray:
        return conv_encode(self.fsm, u)

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
        # outputs of the two inputs differ in every state, so x fixes the input
        x = np.asarray(x, dtype=np.uint8).reshape(-1)
        o = self.fsm.outputs_per_step
        if x.shape[0] != self.n:
            return False
        state = 0
        for i in range(self.k):
            block = tuple(int(b) for b in x[i * o:(i + 1) * o])
            for u in (0, 1):
                nxt, out = self.fsm.step(state, u)
                if out == block:
                    state = nxt
                    break
            else:
                return False
        return state == 0
