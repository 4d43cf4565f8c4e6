"""
Flow LPs over trellises: single-trellis path LP, coupled turbo LP and turbo ML
"""

import logging
from typing import NamedTuple, Optional, Tuple

import numpy as np

from codes.trellis import ConvolutionalCode, Trellis, shortest_path_decode
from codes.turbo import TurboCode
from config.settings import Settings
from decoders.base_decoder import BaseDecoder, is_integral
from decoders.branch_and_bound import BranchAndBound, Relaxation
from models.decoder_models import BnbNode, DecodeResult, NodeSelection, TurboDecodeResult
from models.errors import SimplexStalledError
from models.lp_models import LpModel, LpStatus, RowSense
from solvers.simplex import SimplexSolver

logger = logging.getLogger(__name__)


def flow_rows(trellis: Trellis, offset: int, width: int) -> Tuple[np.ndarray, np.ndarray]:
    """Flow conservation for one trellis: unit flow leaves the start, in = out at inner vertices.

    Columns ``offset .. offset + num_edges`` of a ``width``-column matrix hold the trellis edges.
    """
    rows, rhs = [], []
    start = np.zeros(width)
    for e in trellis.segment_edges[0]:
        start[offset + e] = 1.0
    rows.append(start)
    rhs.append(1.0)
    for layer in range(1, trellis.k):
        for state in sorted(trellis.layers[layer]):
            row = np.zeros(width)
            for e in trellis.segment_edges[layer - 1]:
                if trellis.edges[e].target == state:
                    row[offset + e] += 1.0
            for e in trellis.segment_edges[layer]:
                if trellis.edges[e].source == state:
                    row[offset + e] -= 1.0
            rows.append(row)
            rhs.append(0.0)
    return np.vstack(rows), np.array(rhs)


def trellis_flow_lp(trellis: Trellis, costs: np.ndarray) -> LpModel:
    """Shortest-path LP over the path polytope: min c'f, flow conservation, 0 <= f <= 1."""
    A, b = flow_rows(trellis, 0, trellis.num_edges)
    m = trellis.num_edges
    return LpModel.build(costs, A, b, [RowSense.EQ] * A.shape[0], lower=np.zeros(m), upper=np.ones(m))


def output_bits(trellis: Trellis, flows: np.ndarray) -> np.ndarray:
    """Code bits implied by edge flows: bit j of segment i is the flow on edges emitting a 1 there."""
    o = trellis.fsm.outputs_per_step
    x = np.zeros(trellis.output_length)
    for e, edge in enumerate(trellis.edges):
        for j, bit in enumerate(edge.out):
            if bit:
                x[edge.segment * o + j] += flows[e]
    return x


def input_bits(trellis: Trellis, flows: np.ndarray) -> np.ndarray:
    u = np.zeros(trellis.k)
    for e, edge in enumerate(trellis.edges):
        if edge.bit:
            u[edge.segment] += flows[e]
    return u


class FlowSolution(NamedTuple):
    flows: np.ndarray
    x: np.ndarray
    objective: float
    integral: bool


def single_trellis_lp_decode(trellis: Trellis, llr, solver: Optional[SimplexSolver] = None) -> FlowSolution:
    """LP form of shortest-path decoding; the path polytope makes the optimum integral."""
    llr = np.asarray(llr, dtype=float)
    solver = solver or SimplexSolver()
    solution = solver.solve(trellis_flow_lp(trellis, trellis.edge_costs(llr)))
    if solution.status != LpStatus.OPTIMAL:
        raise SimplexStalledError(f"trellis LP ended {solution.status.value}")
    flows = np.clip(solution.x, 0.0, 1.0)
    x = output_bits(trellis, flows)
    return FlowSolution(flows, x, float(solution.z), is_integral(flows, Settings().INTEGRALITY_TOL))


class TurboLp:
    """Coupled flow LP of a turbo code.

    Variables are the edge flows of trellis a followed by those of trellis b.
    Systematic bits are charged to trellis-a edges through their input label;
    with ``couple`` the input bits of segment i in trellis a and segment pi(i)
    in trellis b must carry the same flow.
    """

    def __init__(self, tc: TurboCode, couple: bool = True):
        self.tc = tc
        self.couple = couple
        self.ea = tc.trellis_a.num_edges
        self.eb = tc.trellis_b.num_edges
        width = self.ea + self.eb
        A_a, b_a = flow_rows(tc.trellis_a, 0, width)
        A_b, b_b = flow_rows(tc.trellis_b, self.ea, width)
        blocks, rhs = [A_a, A_b], [b_a, b_b]
        if couple:
            agree = np.zeros((tc.k, width))
            for i in range(tc.k):
                for e in tc.trellis_a.segment_edges[i]:
                    if tc.trellis_a.edges[e].bit:
                        agree[i, e] += 1.0
                for e in tc.trellis_b.segment_edges[int(tc.interleaver[i])]:
                    if tc.trellis_b.edges[e].bit:
                        agree[i, self.ea + e] -= 1.0
            blocks.append(agree)
            rhs.append(np.zeros(tc.k))
        self.A = np.vstack(blocks)
        self.b = np.concatenate(rhs)

    @property
    def width(self) -> int:
        return self.ea + self.eb

    def costs(self, llr: np.ndarray) -> np.ndarray:
        tc = self.tc
        p = tc.parity_length
        systematic, parity_a, parity_b = llr[:tc.k], llr[tc.k:tc.k + p], llr[tc.k + p:]
        c_a = tc.trellis_a.edge_costs(parity_a)
        for e, edge in enumerate(tc.trellis_a.edges):
            if edge.bit:
                c_a[e] += systematic[edge.segment]
        c_b = tc.trellis_b.edge_costs(parity_b)
        return np.concatenate([c_a, c_b])

    def model(self, llr: np.ndarray, lower=None, upper=None) -> LpModel:
        lower = np.zeros(self.width) if lower is None else lower
        upper = np.ones(self.width) if upper is None else upper
        return LpModel.build(self.costs(llr), self.A, self.b, [RowSense.EQ] * self.A.shape[0],
                             lower=lower, upper=upper)

    def codeword_of(self, flows: np.ndarray) -> np.ndarray:
        """Code bits implied by the flows: u from trellis a, parities from both trellises."""
        tc = self.tc
        f_a, f_b = flows[:self.ea], flows[self.ea:]
        return np.concatenate([input_bits(tc.trellis_a, f_a), output_bits(tc.trellis_a, f_a),
                               output_bits(tc.trellis_b, f_b)])

    def feasible(self, flows: np.ndarray, tol: float = 1e-7) -> bool:
        return bool(np.all(np.abs(self.A @ flows - self.b) <= tol))


def turbo_lp_decode(tc: TurboCode, llr, couple: bool = True,
                    solver: Optional[SimplexSolver] = None) -> TurboDecodeResult:
    llr = np.asarray(llr, dtype=float).reshape(-1)
    lp = TurboLp(tc, couple=couple)
    solver = solver or SimplexSolver()
    solution = solver.solve(lp.model(llr))
    if solution.status != LpStatus.OPTIMAL:
        raise SimplexStalledError(f"turbo LP ended {solution.status.value}")
    flows = np.clip(solution.x, 0.0, 1.0)
    x = lp.codeword_of(flows)
    integral = is_integral(flows, Settings().INTEGRALITY_TOL)
    if integral and couple and not tc.is_codeword(np.rint(x).astype(np.uint8)):
        logger.warning("integral turbo LP flows do not form a turbo codeword")
        integral = False
    return TurboDecodeResult(
        flows_a=flows[:lp.ea], flows_b=flows[lp.ea:], x=x, objective=float(solution.z),
        integral=integral, ml_certificate=integral and couple, lp_solves=1,
    )


def brute_force_turbo_ml(tc: TurboCode, llr) -> Tuple[np.ndarray, float]:
    llr = np.asarray(llr, dtype=float).reshape(-1)
    words = tc.codewords()
    costs = words @ llr
    best = int(np.argmin(costs))
    return words[best].copy(), float(costs[best])


def turbo_ml_decode_bnb(tc: TurboCode, llr, node_selection: NodeSelection = NodeSelection.BEST_FIRST,
                        node_budget: Optional[int] = None) -> Tuple[np.ndarray, float, int]:
    """Exact turbo ML: branch-and-bound on edge flows of the coupled LP."""
    llr = np.asarray(llr, dtype=float).reshape(-1)
    lp = TurboLp(tc)
    solver = SimplexSolver()
    costs = lp.costs(llr)

    def relax(node: BnbNode) -> Relaxation:
        lower, upper = np.zeros(lp.width), np.ones(lp.width)
        upper[list(node.fixed_zero)] = 0.0
        lower[list(node.fixed_one)] = 1.0
        solution = solver.solve(lp.model(llr, lower, upper))
        if solution.status == LpStatus.INFEASIBLE:
            return Relaxation(None, np.inf)
        if solution.status != LpStatus.OPTIMAL:
            raise SimplexStalledError(f"turbo node LP ended {solution.status.value}")
        return Relaxation(np.clip(solution.x, 0.0, 1.0), float(solution.z))

    def accept(flows: np.ndarray) -> bool:
        return lp.feasible(flows) and tc.is_codeword(np.rint(lp.codeword_of(flows)).astype(np.uint8))

    engine = BranchAndBound(lp.width, relax, objective=lambda f: float(costs @ f), accept=accept,
                            node_selection=node_selection, node_budget=node_budget)
    result = engine.run()
    word = np.rint(lp.codeword_of(result.x.astype(float))).astype(np.uint8)
    return word, float(llr @ word), result.nodes_explored


class ConvSpDecoder(BaseDecoder):
    """Shortest-path (Viterbi-style) ML decoder of a terminated convolutional code."""

    def __init__(self, code: ConvolutionalCode, settings: Optional[Settings] = None):
        super().__init__(code.n, name=f"conv-sp[{code.name}]", settings=settings)
        self.code = code

    def decode(self, llr) -> DecodeResult:
        llr = self._prepare(llr)
        word, value = shortest_path_decode(self.code.trellis, llr)
        self._record(0, 0)
        return DecodeResult(x=word.astype(float), objective=value, integral=True, ml_certificate=True)


class TurboLpDecoder(BaseDecoder):
    def __init__(self, code: TurboCode, couple: bool = True, settings: Optional[Settings] = None):
        super().__init__(code.n, name=f"turbo-lp[{code.name}]", settings=settings)
        self.code = code
        self.couple = couple
        self.solver = SimplexSolver(
            feasibility_tol=self.settings.FEASIBILITY_TOL,
            optimality_tol=self.settings.OPTIMALITY_TOL,
            degeneracy_streak=self.settings.DEGENERACY_STREAK,
            max_iterations=self.settings.SIMPLEX_MAX_ITERATIONS,
        )

    def decode(self, llr) -> DecodeResult:
        llr = self._prepare(llr)
        result = turbo_lp_decode(self.code, llr, couple=self.couple, solver=self.solver)
        self._record(1, 0)
        return DecodeResult(x=np.clip(result.x, 0.0, 1.0), objective=float(llr @ result.x),
                            integral=result.integral, ml_certificate=result.ml_certificate, lp_solves=1)
