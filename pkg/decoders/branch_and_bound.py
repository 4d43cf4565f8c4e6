"""
LP-based branch-and-bound over binary variables.

The engine is problem agnostic: the caller supplies the relaxation of a node
(variables fixed to 0 / 1 through bounds) and an acceptance test for integral
points. Code ML decoding branches on code bits, turbo ML decoding on trellis
edge flows.
"""

import heapq
import itertools
import logging
from typing import Callable, Dict, List, NamedTuple, Optional

import numpy as np

from config.settings import Settings
from models.decoder_models import BnbNode, BnbResult, NodeSelection
from models.errors import NoIntegralPointError, NodeBudgetExceededError

logger = logging.getLogger(__name__)


class Relaxation(NamedTuple):
    """LP optimum of a node; ``x`` is None when the node is infeasible."""
    x: Optional[np.ndarray]
    bound: float
    lp_solves: int = 1


def most_fractional(x: np.ndarray, tol: float, candidates: Optional[np.ndarray] = None) -> Optional[int]:
    """Index with x_i closest to 1/2 among fractional entries (lowest index on ties)."""
    fractional = (x > tol) & (x < 1.0 - tol)
    if candidates is not None:
        fractional &= candidates
    indices = np.flatnonzero(fractional)
    if indices.size == 0:
        return None
    return int(indices[np.argmin(np.abs(x[indices] - 0.5))])


class BranchAndBound:
    """Best-first (default) or depth-first search over 0/1 fixings."""

    def __init__(self, num_vars: int, relax: Callable[[BnbNode], Relaxation],
                 objective: Callable[[np.ndarray], float], accept: Callable[[np.ndarray], bool],
                 node_selection: NodeSelection = NodeSelection.BEST_FIRST,
                 node_budget: Optional[int] = None, prune: bool = True,
                 heuristic: Optional[Callable[[np.ndarray], Optional[np.ndarray]]] = None,
                 propagate_bounds: bool = False, branch_mask: Optional[np.ndarray] = None,
                 integrality_tol: Optional[float] = None, prune_tol: Optional[float] = None):
        settings = Settings()
        self.num_vars = num_vars
        self.relax = relax
        self.objective = objective
        self.accept = accept
        self.node_selection = node_selection
        self.node_budget = node_budget or settings.BNB_NODE_BUDGET
        self.prune = prune
        self.heuristic = heuristic
        self.propagate_bounds = propagate_bounds
        self.branch_mask = branch_mask
        self.integrality_tol = integrality_tol if integrality_tol is not None else settings.INTEGRALITY_TOL
        self.prune_tol = prune_tol if prune_tol is not None else settings.BNB_PRUNE_TOL

        self._counter = itertools.count()
        self._bounds: Dict[int, float] = {}
        self._parent: Dict[int, int] = {}
        self._children: Dict[int, List[int]] = {}

    def _key(self, node: BnbNode, ticket: int):
        if self.node_selection == NodeSelection.DEPTH_FIRST:
            return (-node.depth, -ticket)
        return (node.bound, ticket)

    def _propagate(self, node_id: int) -> None:
        """Raise ancestors' bounds to the minimum over their children."""
        while node_id in self._parent:
            parent = self._parent[node_id]
            children = self._children.get(parent, [])
            if len(children) < 2:
                return
            tightened = min(self._bounds[c] for c in children)
            if tightened <= self._bounds[parent] + self.prune_tol:
                return
            logger.debug(f"bound of node {parent} raised {self._bounds[parent]:.6g} -> {tightened:.6g}")
            self._bounds[parent] = tightened
            node_id = parent

    def run(self) -> BnbResult:
        incumbent_x, incumbent = None, np.inf
        history = []
        lp_solves = 0
        nodes = 0
        heap = []

        def evaluate(node: BnbNode, node_id: int):
            nonlocal nodes, lp_solves
            nodes += 1
            if nodes > self.node_budget:
                raise NodeBudgetExceededError(f"branch-and-bound exceeded {self.node_budget} nodes")
            relaxation = self.relax(node)
            lp_solves += relaxation.lp_solves
            node.bound = relaxation.bound if relaxation.x is not None else np.inf
            self._bounds[node_id] = node.bound
            return relaxation.x

        root = BnbNode()
        root_id = next(self._counter)
        x = evaluate(root, root_id)
        if x is not None:
            heapq.heappush(heap, (self._key(root, root_id), root_id, root, x))

        while heap:
            _, node_id, node, x = heapq.heappop(heap)
            if self.prune and node.bound >= incumbent - self.prune_tol:
                continue

            if self.heuristic is not None:
                guess = self.heuristic(x)
                if guess is not None and self.accept(guess):
                    value = self.objective(guess)
                    if value < incumbent - self.prune_tol:
                        incumbent_x, incumbent = guess, value
                        logger.debug(f"heuristic incumbent {value:.6g} at depth {node.depth}")

            branch = most_fractional(x, self.integrality_tol, self.branch_mask)
            if branch is None:
                candidate = np.rint(x).astype(np.uint8)
                if not self.accept(candidate):
                    logger.warning(f"integral relaxation at depth {node.depth} rejected by acceptance test")
                    continue
                value = self.objective(candidate)
                if value < incumbent - self.prune_tol or incumbent_x is None:
                    incumbent_x, incumbent = candidate, value
                    logger.debug(f"new incumbent {value:.6g} at depth {node.depth} after {nodes} nodes")
                self._bounds[node_id] = value
                if self.propagate_bounds:
                    self._propagate(node_id)
                continue

            for fixed in (0, 1):
                child = node.child(branch, fixed)
                child_id = next(self._counter)
                self._parent[child_id] = node_id
                self._children.setdefault(node_id, []).append(child_id)
                child_x = evaluate(child, child_id)
                history.append((child.bound, node.bound))
                if child_x is None:
                    continue
                if self.prune and child.bound >= incumbent - self.prune_tol:
                    continue
                heapq.heappush(heap, (self._key(child, child_id), child_id, child, child_x))
            if self.propagate_bounds:
                self._propagate(self._children[node_id][-1])

        if incumbent_x is None:
            raise NoIntegralPointError("branch-and-bound found no feasible integral point")
        lower = self._bounds[root_id] if self.propagate_bounds else incumbent
        logger.info(f"branch-and-bound: optimum {incumbent:.6g}, {nodes} nodes, {lp_solves} LP solves")
        return BnbResult(x=incumbent_x, objective=float(incumbent), nodes_explored=nodes,
                         lower_bound=float(min(lower, incumbent)), lp_solves=lp_solves, bound_history=history)
