"""
Dense bounded-variable simplex solver.

Every model is first brought into the equality form

    min c'x  s.t.  A x = b,  0 <= x <= u

(slacks for inequality rows, shifted / negated / split variables, redundant
equality rows removed), and the primal or dual simplex runs on that form.
Nonbasic variables sit at their lower or upper bound, so box constraints never
become explicit rows. The basis matrix is re-solved from scratch in every
iteration; pricing is Dantzig's rule, switching to Bland's smallest-index rule
after a streak of degenerate pivots.
"""

import logging
from typing import Dict, List, Optional, Tuple

import numpy as np
import scipy.linalg

from config.settings import Settings
from models.errors import DualInfeasibleStartError, InfeasibleStartError, NotOptimalError
from models.lp_models import Basis, DualWitness, LpModel, LpSolution, LpStatus, RowSense

logger = logging.getLogger(__name__)

PIVOT_TOL = 1e-10
RANK_TOL = 1e-10


class StandardForm:
    """Equality form of an LpModel together with the map back to its variables."""

    def __init__(self, model: LpModel):
        self.source = model
        self.sign = -1.0 if model.maximize else 1.0
        self.n_orig = model.num_vars
        self.infeasible = False
        self._build(model)

    def _build(self, model: LpModel) -> None:
        n = self.n_orig
        c = self.sign * model.c.astype(float)
        A = model.A.astype(float)
        b = model.b.astype(float).copy()
        offset = 0.0

        self.kinds: List[Tuple[str, float]] = []
        columns, costs, uppers = [], [], []
        negative_parts = []
        for j in range(n):
            lo, hi = float(model.lower[j]), float(model.upper[j])
            if lo > hi + 1e-12:
                self.infeasible = True
            if np.isfinite(lo):
                self.kinds.append(("shift", lo))
                columns.append(A[:, j])
                costs.append(c[j])
                uppers.append(max(hi - lo, 0.0) if np.isfinite(hi) else np.inf)
                b -= A[:, j] * lo
                offset += c[j] * lo
            elif np.isfinite(hi):
                self.kinds.append(("negate", hi))
                columns.append(-A[:, j])
                costs.append(-c[j])
                uppers.append(np.inf)
                b -= A[:, j] * hi
                offset += c[j] * hi
            else:
                self.kinds.append(("split", 0.0))
                columns.append(A[:, j])
                costs.append(c[j])
                uppers.append(np.inf)
                negative_parts.append(j)

        self.negative_col: Dict[int, int] = {}
        for j in negative_parts:
            self.negative_col[j] = len(columns)
            columns.append(-A[:, j])
            costs.append(-c[j])
            uppers.append(np.inf)
        self.n_struct = len(columns)

        m_all = model.num_rows
        structural = np.column_stack(columns) if columns else np.zeros((m_all, 0))
        structural = structural.reshape(m_all, self.n_struct)

        kept = self._independent_rows(structural, b, model.senses)
        self.kept_rows = kept

        slack_rows = [r for r in kept if model.senses[r] != RowSense.EQ]
        m = len(kept)
        N = self.n_struct + len(slack_rows)
        A_std = np.zeros((m, N))
        A_std[:, :self.n_struct] = structural[kept]
        self.slack_col = np.full(m, -1, dtype=int)
        position = {r: i for i, r in enumerate(kept)}
        for t, r in enumerate(slack_rows):
            col = self.n_struct + t
            A_std[position[r], col] = 1.0 if model.senses[r] == RowSense.LE else -1.0
            self.slack_col[position[r]] = col

        b_std = b[kept]
        self.row_flip = np.where(b_std < 0, -1.0, 1.0)
        A_std *= self.row_flip[:, None]
        b_std = b_std * self.row_flip

        self.A = A_std
        self.b = b_std
        self.c = np.concatenate([np.asarray(costs, dtype=float), np.zeros(len(slack_rows))])
        self.upper = np.concatenate([np.asarray(uppers, dtype=float), np.full(len(slack_rows), np.inf)])
        self.offset = offset

    def _independent_rows(self, structural: np.ndarray, b: np.ndarray, senses) -> List[int]:
        """Drop linearly dependent equality rows; flag the model infeasible if they are inconsistent."""
        eq_rows = [r for r, s in enumerate(senses) if s == RowSense.EQ]
        if not eq_rows:
            return list(range(len(senses)))
        M = structural[eq_rows]
        if M.shape[1] == 0:
            independent, dropped = [], list(eq_rows)
        else:
            _, R, P = scipy.linalg.qr(M.T, mode="economic", pivoting=True)
            diag = np.abs(np.diag(R))
            scale = diag[0] if diag.size else 0.0
            r = int(np.sum(diag > RANK_TOL * max(1.0, scale)))
            independent = sorted(eq_rows[i] for i in P[:r])
            dropped = [eq_rows[i] for i in P[r:]]
        if dropped:
            if independent:
                x0 = np.linalg.lstsq(structural[independent], b[independent], rcond=None)[0]
            else:
                x0 = np.zeros(structural.shape[1])
            residual = structural[dropped] @ x0 - b[dropped]
            if np.any(np.abs(residual) > 1e-7 * (1.0 + np.abs(b[dropped]))):
                self.infeasible = True
            logger.debug(f"standardize dropped {len(dropped)} dependent equality rows")
        dropped_set = set(dropped)
        return [r for r in range(len(senses)) if r not in dropped_set]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.A.shape

    @property
    def layout(self) -> tuple:
        return (self.n_orig, tuple(kind for kind, _ in self.kinds), self.n_struct)

    def as_model(self) -> LpModel:
        """The equality-form model itself (objective sign already folded in)."""
        m = self.A.shape[0]
        return LpModel.build(self.c, self.A, self.b, [RowSense.EQ] * m,
                             lower=np.zeros(self.A.shape[1]), upper=self.upper)

    def recover(self, xs: np.ndarray) -> np.ndarray:
        x = np.zeros(self.n_orig)
        for j, (kind, value) in enumerate(self.kinds):
            if kind == "shift":
                x[j] = value + xs[j]
            elif kind == "negate":
                x[j] = value - xs[j]
            else:
                x[j] = xs[j] - xs[self.negative_col[j]]
        return x

    def recover_direction(self, ds: np.ndarray) -> np.ndarray:
        d = np.zeros(self.n_orig)
        for j, (kind, _) in enumerate(self.kinds):
            if kind == "shift":
                d[j] = ds[j]
            elif kind == "negate":
                d[j] = -ds[j]
            else:
                d[j] = ds[j] - ds[self.negative_col[j]]
        return d

    def objective(self, xs: np.ndarray) -> float:
        return float(self.sign * (self.c @ xs[:self.c.shape[0]] + self.offset))

    def row_duals(self, y_std: np.ndarray) -> np.ndarray:
        y = np.zeros(self.source.num_rows)
        for i, r in enumerate(self.kept_rows):
            y[r] = self.sign * self.row_flip[i] * y_std[i]
        return y


def standardize(model: LpModel) -> StandardForm:
    """Equality form of ``model`` with the mapping back to the original variables."""
    return StandardForm(model)


def dual_witness(model: LpModel, solution: LpSolution) -> DualWitness:
    """Duality certificate for an optimal solution, checked on the standard form."""
    if solution.status != LpStatus.OPTIMAL:
        raise NotOptimalError(f"solution status is {solution.status.value}")
    form = standardize(model)
    y = solution.std_dual
    w = solution.bound_dual
    if y.shape[0] == 0:
        reduced = -form.c - w
    else:
        reduced = form.A.T @ y - w - form.c
    violation = float(max(0.0, reduced.max())) if reduced.size else 0.0
    violation = max(violation, float(max(0.0, -w.min())) if w.size else 0.0)
    finite = np.isfinite(form.upper)
    dual_value = float(form.b @ y - form.upper[finite] @ w[finite] + form.offset)
    primal_value = float(form.c @ solution.std_x + form.offset)
    return DualWitness(y=y, w=w, primal_objective=primal_value,
                       dual_objective=dual_value, max_dual_violation=violation)


class SimplexSolver:
    """Stateful simplex solver; remembers its last optimal basis for warm starts."""

    def __init__(self, feasibility_tol: Optional[float] = None, optimality_tol: Optional[float] = None,
                 degeneracy_streak: Optional[int] = None, max_iterations: Optional[int] = None):
        settings = Settings()
        self.feasibility_tol = feasibility_tol if feasibility_tol is not None else settings.FEASIBILITY_TOL
        self.optimality_tol = optimality_tol if optimality_tol is not None else settings.OPTIMALITY_TOL
        self.degeneracy_streak = degeneracy_streak if degeneracy_streak is not None else settings.DEGENERACY_STREAK
        self.max_iterations = max_iterations if max_iterations is not None else settings.SIMPLEX_MAX_ITERATIONS
        self._last_form: Optional[StandardForm] = None
        self._last_basis: Optional[Basis] = None
        self.total_pivots = 0

    # ------------------------------------------------------------------
    # linear algebra helpers
    # ------------------------------------------------------------------

    @staticmethod
    def _solve(matrix: np.ndarray, rhs: np.ndarray) -> np.ndarray:
        if matrix.shape[0] == 0:
            return np.zeros(0)
        return np.linalg.solve(matrix, rhs)

    def _values(self, A, b, u, basic, at_upper) -> np.ndarray:
        x = np.zeros(A.shape[1])
        resting = at_upper.copy()
        resting[basic] = False
        x[resting] = u[resting]
        x[basic] = self._solve(A[:, basic], b - A @ x)
        return x

    def _reduced_costs(self, A, c, basic) -> Tuple[np.ndarray, np.ndarray]:
        y = self._solve(A[:, basic].T, c[basic])
        d = c - A.T @ y if y.size else c.copy()
        d[basic] = 0.0
        return y, d

    def _primal_feasible(self, x, u, basic) -> bool:
        x_B = x[basic]
        return bool(np.all(x_B >= -self.feasibility_tol) and np.all(x_B <= u[basic] + self.feasibility_tol))

    def _dual_feasible(self, d, u, basic, at_upper) -> bool:
        movable = np.ones(d.shape[0], dtype=bool)
        movable[basic] = False
        movable &= u > self.feasibility_tol
        bad = movable & ((~at_upper & (d < -self.optimality_tol)) | (at_upper & (d > self.optimality_tol)))
        return not bad.any()

    # ------------------------------------------------------------------
    # iteration loops
    # ------------------------------------------------------------------

    def _primal_loop(self, A, b, c, u, basic, at_upper):
        m, N = A.shape
        iterations = 0
        streak = 0
        while True:
            x = self._values(A, b, u, basic, at_upper)
            y, d = self._reduced_costs(A, c, basic)
            movable = np.ones(N, dtype=bool)
            movable[basic] = False
            movable &= u > self.feasibility_tol
            increase = movable & ~at_upper & (d < -self.optimality_tol)
            decrease = movable & at_upper & (d > self.optimality_tol)
            eligible = np.flatnonzero(increase | decrease)
            if eligible.size == 0:
                return LpStatus.OPTIMAL, x, y, iterations, None
            if iterations >= self.max_iterations:
                return LpStatus.STALLED, x, y, iterations, None

            bland = streak >= self.degeneracy_streak
            if bland:
                q = int(eligible[0])
            else:
                q = int(eligible[np.argmax(np.abs(d[eligible]))])
            sigma = 1.0 if increase[q] else -1.0
            alpha = self._solve(A[:, basic], A[:, q])
            rate = -sigma * alpha

            t_row, leave, leave_to_upper = np.inf, -1, False
            for i in range(m):
                if rate[i] < -PIVOT_TOL:
                    limit, hits_upper = max(x[basic[i]], 0.0) / -rate[i], False
                elif rate[i] > PIVOT_TOL and np.isfinite(u[basic[i]]):
                    limit, hits_upper = max(u[basic[i]] - x[basic[i]], 0.0) / rate[i], True
                else:
                    continue
                if limit < t_row - 1e-12 or (bland and abs(limit - t_row) <= 1e-12 and basic[i] < basic[leave]):
                    t_row, leave, leave_to_upper = limit, i, hits_upper

            t_flip = u[q]
            if not np.isfinite(t_row) and not np.isfinite(t_flip):
                ray = np.zeros(N)
                ray[q] = sigma
                ray[basic] = rate
                return LpStatus.UNBOUNDED, x, y, iterations, ray

            if t_flip <= t_row:
                at_upper[q] = sigma > 0
                step = t_flip
            else:
                leaving = basic[leave]
                at_upper[leaving] = leave_to_upper
                basic[leave] = q
                at_upper[q] = False
                step = t_row
            streak = streak + 1 if step <= self.feasibility_tol else 0
            iterations += 1

    def _dual_loop(self, A, b, c, u, basic, at_upper):
        m, N = A.shape
        iterations = 0
        streak = 0
        while True:
            x = self._values(A, b, u, basic, at_upper)
            y, d = self._reduced_costs(A, c, basic)
            x_B = x[basic]
            below = -x_B
            above = x_B - u[basic]
            violation = np.maximum(below, above)
            rows = np.flatnonzero(violation > self.feasibility_tol)
            if rows.size == 0:
                return LpStatus.OPTIMAL, x, y, iterations, None
            if iterations >= self.max_iterations:
                return LpStatus.STALLED, x, y, iterations, None

            if streak >= self.degeneracy_streak:
                r = int(min(rows, key=lambda i: basic[i]))
            else:
                r = int(rows[np.argmax(violation[rows])])
            unit = np.zeros(m)
            unit[r] = 1.0
            rho = self._solve(A[:, basic].T, unit)
            alpha_r = A.T @ rho

            movable = np.ones(N, dtype=bool)
            movable[basic] = False
            movable &= u > self.feasibility_tol
            if below[r] >= above[r]:
                candidates = movable & ((~at_upper & (alpha_r < -PIVOT_TOL)) | (at_upper & (alpha_r > PIVOT_TOL)))
                leave_to_upper = False
            else:
                candidates = movable & ((~at_upper & (alpha_r > PIVOT_TOL)) | (at_upper & (alpha_r < -PIVOT_TOL)))
                leave_to_upper = True
            idx = np.flatnonzero(candidates)
            if idx.size == 0:
                return LpStatus.INFEASIBLE, x, y, iterations, r

            ratios = np.abs(d[idx]) / np.abs(alpha_r[idx])
            q = int(idx[np.argmin(ratios)])
            step = float(ratios.min())
            leaving = basic[r]
            basic[r] = q
            at_upper[q] = False
            at_upper[leaving] = leave_to_upper
            streak = streak + 1 if step <= self.optimality_tol else 0
            iterations += 1

    def _drive_out_artificials(self, A1, n_real, basic, at_upper) -> None:
        for r, j in enumerate(list(basic)):
            if j < n_real:
                continue
            unit = np.zeros(A1.shape[0])
            unit[r] = 1.0
            rho = self._solve(A1[:, basic].T, unit)
            alpha = A1[:, :n_real].T @ rho
            alpha[[k for k in basic if k < n_real]] = 0.0
            best = int(np.argmax(np.abs(alpha))) if alpha.size else -1
            if best >= 0 and abs(alpha[best]) > 1e-7:
                basic[r] = best
                at_upper[j] = False

    # ------------------------------------------------------------------
    # result assembly
    # ------------------------------------------------------------------

    def _finish(self, form: StandardForm, status: LpStatus, x, y, basic, at_upper,
                iterations: int, extra=None, n_real: Optional[int] = None) -> LpSolution:
        n_real = form.A.shape[1] if n_real is None else n_real
        self.total_pivots += iterations
        logger.debug(f"simplex {status.value} after {iterations} pivots (m={form.A.shape[0]}, N={n_real})")
        if status == LpStatus.OPTIMAL:
            std_x = np.clip(x[:n_real], 0.0, form.upper)
            d = form.c - (form.A.T @ y if y.size else 0.0)
            resting_upper = at_upper[:n_real].copy()
            resting_upper[[j for j in basic if j < n_real]] = False
            w = np.where(resting_upper, np.maximum(-d, 0.0), 0.0)
            clean = all(j < n_real for j in basic)
            basis = Basis(basic=list(basic), at_upper=at_upper[:n_real].copy()) if clean else None
            self._last_form, self._last_basis = (form, basis) if clean else (None, None)
            return LpSolution(
                status=status, x=form.recover(std_x), z=form.objective(std_x),
                y=form.row_duals(y), iterations=iterations, basis=basis,
                std_x=std_x, std_dual=y.copy(), bound_dual=w,
            )
        self._last_form, self._last_basis = None, None
        if status == LpStatus.UNBOUNDED:
            return LpSolution(status=status, iterations=iterations,
                              ray=form.recover_direction(extra[:n_real]))
        if status == LpStatus.INFEASIBLE:
            row = form.kept_rows[extra] if isinstance(extra, (int, np.integer)) and extra >= 0 else None
            return LpSolution(status=status, iterations=iterations, infeasible_row=row)
        logger.warning(f"simplex stalled after {iterations} iterations (m={form.A.shape[0]}, N={n_real})")
        return LpSolution(status=status, iterations=iterations)

    # ------------------------------------------------------------------
    # public operations
    # ------------------------------------------------------------------

    def solve(self, model: LpModel) -> LpSolution:
        """Cold solve: slack basis where possible, phase 1 with artificials otherwise."""
        form = standardize(model)
        if form.infeasible:
            return self._finish(form, LpStatus.INFEASIBLE, None, None, [], np.zeros(0, bool), 0)
        A, b, c, u = form.A, form.b, form.c, form.upper
        m, N = A.shape

        basic, artificial_rows = [], []
        for r in range(m):
            s = form.slack_col[r]
            if s >= 0 and A[r, s] > 0:
                basic.append(int(s))
            else:
                basic.append(-1)
                artificial_rows.append(r)

        if not artificial_rows:
            at_upper = np.zeros(N, dtype=bool)
            status, x, y, iterations, extra = self._primal_loop(A, b, c, u, basic, at_upper)
            return self._finish(form, status, x, y, basic, at_upper, iterations, extra)

        k = len(artificial_rows)
        E = np.zeros((m, k))
        E[artificial_rows, np.arange(k)] = 1.0
        A1 = np.hstack([A, E])
        u1 = np.concatenate([u, np.full(k, np.inf)])
        c1 = np.concatenate([np.zeros(N), np.ones(k)])
        for t, r in enumerate(artificial_rows):
            basic[r] = N + t
        at_upper = np.zeros(N + k, dtype=bool)

        status, x, y, iterations, _ = self._primal_loop(A1, b, c1, u1, basic, at_upper)
        if status == LpStatus.STALLED:
            return self._finish(form, status, x, y, basic, at_upper, iterations, n_real=N)
        infeasibility = float(x[N:].sum())
        if infeasibility > self.feasibility_tol * max(1, m) * (1.0 + float(np.abs(b).max())):
            logger.debug(f"phase 1 ended with infeasibility {infeasibility:.3e}")
            return self._finish(form, LpStatus.INFEASIBLE, x, y, basic, at_upper, iterations, n_real=N)

        self._drive_out_artificials(A1, N, basic, at_upper)
        u1[N:] = 0.0
        c2 = np.concatenate([c, np.zeros(k)])
        status, x, y, more, extra = self._primal_loop(A1, b, c2, u1, basic, at_upper)
        return self._finish(form, status, x, y, basic, at_upper, iterations + more, extra, n_real=N)

    def _prepare_start(self, form: StandardForm, start: Basis):
        m, N = form.A.shape
        if len(start.basic) != m or start.at_upper.shape[0] != N:
            raise ValueError(f"basis does not fit a standard form of shape {(m, N)}")
        basic = [int(j) for j in start.basic]
        at_upper = start.at_upper.astype(bool).copy() & np.isfinite(form.upper)
        return basic, at_upper

    def basic_solution(self, model: LpModel, basis: Basis) -> np.ndarray:
        """Basic solution of ``basis`` expressed in the model's own variables."""
        form = standardize(model)
        basic, at_upper = self._prepare_start(form, basis)
        return form.recover(self._values(form.A, form.b, form.upper, basic, at_upper))

    def primal_simplex(self, model: LpModel, start: Basis) -> LpSolution:
        """Primal simplex from a primal-feasible basis of the standard form."""
        form = standardize(model)
        basic, at_upper = self._prepare_start(form, start)
        x = self._values(form.A, form.b, form.upper, basic, at_upper)
        if not self._primal_feasible(x, form.upper, basic):
            raise InfeasibleStartError("start basis is not primal feasible")
        status, x, y, iterations, extra = self._primal_loop(form.A, form.b, form.c, form.upper, basic, at_upper)
        return self._finish(form, status, x, y, basic, at_upper, iterations, extra)

    def dual_simplex(self, model: LpModel, start: Basis) -> LpSolution:
        """Dual simplex from a dual-feasible basis of the standard form."""
        form = standardize(model)
        basic, at_upper = self._prepare_start(form, start)
        _, d = self._reduced_costs(form.A, form.c, basic)
        if not self._dual_feasible(d, form.upper, basic, at_upper):
            raise DualInfeasibleStartError("start basis is not dual feasible")
        status, x, y, iterations, extra = self._dual_loop(form.A, form.b, form.c, form.upper, basic, at_upper)
        return self._finish(form, status, x, y, basic, at_upper, iterations, extra)

    def warm_basis(self, model: LpModel) -> Optional[Basis]:
        """Extend the last optimal basis to ``model`` (same variables, rows appended or bounds changed)."""
        if self._last_form is None or self._last_basis is None:
            return None
        old = self._last_form
        new = standardize(model)
        if new.infeasible or new.layout != old.layout:
            return None
        m_old = len(old.kept_rows)
        if new.kept_rows[:m_old] != old.kept_rows:
            return None
        if not np.array_equal(new.slack_col[:m_old], old.slack_col):
            return None
        extra_slacks = new.slack_col[m_old:]
        if np.any(extra_slacks < 0):
            return None
        basic = list(self._last_basis.basic) + [int(s) for s in extra_slacks]
        at_upper = np.zeros(new.A.shape[1], dtype=bool)
        at_upper[:old.A.shape[1]] = self._last_basis.at_upper
        at_upper &= np.isfinite(new.upper)
        return Basis(basic=basic, at_upper=at_upper)

    def resolve(self, model: LpModel) -> LpSolution:
        """Re-optimise after rows were appended or bounds changed; cold solve as fallback."""
        start = self.warm_basis(model)
        if start is None:
            return self.solve(model)
        form = standardize(model)
        basic, at_upper = self._prepare_start(form, start)
        try:
            x = self._values(form.A, form.b, form.upper, basic, at_upper)
            _, d = self._reduced_costs(form.A, form.c, basic)
        except np.linalg.LinAlgError:
            return self.solve(model)
        # fixed nonbasic columns may rest at either bound
        fixed = form.upper <= self.feasibility_tol
        at_upper[fixed] = False

        if self._primal_feasible(x, form.upper, basic):
            loop = self._primal_loop
        elif self._dual_feasible(d, form.upper, basic, at_upper):
            loop = self._dual_loop
        else:
            return self.solve(model)
        status, x, y, iterations, extra = loop(form.A, form.b, form.c, form.upper, basic, at_upper)
        if status == LpStatus.STALLED:
            logger.warning("warm-started simplex stalled, restarting cold")
            return self.solve(model)
        return self._finish(form, status, x, y, basic, at_upper, iterations, extra)
