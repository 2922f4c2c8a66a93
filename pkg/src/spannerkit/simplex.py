"""Bundled dense revised simplex for box-bounded linear programs.

Solves  min c'x  s.t.  A_ub x <= b_ub,  A_eq x = b_eq,  lower <= x <= upper,
with a two-phase bounded-variable revised simplex: slacks turn inequalities
into equalities, artificials give a phase-1 starting basis, and nonbasic
variables may rest at either bound.  Pricing is Dantzig with a Bland fallback
after a run of degenerate pivots (anti-cycling).  The basis inverse is kept
explicitly and refactorized periodically.

This is adequate for the desk-scale models this package builds (a few
thousand nonzeros); larger models should go through an external backend
adapter instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

PIVOT_TOL = 1e-9
FEAS_TOL = 1e-7
REFACTOR_EVERY = 100
DEGENERATE_RUN = 40  # consecutive zero-step pivots before switching to Bland

AT_LOWER, AT_UPPER, BASIC = 0, 1, 2


@dataclass
class StandardLp:
    """Dense LP in the solver's native form. Upper bounds may be +inf."""

    c: np.ndarray
    a_ub: np.ndarray
    b_ub: np.ndarray
    a_eq: np.ndarray
    b_eq: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    names: list[str] | None = None

    @property
    def num_vars(self) -> int:
        return self.c.shape[0]


@dataclass
class LpResult:
    status: str  # "optimal" | "infeasible" | "unbounded" | "iteration_limit"
    x: np.ndarray | None
    objective: float | None
    iterations: int
    message: str = ""


@dataclass
class _Tableau:
    a: np.ndarray  # m x n_total, equalities only (slacks + artificials appended)
    b: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    basis: np.ndarray  # m basic column indices
    status: np.ndarray  # per-column AT_LOWER / AT_UPPER / BASIC
    x: np.ndarray
    binv: np.ndarray = field(default=None)  # type: ignore[assignment]

    def refactor(self) -> None:
        m = self.a.shape[0]
        self.binv = np.linalg.solve(self.a[:, self.basis], np.eye(m))
        nonbasic_mask = self.status != BASIC
        rhs = self.b - self.a[:, nonbasic_mask] @ self.x[nonbasic_mask]
        self.x[self.basis] = self.binv @ rhs


def _choose_entering(d: np.ndarray, status: np.ndarray, fixed: np.ndarray, bland: bool) -> int | None:
    viol = np.zeros_like(d)
    at_lower = (status == AT_LOWER) & ~fixed
    at_upper = (status == AT_UPPER) & ~fixed
    viol[at_lower] = -d[at_lower]
    viol[at_upper] = d[at_upper]
    eligible = viol > PIVOT_TOL
    if not eligible.any():
        return None
    if bland:
        return int(np.flatnonzero(eligible)[0])
    return int(np.argmax(viol))


def _simplex_loop(t: _Tableau, c: np.ndarray, max_iters: int) -> tuple[str, int]:
    m = t.a.shape[0]
    fixed = t.upper - t.lower <= PIVOT_TOL  # fixed columns never enter
    iters = 0
    degen_run = 0
    since_refactor = 0
    while iters < max_iters:
        iters += 1
        y = c[t.basis] @ t.binv
        d = c - y @ t.a
        j = _choose_entering(d, t.status, fixed, bland=degen_run >= DEGENERATE_RUN)
        if j is None:
            return "optimal", iters
        sigma = 1.0 if t.status[j] == AT_LOWER else -1.0
        w = t.binv @ t.a[:, j]

        # Ratio test: first basic variable to hit a bound, or a bound flip of j.
        best_t = t.upper[j] - t.lower[j]  # flip step (inf if unbounded range)
        leave = -1
        leave_to = AT_LOWER
        for i in range(m):
            swi = sigma * w[i]
            bi = t.basis[i]
            if swi > PIVOT_TOL:
                step = (t.x[bi] - t.lower[bi]) / swi
                to = AT_LOWER
            elif swi < -PIVOT_TOL:
                if not np.isfinite(t.upper[bi]):
                    continue
                step = (t.x[bi] - t.upper[bi]) / swi
                to = AT_UPPER
            else:
                continue
            if step < best_t - 1e-12 or (
                step < best_t + 1e-12 and leave >= 0 and bi < t.basis[leave]
            ):
                best_t = step
                leave = i
                leave_to = to
        if not np.isfinite(best_t):
            return "unbounded", iters
        best_t = max(best_t, 0.0)
        degen_run = degen_run + 1 if best_t <= 1e-12 else 0

        t.x[t.basis] -= sigma * best_t * w
        if leave < 0:
            # Bound flip: j crosses its whole range and stays nonbasic.
            t.x[j] = t.upper[j] if t.status[j] == AT_LOWER else t.lower[j]
            t.status[j] = AT_UPPER if t.status[j] == AT_LOWER else AT_LOWER
            continue
        t.x[j] = (t.lower[j] if t.status[j] == AT_LOWER else t.upper[j]) + sigma * best_t
        out = t.basis[leave]
        t.x[out] = t.lower[out] if leave_to == AT_LOWER else t.upper[out]
        t.status[out] = leave_to
        t.status[j] = BASIC
        t.basis[leave] = j

        since_refactor += 1
        if since_refactor >= REFACTOR_EVERY:
            t.refactor()
            since_refactor = 0
        else:
            # Product-form update of the basis inverse.
            piv = w[leave]
            if abs(piv) < PIVOT_TOL:
                t.refactor()
                since_refactor = 0
            else:
                t.binv[leave] /= piv
                others = np.arange(m) != leave
                t.binv[others] -= np.outer(w[others], t.binv[leave])
    return "iteration_limit", iters


def solve_standard_lp(lp: StandardLp, *, max_iters: int | None = None) -> LpResult:
    """Two-phase solve; deterministic for a fixed model."""
    n = lp.num_vars
    mu = lp.a_ub.shape[0] if lp.a_ub.size else 0
    me = lp.a_eq.shape[0] if lp.a_eq.size else 0
    m = mu + me

    if m == 0:
        # No rows: each variable sits at whichever bound its cost prefers.
        x = np.where(lp.c >= 0, lp.lower, lp.upper)
        if not np.all(np.isfinite(x)):
            return LpResult("unbounded", None, None, 0)
        return LpResult("optimal", x, float(lp.c @ x), 0)

    a = np.zeros((m, n + mu + m))
    if mu:
        a[:mu, :n] = lp.a_ub
        a[:mu, n : n + mu] = np.eye(mu)  # slacks
    if me:
        a[mu:, :n] = lp.a_eq
    b = np.concatenate([lp.b_ub, lp.b_eq]) if mu else lp.b_eq.astype(float).copy()
    lower = np.concatenate([lp.lower, np.zeros(mu), np.zeros(m)])
    upper = np.concatenate([lp.upper, np.full(mu, np.inf), np.full(m, np.inf)])

    # Phase 1: artificials bridge the residual left by all-at-lower-bound.
    x = np.where(np.isfinite(lower), lower, 0.0)
    if not np.all(np.isfinite(x[: n + mu])):
        x[~np.isfinite(x)] = 0.0
    resid = b - a[:, : n + mu] @ x[: n + mu]
    art = n + mu + np.arange(m)
    a[np.arange(m), art] = np.where(resid >= 0, 1.0, -1.0)
    x[art] = np.abs(resid)

    status = np.full(n + mu + m, AT_LOWER, dtype=np.int8)
    status[art] = BASIC
    t = _Tableau(a, b, lower, upper, art.copy(), status, x)
    t.refactor()

    c1 = np.zeros(n + mu + m)
    c1[art] = 1.0
    max_iters = max_iters or 50 * (m + n + mu + 20)
    phase1_status, it1 = _simplex_loop(t, c1, max_iters)
    if phase1_status == "iteration_limit":
        return LpResult("iteration_limit", None, None, it1, "phase 1 hit the iteration cap")
    phase1_obj = float(c1 @ t.x)
    if phase1_obj > FEAS_TOL:
        return LpResult("infeasible", None, None, it1, f"phase-1 optimum {phase1_obj:.3e}")

    # Drive basic artificials out where a real pivot exists; freeze them all.
    for i in range(m):
        bi = t.basis[i]
        if bi < n + mu:
            continue
        row = t.binv[i] @ t.a[:, : n + mu]
        candidates = np.flatnonzero(np.abs(row) > 1e-7)
        candidates = [j for j in candidates if t.status[j] != BASIC]
        if candidates:
            j = int(candidates[0])
            w = t.binv @ t.a[:, j]
            piv = w[i]
            t.binv[i] /= piv
            others = np.arange(m) != i
            t.binv[others] -= np.outer(w[others], t.binv[i])
            t.status[bi] = AT_LOWER
            t.x[bi] = 0.0
            t.status[j] = BASIC
            t.basis[i] = j
            t.refactor()
    t.lower[n + mu :] = 0.0
    t.upper[n + mu :] = 0.0  # artificials can never re-enter or move

    c2 = np.zeros(n + mu + m)
    c2[:n] = lp.c
    phase2_status, it2 = _simplex_loop(t, c2, max_iters)
    if phase2_status == "iteration_limit":
        return LpResult("iteration_limit", None, None, it1 + it2, "phase 2 hit the iteration cap")
    if phase2_status == "unbounded":
        return LpResult("unbounded", None, None, it1 + it2)
    t.refactor()  # clean accumulated drift before reporting
    xr = t.x[:n].copy()
    return LpResult("optimal", xr, float(lp.c @ xr), it1 + it2)
