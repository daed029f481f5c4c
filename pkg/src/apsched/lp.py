"""Self-contained dense linear-programming solver.

Primal tableau simplex, two-phase, with general variable bounds.  Entering
rule is most-negative reduced cost; after a run of degenerate pivots the
rule switches to Bland's (lowest index) until the objective strictly
improves again, which prevents cycling while keeping the pivot sequence
deterministic.  Sized for dense desk-scale problems (up to roughly 1500
rows/columns); no sparsity, no MILP.
"""

from dataclasses import dataclass, field

import numpy as np

FEAS_TOL = 1e-7
COST_TOL = 1e-9
PIVOT_TOL = 1e-10
STALL_LIMIT = 64

LESS, EQUAL, GREATER = "<=", "=", ">="


class LpNumericalError(RuntimeError):
    """Pivot breakdown or failed feasibility of a claimed-optimal basis."""


@dataclass
class LinearProgram:
    """min objective @ x subject to rows (coeffs, relation, rhs) and bounds.

    bounds is one (lo, hi) pair per variable; use -inf/+inf for unbounded
    sides.  Defaults to x >= 0 when bounds is None.
    """

    objective: np.ndarray
    constraints: list = field(default_factory=list)
    bounds: list = None

    def __post_init__(self):
        self.objective = np.asarray(self.objective, dtype=float)
        if self.objective.ndim != 1:
            raise ValueError("objective must be a vector")
        n = self.objective.size
        rows = []
        for coeffs, rel, rhs in self.constraints:
            coeffs = np.asarray(coeffs, dtype=float)
            if coeffs.shape != (n,):
                raise ValueError("constraint width does not match objective")
            if rel not in (LESS, EQUAL, GREATER):
                raise ValueError(f"unknown relation {rel!r}")
            rows.append((coeffs, rel, float(rhs)))
        self.constraints = rows
        if self.bounds is None:
            self.bounds = [(0.0, np.inf)] * n
        if len(self.bounds) != n:
            raise ValueError("one bound pair per variable required")
        for lo, hi in self.bounds:
            if lo > hi:
                raise ValueError("lower bound exceeds upper bound")

    @property
    def num_vars(self):
        return self.objective.size


@dataclass
class LpSolution:
    status: str  # optimal | infeasible | unbounded
    x: np.ndarray = None
    objective: float = None
    iterations: int = 0
    duals: np.ndarray = None  # one multiplier per input constraint row


class _Tableau:
    """[A | b] kept basis-reduced, with a reduced-cost row."""

    def __init__(self, A, b, basis):
        self.A = A
        self.b = b
        self.basis = basis
        self.iterations = 0

    def price(self, c):
        z = c - c[self.basis] @ self.A
        value = float(c[self.basis] @ self.b)
        return z, value

    def pivot(self, row, col):
        piv = self.A[row, col]
        if abs(piv) < PIVOT_TOL:
            raise LpNumericalError(f"pivot element {piv:.3e} below tolerance")
        self.A[row] /= piv
        self.b[row] /= piv
        factors = self.A[:, col].copy()
        factors[row] = 0.0
        self.A -= np.outer(factors, self.A[row])
        self.b -= factors * self.b[row]
        self.A[:, col] = 0.0
        self.A[row, col] = 1.0
        self.basis[row] = col
        self.iterations += 1

    def run(self, c, allowed, max_iters):
        """Minimize c over the current basis; returns 'optimal'/'unbounded'."""
        z, value = self.price(c)
        stall = 0
        use_bland = False
        while True:
            if self.iterations > max_iters:
                raise LpNumericalError("simplex iteration limit exceeded")
            candidates = np.flatnonzero((z < -COST_TOL) & allowed)
            if candidates.size == 0:
                return "optimal"
            if use_bland:
                col = int(candidates[0])
            else:
                col = int(candidates[np.argmin(z[candidates])])
            colvals = self.A[:, col]
            rows = np.flatnonzero(colvals > PIVOT_TOL)
            if rows.size == 0:
                if np.any(colvals > PIVOT_TOL * 1e-3):
                    raise LpNumericalError(
                        "all ratio-test pivots below tolerance"
                    )
                return "unbounded"
            ratios = self.b[rows] / colvals[rows]
            best = ratios.min()
            tied = rows[ratios <= best + 1e-12]
            if use_bland or tied.size > 1:
                # lowest basic-variable index among ties (Bland's exit rule)
                row = int(tied[np.argmin(np.asarray(self.basis)[tied])])
            else:
                row = int(tied[0])
            self.pivot(row, col)
            z, new_value = self.price(c)
            if new_value < value:
                stall = 0
                use_bland = False
            else:
                stall += 1
                if stall >= STALL_LIMIT:
                    use_bland = True
            value = new_value


def _to_standard_form(lp):
    """Shift/split variables to x' >= 0 and collect rows with rhs >= 0 later.

    Returns (columns, offsets, extra upper-bound rows) where original
    x_j = offset_j + sum(sign * x'_k) over its standard columns.
    """
    col_map = []  # per original var: list of (std_col, sign)
    offsets = np.zeros(lp.num_vars)
    upper_rows = []  # (std_col, ub) rows x'_k <= ub
    next_col = 0
    for j, (lo, hi) in enumerate(lp.bounds):
        if np.isfinite(lo):
            offsets[j] = lo
            col_map.append([(next_col, 1.0)])
            if np.isfinite(hi):
                if hi > lo:
                    upper_rows.append((next_col, hi - lo))
                else:  # fixed variable: x' <= 0 pins it at lo
                    upper_rows.append((next_col, 0.0))
            next_col += 1
        elif np.isfinite(hi):
            offsets[j] = hi
            col_map.append([(next_col, -1.0)])
            next_col += 1
        else:
            col_map.append([(next_col, 1.0), (next_col + 1, -1.0)])
            next_col += 2
    return col_map, offsets, upper_rows, next_col


def solve_lp(lp, max_iters=None):
    """Two-phase simplex solve; deterministic for identical inputs.

    Raises LpNumericalError on pivot breakdown; infeasible/unbounded are
    reported through LpSolution.status.
    """
    col_map, offsets, upper_rows, n_std = _to_standard_form(lp)
    m = len(lp.constraints) + len(upper_rows)

    rows = np.zeros((m, n_std))
    rhs = np.zeros(m)
    rels = []
    for i, (coeffs, rel, b) in enumerate(lp.constraints):
        for j in range(lp.num_vars):
            if coeffs[j] == 0.0:
                continue
            for col, sign in col_map[j]:
                rows[i, col] += coeffs[j] * sign
        rhs[i] = b - coeffs @ offsets
        rels.append(rel)
    for k, (col, ub) in enumerate(upper_rows):
        i = len(lp.constraints) + k
        rows[i, col] = 1.0
        rhs[i] = ub
        rels.append(LESS)

    flipped = rhs < 0
    rows[flipped] *= -1.0
    rhs[flipped] *= -1.0
    rels = [
        {LESS: GREATER, GREATER: LESS, EQUAL: EQUAL}[r] if f else r
        for r, f in zip(rels, flipped)
    ]

    # slack/surplus columns, then artificials where no slack can start basic
    n_slack = sum(r != EQUAL for r in rels)
    art_rows = [i for i, r in enumerate(rels) if r != LESS]
    n_art = len(art_rows)
    A = np.zeros((m, n_std + n_slack + n_art))
    A[:, :n_std] = rows
    basis = [0] * m
    sl = n_std
    for i, r in enumerate(rels):
        if r == LESS:
            A[i, sl] = 1.0
            basis[i] = sl
            sl += 1
        elif r == GREATER:
            A[i, sl] = -1.0
            sl += 1
    for k, i in enumerate(art_rows):
        A[i, n_std + n_slack + k] = 1.0
        basis[i] = n_std + n_slack + k

    A0 = A.copy()
    tab = _Tableau(A, rhs.copy(), basis)
    total_cols = A.shape[1]
    if max_iters is None:
        max_iters = 200 * (m + total_cols) + 1000
    art_mask = np.zeros(total_cols, dtype=bool)
    art_mask[n_std + n_slack:] = True

    # phase 1
    row_ids = np.arange(m)
    if n_art:
        c1 = np.zeros(total_cols)
        c1[art_mask] = 1.0
        status = tab.run(c1, np.ones(total_cols, dtype=bool), max_iters)
        _, value = tab.price(c1)
        if status != "optimal" or value > FEAS_TOL:
            return LpSolution(status="infeasible", iterations=tab.iterations)
        row_ids = _expel_artificials(tab, art_mask, row_ids)

    # phase 2
    c2 = np.zeros(total_cols)
    for j in range(lp.num_vars):
        for col, sign in col_map[j]:
            c2[col] += lp.objective[j] * sign
    status = tab.run(c2, ~art_mask, max_iters)
    if status == "unbounded":
        return LpSolution(status="unbounded", iterations=tab.iterations)

    x_std = np.zeros(total_cols)
    x_std[np.asarray(tab.basis)] = tab.b
    x = offsets.copy()
    for j in range(lp.num_vars):
        for col, sign in col_map[j]:
            x[j] += sign * x_std[col]

    _check_primal(lp, x)
    duals = _basis_duals(lp, A0, c2, tab.basis, row_ids, flipped)
    objective = float(lp.objective @ x)
    return LpSolution(
        status="optimal",
        x=x,
        objective=objective,
        iterations=tab.iterations,
        duals=duals,
    )


def _expel_artificials(tab, art_mask, row_ids):
    """Pivot zero-level artificials out of the basis; drop redundant rows.

    Pivots on the largest admissible element: a near-zero pivot here would
    poison the whole tableau.
    """
    keep = np.ones(tab.A.shape[0], dtype=bool)
    for row in range(tab.A.shape[0]):
        if not art_mask[tab.basis[row]]:
            continue
        candidates = np.where(art_mask, 0.0, np.abs(tab.A[row]))
        col = int(np.argmax(candidates))
        if candidates[col] > 1e-7:
            tab.pivot(row, col)
        else:
            keep[row] = False
    if not np.all(keep):
        tab.A = tab.A[keep]
        tab.b = tab.b[keep]
        tab.basis = [bv for bv, k in zip(tab.basis, keep) if k]
        row_ids = row_ids[keep]
    return row_ids


def _check_primal(lp, x, tol=FEAS_TOL):
    for coeffs, rel, b in lp.constraints:
        v = coeffs @ x
        # feasibility is judged relative to the row's magnitude
        slack = tol * max(1.0, float(np.abs(coeffs) @ np.abs(x)), abs(b))
        ok = (
            v <= b + slack
            if rel == LESS
            else v >= b - slack
            if rel == GREATER
            else abs(v - b) <= slack
        )
        if not ok:
            raise LpNumericalError("optimal basis violates a constraint")
    for xj, (lo, hi) in zip(x, lp.bounds):
        slack = tol * max(1.0, abs(xj))
        if xj < lo - slack or xj > hi + slack:
            raise LpNumericalError("optimal basis violates a bound")


def _basis_duals(lp, A, c2, basis, row_ids, flipped):
    """Multipliers y = c_B B^-T for the original constraint rows.

    Dropped (redundant) rows get multiplier 0; rows that were sign-flipped
    on standardization get their multiplier flipped back.  Only the leading
    len(constraints) components are reported (upper-bound rows are internal).
    """
    B = A[np.ix_(row_ids, basis)]
    try:
        y_kept = np.linalg.solve(B.T, c2[np.asarray(basis)])
    except np.linalg.LinAlgError:
        return None
    y = np.zeros(flipped.size)
    y[row_ids] = y_kept
    y[flipped] *= -1.0
    return y[: len(lp.constraints)]
