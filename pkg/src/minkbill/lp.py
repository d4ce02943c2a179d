"""Dense two-phase simplex solver.

All linear programs in this package are small (a handful of variables, at
most a few thousand constraints), dense, and must be solved deterministically:
the same input has to produce bit-identical bases across runs so that search
results and reports are reproducible.  A hand-rolled tableau simplex with
Dantzig pricing (falling back to Bland's rule to rule out cycling) is enough.

Conventions: maximize ``objective @ x`` subject to rows ``coeffs @ x <= bound``
or ``coeffs @ x == bound`` plus optional per-variable bounds.  Variables are
free unless bounds say otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

EPS_LP = 1e-10          # feasibility tolerance used when re-checking solutions
_PIVOT_TOL = 1e-9       # entries smaller than this never act as pivots
_BLAND_AFTER = 300      # switch from Dantzig to Bland after this many pivots
_MAX_PIVOTS = 20000


class NumericalFailure(RuntimeError):
    """The simplex iteration exceeded its pivot budget or produced an
    unacceptably infeasible 'solution'."""


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple
    bound: float
    relation: str = "<="  # "<=" or "=="

    def __post_init__(self):
        if self.relation not in ("<=", "=="):
            raise ValueError(f"unsupported relation {self.relation!r}")


@dataclass
class LinearProgram:
    objective: Sequence[float]
    constraints: Sequence[Constraint]
    lower: Optional[Sequence[Optional[float]]] = None  # None entry = unbounded below
    upper: Optional[Sequence[Optional[float]]] = None


@dataclass(frozen=True)
class LpSolution:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: Optional[np.ndarray]
    objective_value: Optional[float]


def _pivot(tab, rhs, red, basis, row, col):
    piv = tab[row, col]
    tab[row] /= piv
    rhs[row] /= piv
    for r in range(tab.shape[0]):
        if r != row and tab[r, col] != 0.0:
            f = tab[r, col]
            tab[r] -= f * tab[row]
            rhs[r] -= f * rhs[row]
    f = red[col]
    if f != 0.0:
        red -= f * tab[row]
    basis[row] = col


def _iterate(tab, rhs, red, basis, ncols, counter):
    """Run simplex pivots until optimal/unbounded; entering columns are
    restricted to indices < ncols."""
    while True:
        counter[0] += 1
        if counter[0] > _MAX_PIVOTS:
            raise NumericalFailure("pivot budget exhausted")
        cand = red[:ncols]
        if counter[0] <= _BLAND_AFTER:
            col = int(np.argmax(cand))
            if cand[col] <= _PIVOT_TOL:
                return "optimal"
        else:
            pos = np.nonzero(cand > _PIVOT_TOL)[0]
            if pos.size == 0:
                return "optimal"
            col = int(pos[0])
        colvals = tab[:, col]
        rows = np.nonzero(colvals > _PIVOT_TOL)[0]
        if rows.size == 0:
            return "unbounded"
        ratios = rhs[rows] / colvals[rows]
        best = ratios.min()
        ties = rows[ratios <= best + 1e-12]
        # break ties on the smallest basis index (keeps Bland's rule valid)
        row = int(ties[np.argmin(basis[ties])])
        _pivot(tab, rhs, red, basis, row, col)


def _standard_simplex(c, A, b):
    """max c@x  s.t.  A@x <= b, x >= 0.  Returns (status, x or None)."""
    m, n = A.shape
    A = np.array(A, float)
    b = np.array(b, float)
    neg = b < 0
    n_art = int(neg.sum())
    tab = np.zeros((m, n + m + n_art))
    rhs = np.empty(m)
    basis = np.empty(m, int)
    k = 0
    for i in range(m):
        if not neg[i]:
            tab[i, :n] = A[i]
            tab[i, n + i] = 1.0
            rhs[i] = b[i]
            basis[i] = n + i
        else:
            tab[i, :n] = -A[i]
            tab[i, n + i] = -1.0
            tab[i, n + m + k] = 1.0
            rhs[i] = -b[i]
            basis[i] = n + m + k
            k += 1
    counter = [0]
    if n_art:
        d = np.zeros(n + m + n_art)
        d[n + m:] = -1.0
        red = d - d[basis] @ tab
        _iterate(tab, rhs, red, basis, n + m + n_art, counter)
        art_value = float(d[basis] @ rhs)
        if art_value < -1e-8:
            return "infeasible", None
        # drive remaining (zero-valued) artificials out of the basis if we can
        for i in range(m):
            if basis[i] >= n + m:
                cols = np.nonzero(np.abs(tab[i, : n + m]) > _PIVOT_TOL)[0]
                if cols.size:
                    red_dummy = np.zeros_like(red)
                    _pivot(tab, rhs, red_dummy, basis, i, int(cols[0]))
    c_ext = np.zeros(n + m + n_art)
    c_ext[:n] = c
    red = c_ext - c_ext[basis] @ tab
    counter[0] = 0
    status = _iterate(tab, rhs, red, basis, n + m, counter)
    if status != "optimal":
        return status, None
    x = np.zeros(n)
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = rhs[i]
    return "optimal", x


def solve(lp: LinearProgram) -> LpSolution:
    nv = len(lp.objective)
    lower = list(lp.lower) if lp.lower is not None else [None] * nv
    upper = list(lp.upper) if lp.upper is not None else [None] * nv
    if len(lower) != nv or len(upper) != nv:
        raise ValueError("bounds length mismatch")

    # map each original variable onto nonnegative simplex variables
    plan = []  # per var: ("shift", col, lo) | ("neg", col, up) | ("split", col)
    ncols = 0
    extra = []  # rows enforcing upper bounds when both bounds are finite
    for j in range(nv):
        lo, up = lower[j], upper[j]
        if lo is not None:
            plan.append(("shift", ncols, lo))
            if up is not None:
                extra.append((ncols, up - lo))
            ncols += 1
        elif up is not None:
            plan.append(("neg", ncols, up))
            ncols += 1
        else:
            plan.append(("split", ncols))
            ncols += 2

    rows = []
    rhs = []
    for con in lp.constraints:
        a = np.asarray(con.coeffs, float)
        if a.shape != (nv,):
            raise ValueError("constraint arity mismatch")
        reps = [(a, con.bound)]
        if con.relation == "==":
            reps.append((-a, -con.bound))
        for ar, br in reps:
            row = np.zeros(ncols)
            bb = br
            for j, step in enumerate(plan):
                if step[0] == "shift":
                    row[step[1]] = ar[j]
                    bb -= ar[j] * step[2]
                elif step[0] == "neg":
                    row[step[1]] = -ar[j]
                    bb -= ar[j] * step[2]
                else:
                    row[step[1]] = ar[j]
                    row[step[1] + 1] = -ar[j]
            rows.append(row)
            rhs.append(bb)
    for col, ub in extra:
        row = np.zeros(ncols)
        row[col] = 1.0
        rows.append(row)
        rhs.append(ub)

    c = np.zeros(ncols)
    obj = np.asarray(lp.objective, float)
    for j, step in enumerate(plan):
        if step[0] == "shift":
            c[step[1]] += obj[j]
        elif step[0] == "neg":
            c[step[1]] -= obj[j]
        else:
            c[step[1]] += obj[j]
            c[step[1] + 1] -= obj[j]

    if rows:
        A = np.vstack(rows)
        b = np.asarray(rhs, float)
    else:
        A = np.zeros((0, ncols))
        b = np.zeros(0)
    status, y = _standard_simplex(c, A, b)
    if status != "optimal":
        return LpSolution(status, None, None)

    x = np.empty(nv)
    for j, step in enumerate(plan):
        if step[0] == "shift":
            x[j] = step[2] + y[step[1]]
        elif step[0] == "neg":
            x[j] = step[2] - y[step[1]]
        else:
            x[j] = y[step[1]] - y[step[1] + 1]

    _recheck(lp, x, lower, upper)
    return LpSolution("optimal", x, float(obj @ x))


def _recheck(lp, x, lower, upper):
    """Independent feasibility check of the reported solution."""
    for con in lp.constraints:
        a = np.asarray(con.coeffs, float)
        lhs = float(a @ x)
        scale = 1.0 + abs(con.bound) + float(np.abs(a) @ np.abs(x))
        tol = EPS_LP + 1e-9 * scale
        viol = lhs - con.bound if con.relation == "<=" else abs(lhs - con.bound)
        if viol > tol:
            raise NumericalFailure(
                f"solution violates constraint by {viol:.3e} (tol {tol:.3e})")
    for j, (lo, up) in enumerate(zip(lower, upper)):
        if lo is not None and x[j] < lo - 1e-9:
            raise NumericalFailure("solution violates a lower bound")
        if up is not None and x[j] > up + 1e-9:
            raise NumericalFailure("solution violates an upper bound")
