"""Linear-program certificate for the trailing entry of the tridiagonal factor.

For a target dimension n the program minimizes the total slack
delta = sum(delta_j) that the entry t_nn must give up relative to 2^(n-1).
A zero optimum means the bound can be approached; a positive optimum proves
|t_nn| stays strictly below 2^(n-1) * max|a_ij|.

The solver is a self-contained two-phase tableau simplex with Bland's rule,
deterministic for a fixed program.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, NamedTuple, Tuple

import numpy as np

# Tolerance covering simplex arithmetic only; program data is exact in floats.
FEASIBILITY_TOL = 1e-9

_RC_TOL = 1e-12  # reduced-cost / pivot-column noise floor


class ConstraintRow(NamedTuple):
    label: str
    coeffs: Tuple[float, ...]
    lo: float
    up: float


@dataclass(frozen=True)
class DeltaProgram:
    """Slack-minimization program over delta_0 .. delta_(n-2)."""

    n: int
    num_vars: int
    objective: Tuple[float, ...]
    rows: Tuple[ConstraintRow, ...]

    def max_violation(self, x) -> float:
        """Largest constraint violation of a point (0 if feasible)."""
        x = np.asarray(x, dtype=float)
        worst = 0.0
        for row in self.rows:
            val = float(np.dot(row.coeffs, x))
            worst = max(worst, row.lo - val, val - row.up)
        return worst


@dataclass(frozen=True)
class LPSolution:
    status: str  # "optimal" | "infeasible"
    objective_value: float
    point: np.ndarray
    iterations: int


def build_program(n: int) -> DeltaProgram:
    """Assemble the constraint rows for target dimension n.

    Families (all sums over j, empty sums are 0):
      box:    0 <= delta_j <= 2^(j+1)                 0 <= j <= n-2
      chain:  0 <= delta_(q-2) - sum_{j<=q-3} delta_j <= 2        3 <= q <= n-1
      power:  2^q - 14 <= 7*sum_{j<=q-4} delta_j - delta_(q-3)
                          + delta_(q-2) <= 2^q                    3 <= q <= n-2
      tail:   -6 <= 3*sum_{j<=n-5} delta_j - delta_(n-4)
                          + delta_(n-3) - delta_(n-2) <= 0        n >= 4
    """
    if n < 3:
        raise ValueError("delta program requires n >= 3")
    nv = n - 1
    rows: List[ConstraintRow] = []

    for j in range(nv):
        c = np.zeros(nv)
        c[j] = 1.0
        rows.append(ConstraintRow(f"box[{j}]", tuple(c), 0.0, 2.0 ** (j + 1)))

    for q in range(3, n):
        c = np.zeros(nv)
        c[q - 2] = 1.0
        c[: q - 2] -= 1.0
        rows.append(ConstraintRow(f"chain[q={q}]", tuple(c), 0.0, 2.0))

    for q in range(3, n - 1):
        c = np.zeros(nv)
        c[: q - 3] += 7.0
        c[q - 3] -= 1.0
        c[q - 2] += 1.0
        rows.append(ConstraintRow(f"power[q={q}]", tuple(c), 2.0**q - 14.0, 2.0**q))

    if n >= 4:
        c = np.zeros(nv)
        c[: n - 4] += 3.0
        c[n - 4] -= 1.0
        c[n - 3] += 1.0
        c[n - 2] -= 1.0
        rows.append(ConstraintRow("tail", tuple(c), -6.0, 0.0))

    return DeltaProgram(n=n, num_vars=nv, objective=(1.0,) * nv, rows=tuple(rows))


def _one_sided(prog: DeltaProgram):
    """Split two-sided rows into (coeffs, rhs, sense) with sense in {<=, >=}."""
    out = []
    for row in prog.rows:
        a = np.asarray(row.coeffs, dtype=float)
        if np.isfinite(row.up):
            out.append((a, row.up, "<="))
        if np.isfinite(row.lo):
            out.append((a, row.lo, ">="))
    return out


def _bland_simplex(tab: np.ndarray, basis: List[int], ncols: int) -> int:
    """Run simplex pivots in place until optimal; returns the pivot count.

    Entering: smallest column index with negative reduced cost (Bland).
    Leaving: minimum ratio, ties broken by smallest basic-variable index.
    """
    m = tab.shape[0] - 1
    iters = 0
    while True:
        rc = tab[-1, :ncols]
        candidates = np.flatnonzero(rc < -_RC_TOL)
        if candidates.size == 0:
            return iters
        col = int(candidates[0])
        ratios = []
        for i in range(m):
            a = tab[i, col]
            if a > _RC_TOL:
                ratios.append((tab[i, -1] / a, basis[i], i))
        if not ratios:
            raise RuntimeError("LP is unbounded; delta programs are box-bounded")
        _, _, row = min(ratios)
        piv = tab[row, col]
        tab[row, :] /= piv
        for i in range(m + 1):
            if i != row and tab[i, col] != 0.0:
                tab[i, :] -= tab[i, col] * tab[row, :]
        basis[row] = col
        iters += 1


def solve_lp(prog: DeltaProgram) -> LPSolution:
    """Two-phase simplex with Bland's anti-cycling rule.

    Variables are treated as nonnegative, which every delta program
    guarantees through its box rows.  Deterministic for a fixed program.
    """
    nv = prog.num_vars
    sided = _one_sided(prog)
    m = len(sided)
    nslack = m

    # Equality form: original vars | one slack per row | artificials as needed.
    a_eq = np.zeros((m, nv + nslack))
    b_eq = np.zeros(m)
    for i, (a, rhs, sense) in enumerate(sided):
        a_eq[i, :nv] = a
        a_eq[i, nv + i] = 1.0 if sense == "<=" else -1.0
        b_eq[i] = rhs
        if rhs < 0.0:
            a_eq[i, :] *= -1.0
            b_eq[i] *= -1.0

    need_art = [i for i in range(m) if a_eq[i, nv + i] != 1.0]
    nart = len(need_art)
    ncols = nv + nslack + nart

    tab = np.zeros((m + 1, ncols + 1))
    tab[:m, : nv + nslack] = a_eq
    tab[:m, -1] = b_eq
    basis: List[int] = []
    art_of_row = {row: nv + nslack + k for k, row in enumerate(need_art)}
    for i in range(m):
        if i in art_of_row:
            tab[i, art_of_row[i]] = 1.0
            basis.append(art_of_row[i])
        else:
            basis.append(nv + i)

    iterations = 0
    if nart:
        # Phase 1: minimize the artificial sum, priced out against the basis.
        tab[-1, :] = 0.0
        tab[-1, nv + nslack : ncols] = 1.0
        for i, bv in enumerate(basis):
            if bv >= nv + nslack:
                tab[-1, :] -= tab[i, :]
        iterations += _bland_simplex(tab, basis, ncols)
        if tab[-1, -1] < -FEASIBILITY_TOL:
            return LPSolution("infeasible", float("nan"), np.full(nv, np.nan), iterations)
        # Pivot leftover artificials out of the basis; drop redundant rows.
        keep = []
        for i in range(m):
            if basis[i] >= nv + nslack:
                nonzero = np.flatnonzero(np.abs(tab[i, : nv + nslack]) > _RC_TOL)
                if nonzero.size == 0:
                    continue  # redundant row
                col = int(nonzero[0])
                piv = tab[i, col]
                tab[i, :] /= piv
                for k in range(tab.shape[0]):
                    if k != i and tab[k, col] != 0.0:
                        tab[k, :] -= tab[k, col] * tab[i, :]
                basis[i] = col
            keep.append(i)
        if len(keep) != m:
            tab = np.vstack([tab[keep, :], tab[-1:, :]])
            basis = [basis[i] for i in keep]
            m = len(keep)

    # Phase 2 on the original costs; artificial columns excluded from pricing.
    tab[-1, :] = 0.0
    tab[-1, :nv] = prog.objective
    for i, bv in enumerate(basis):
        if bv < nv and tab[-1, bv] != 0.0:
            tab[-1, :] -= tab[-1, bv] * tab[i, :]
    iterations += _bland_simplex(tab, basis, nv + nslack)

    x = np.zeros(nv)
    for i, bv in enumerate(basis):
        if bv < nv:
            x[bv] = tab[i, -1]
    return LPSolution("optimal", float(np.dot(prog.objective, x)), x, iterations)


def min_delta(n: int) -> float:
    """Optimal total slack for dimension n: 0 for n <= 5, positive for n >= 6."""
    sol = solve_lp(build_program(n))
    if sol.status != "optimal":
        raise RuntimeError(f"delta program for n={n} reported {sol.status}")
    return sol.objective_value


def tnn_upper_bound(n: int) -> float:
    """Upper bound on |t_nn| / max|a_ij|: 2^(n-1) minus the optimal slack."""
    return 2.0 ** (n - 1) - min_delta(n)
