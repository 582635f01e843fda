"""Aasen factorization P A P^T = L T L^T and linear solves through it.

L is unit lower triangular with first column e_1, T is symmetric tridiagonal,
and P is chosen by partial pivoting so that every multiplier satisfies
|l_ij| <= 1.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .matcore import (
    PermutationVector,
    SymmetricMatrix,
    SymmetricTridiagonal,
    UnitLowerTriangular,
)

# A tridiagonal pivot at or below this magnitude is treated as an exact zero.
SINGULAR_PIVOT_TOL = 1e-300

# Candidates within one part in 1e12 of the largest magnitude count as tied.
# Matrices realizing extreme growth put exact ties in every pivot column;
# a strict comparison would let entry roundoff pick the branch at random.
PIVOT_TIE_REL = 1e-12


class SingularMatrixError(ValueError):
    """Raised when the tridiagonal factor is singular during a solve."""

    def __init__(self, pivot_index: int):
        self.pivot_index = pivot_index
        super().__init__(f"singular tridiagonal system: zero pivot at index {pivot_index}")


class TieRule(enum.Enum):
    """Tie-breaking policy for the pivot search.

    FIRST keeps the current row when it is among the tied maxima;
    LOWEST_INDEX picks the smallest index among them.  Since the current row
    is also the lowest candidate index, the two coincide under this scan;
    both are kept so the policy is explicit in every call.
    """

    FIRST = "first"
    LOWEST_INDEX = "lowest"


@dataclass(frozen=True)
class AasenFactors:
    """Output of factorize(): permutation p, unit lower L, tridiagonal T."""

    p: PermutationVector
    L: UnitLowerTriangular
    T: SymmetricTridiagonal

    @property
    def n(self) -> int:
        return self.T.n


def _pivot_offset(v: np.ndarray, rule: TieRule) -> int:
    """Offset (0 == current row) of the pivot among the candidate column v."""
    av = np.abs(v)
    m = av.max()
    if m == 0.0:
        return 0
    ties = av >= m * (1.0 - PIVOT_TIE_REL)
    if rule is TieRule.FIRST and ties[0]:
        return 0
    return int(np.flatnonzero(ties)[0])


def factorize(a: SymmetricMatrix, rule: TieRule = TieRule.FIRST) -> AasenFactors:
    """Column-by-column Aasen factorization with partial pivoting.

    Each step forms the working column h of H = T L^T, then the pivot is the
    entry of largest magnitude among the remaining rows, so multipliers never
    exceed 1.  A zero working column yields zero multipliers, not a failure;
    the factorization exists for every finite symmetric matrix.
    """
    if not np.all(np.isfinite(a.entries)):
        raise ValueError("matrix entries must be finite")
    n = a.n
    aw = a.entries.copy()
    lw = np.eye(n)
    perm = np.arange(n)
    alpha = np.zeros(n)
    beta = np.zeros(max(n - 1, 0))

    for j in range(n):
        lj = lw[j, : j + 1]
        h = np.empty(j + 1)
        if j > 0:
            hh = alpha[:j] * lj[:j]
            hh[1:] += beta[: j - 1] * lj[: j - 1]
            hh += beta[:j] * lj[1 : j + 1]
            h[:j] = hh
        h[j] = aw[j, j] - lj[:j] @ h[:j]
        alpha[j] = h[j] - (beta[j - 1] * lj[j - 1] if j > 0 else 0.0)

        if j < n - 1:
            v = aw[j + 1 :, j] - lw[j + 1 :, : j + 1] @ h
            r = _pivot_offset(v, rule)
            if r != 0:
                rr = j + 1 + r
                v[[0, r]] = v[[r, 0]]
                perm[[j + 1, rr]] = perm[[rr, j + 1]]
                lw[[j + 1, rr], : j + 1] = lw[[rr, j + 1], : j + 1]
                aw[[j + 1, rr], :] = aw[[rr, j + 1], :]
                aw[:, [j + 1, rr]] = aw[:, [rr, j + 1]]
            beta[j] = v[0]
            if v[0] != 0.0:
                # pivoting bounds the quotients by 1 in exact arithmetic; the
                # clip removes the one-ulp excess division roundoff can add
                lw[j + 2 :, j + 1] = np.clip(v[1:] / v[0], -1.0, 1.0)

    return AasenFactors(
        p=PermutationVector(perm),
        L=UnitLowerTriangular(np.tril(lw, -1)),
        T=SymmetricTridiagonal(alpha, beta),
    )


def tridiag_solve(tri: SymmetricTridiagonal, y) -> np.ndarray:
    """Solve T z = y by elimination with row partial pivoting.

    Pivoting fills at most one extra superdiagonal beyond the original band.
    Raises SingularMatrixError (with the pivot index) on a zero pivot.
    """
    y = np.asarray(y, dtype=float)
    n = tri.n
    if y.shape != (n,):
        raise ValueError(f"right-hand side has length {y.shape}, expected ({n},)")

    sub = np.zeros(n)  # sub[k]  = row k+1 entry in column k
    d = tri.diag.copy()
    sup = np.zeros(n)  # sup[k]  = row k   entry in column k+1
    sup2 = np.zeros(n)  # sup2[k] = row k   entry in column k+2 (pivoting fill)
    if n > 1:
        sub[: n - 1] = tri.offdiag
        sup[: n - 1] = tri.offdiag
    rhs = y.copy()

    for k in range(n - 1):
        if abs(sub[k]) > abs(d[k]):
            d[k], sub[k] = sub[k], d[k]
            sup[k], d[k + 1] = d[k + 1], sup[k]
            sup2[k], sup[k + 1] = sup[k + 1], sup2[k]
            rhs[k], rhs[k + 1] = rhs[k + 1], rhs[k]
        if abs(d[k]) <= SINGULAR_PIVOT_TOL:
            raise SingularMatrixError(k)
        m = sub[k] / d[k]
        d[k + 1] -= m * sup[k]
        sup[k + 1] -= m * sup2[k]
        rhs[k + 1] -= m * rhs[k]
    if abs(d[n - 1]) <= SINGULAR_PIVOT_TOL:
        raise SingularMatrixError(n - 1)

    z = np.zeros(n)
    for k in range(n - 1, -1, -1):
        acc = rhs[k]
        if k + 1 < n:
            acc -= sup[k] * z[k + 1]
        if k + 2 < n:
            acc -= sup2[k] * z[k + 2]
        z[k] = acc / d[k]
    return z


def solve(f: AasenFactors, b) -> np.ndarray:
    """Solve A x = b given factors of A.

    Pipeline: permute, forward-substitute L, tridiagonal solve, back-substitute
    L^T, inverse permute.
    """
    b = np.asarray(b, dtype=float)
    n = f.n
    if b.shape != (n,):
        raise ValueError(f"right-hand side has length {b.shape}, expected ({n},)")
    ls = f.L.strict
    p = f.p.p

    y = b[p].copy()
    for i in range(1, n):
        y[i] -= ls[i, :i] @ y[:i]

    z = tridiag_solve(f.T, y)

    for i in range(n - 2, -1, -1):
        z[i] -= ls[i + 1 :, i] @ z[i + 1 :]

    x = np.empty(n)
    x[p] = z
    return x
