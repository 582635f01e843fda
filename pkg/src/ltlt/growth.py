"""Growth factor of an LTL^T factorization and its entrywise certificate.

The certificate checks every entry bound that pins the growth factor below
2^(n-1): bounds on the leading entries of T, on the entries of the working
matrix H = T L^T, and on the trailing rows of T.  All bounds are taken
relative to the largest entry magnitude of the input matrix.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, NamedTuple, Tuple

from .aasen import AasenFactors
from .matcore import SymmetricMatrix, max_abs

# A check row may undershoot its bound by this much before failing; absorbs
# roundoff accumulation across dimensions up to ~50.
MARGIN_TOL = 1e-10


class UndefinedGrowthError(ValueError):
    """Raised when asking for the growth factor of the zero matrix."""


class CheckRow(NamedTuple):
    label: str
    lhs: float
    bound: float
    margin: float


@dataclass(frozen=True)
class GrowthCertificate:
    """Instantiated entrywise bounds for one factorization."""

    rho: float
    checks: List[CheckRow]
    all_pass: bool
    n: int

    def worst(self) -> CheckRow:
        return min(self.checks, key=lambda row: row.margin)


@dataclass(frozen=True)
class BoundTable:
    """Closed-form growth bounds: Higham's 4^(n-2) and the sharper 2^(n-1)."""

    n: int
    higham_bound: float
    improved_bound: float
    not_tight: bool


def growth_factor(a: SymmetricMatrix, f: AasenFactors) -> float:
    """max |t_ij| / max |a_ij| over the final tridiagonal factor."""
    m = max_abs(a)
    if m == 0.0:
        raise UndefinedGrowthError("growth factor is undefined for the zero matrix")
    return f.T.max_abs() / m


def growth_certificate(a: SymmetricMatrix, f: AasenFactors) -> GrowthCertificate:
    """Instantiate every entrywise bound for the given factors.

    Emitted rows (entries of T and of H = T L^T, normalized by max |a_ij|,
    indices 1-based in the labels):

      |t11| <= 1,  |t21| <= 1,  |t22| <= 1
      |h[1,i]| <= 1                   for 3 <= i <= n   (equals |l_i2 t21|)
      |h[j,i]| <= 2^(j-2)             for 2 <= j < i <= n
      |h[n,n]| <= 2^(n-2)             (equals |l_(n,n-1) t_(n-1,n) + t_nn|)
      |t[i,i-1]| <= 2^(i-2),  |t[i,i]| <= 2^(i-1)   for 3 <= i <= n

    For n < 3 only the first group applies.
    """
    m = max_abs(a)
    if m == 0.0:
        raise UndefinedGrowthError("certificate is undefined for the zero matrix")
    n = f.n
    diag = f.T.diag / m
    off = f.T.offdiag / m

    checks: List[CheckRow] = []

    def add(label: str, lhs: float, bound: float):
        lhs = float(lhs)
        checks.append(CheckRow(label, lhs, bound, bound - lhs))

    add("t[1,1]", abs(diag[0]), 1.0)
    if n >= 2:
        add("t[2,1]", abs(off[0]), 1.0)
        add("t[2,2]", abs(diag[1]), 1.0)

    if n >= 3:
        lf = f.L.full()
        h = (f.T.full() @ lf.T) / m  # upper Hessenberg working matrix

        for i in range(3, n + 1):
            add(f"h[1,{i}]", abs(h[0, i - 1]), 1.0)
        for j in range(2, n + 1):
            for i in range(j + 1, n + 1):
                add(f"h[{j},{i}]", abs(h[j - 1, i - 1]), 2.0 ** (j - 2))
        add(f"h[{n},{n}]", abs(h[n - 1, n - 1]), 2.0 ** (n - 2))
        for i in range(3, n + 1):
            add(f"t[{i},{i - 1}]", abs(off[i - 2]), 2.0 ** (i - 2))
            add(f"t[{i},{i}]", abs(diag[i - 1]), 2.0 ** (i - 1))

    all_pass = all(row.margin >= -MARGIN_TOL for row in checks)
    rho = f.T.max_abs() / m
    return GrowthCertificate(rho=rho, checks=checks, all_pass=all_pass, n=n)


def bound_table(n: int) -> BoundTable:
    """The two closed-form bounds; flagged not-tight from dimension 6 on."""
    if n < 2:
        raise ValueError("bound table requires n >= 2")
    return BoundTable(
        n=n,
        higham_bound=4.0 ** (n - 2),
        improved_bound=2.0 ** (n - 1),
        not_tight=n >= 6,
    )


def reference_growth_targets() -> List[Tuple[int, float, str]]:
    """Best published growth values by dimension.

    Cheng's n=3 value is exact; 7.99 and 14.61 are best direct-search
    results, recorded as targets rather than reproducible guarantees.  The
    n=6 value 24 is realized exactly by the built-in extremal example.
    """
    return [
        (3, 4.0, "cheng"),
        (4, 7.99, "cheng"),
        (5, 14.61, "cheng"),
        (6, 24.0, "constructed"),
    ]
