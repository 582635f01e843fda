import numpy as np
import pytest

from _helpers import rand_sym
from ltlt.aasen import AasenFactors, factorize
from ltlt.extremal import extremal_matrix
from ltlt.growth import (
    UndefinedGrowthError,
    bound_table,
    growth_certificate,
    growth_factor,
    reference_growth_targets,
)
from ltlt.matcore import SymmetricMatrix


def _ref_factors(ex):
    return AasenFactors(p=ex.refP, L=ex.refL, T=ex.refT)


def test_growth_identity():
    a = SymmetricMatrix(np.eye(5))
    assert growth_factor(a, factorize(a)) == 1.0


def test_growth_extremal_n4():
    a = extremal_matrix(4, 0.01).A
    assert abs(growth_factor(a, factorize(a)) - 7.98) <= 1e-10


def test_growth_extremal_n6():
    a = extremal_matrix(6, 0.4).A
    assert abs(growth_factor(a, factorize(a)) - 24.0) <= 1e-10


def test_growth_zero_matrix_rejected():
    a = SymmetricMatrix(np.zeros((3, 3)))
    f = factorize(a)
    with pytest.raises(UndefinedGrowthError):
        growth_factor(a, f)
    with pytest.raises(UndefinedGrowthError):
        growth_certificate(a, f)


def test_certificate_identity_all_pass():
    a = SymmetricMatrix(np.eye(6))
    cert = growth_certificate(a, factorize(a))
    assert cert.all_pass
    # the unit diagonal sits exactly on the |t11|, |t22| bounds; no row dips below
    assert all(row.margin >= 0 for row in cert.checks)
    assert cert.rho == 1.0


def test_certificate_small_delta_margin():
    # reference factors at delta -> 0+: the trailing diagonal bound margin
    # closes like 12 * delta
    ex = extremal_matrix(5, 1e-6)
    cert = growth_certificate(ex.A, _ref_factors(ex))
    assert cert.all_pass
    t55 = next(r for r in cert.checks if r.label == "t[5,5]")
    assert t55.bound == 16.0
    assert abs(t55.margin - 12e-6) <= 1e-9
    t54 = next(r for r in cert.checks if r.label == "t[5,4]")
    assert abs(t54.margin - 4e-6) <= 1e-9


def test_certificate_row_count_structure():
    # n rows of T bounds: 3 leading + 2(n-2); H rows: (n-2) + (n-1)(n-2)/2 + 1
    for n in (3, 6, 10):
        a = SymmetricMatrix(np.eye(n))
        cert = growth_certificate(a, factorize(a))
        expect = 3 + 2 * (n - 2) + (n - 2) + (n - 1) * (n - 2) // 2 + 1
        assert len(cert.checks) == expect


def test_certificate_n2_leading_rows_only():
    a = SymmetricMatrix(np.array([[1.0, -0.5], [-0.5, 0.25]]))
    cert = growth_certificate(a, factorize(a))
    assert [r.label for r in cert.checks] == ["t[1,1]", "t[2,1]", "t[2,2]"]
    assert cert.all_pass


def test_certificate_random_sweep():
    rng = np.random.default_rng(200)
    for _ in range(200):
        n = int(rng.integers(3, 13))
        a = rand_sym(rng, n)
        f = factorize(a)
        cert = growth_certificate(a, f)
        assert cert.all_pass
        # certificate dominance: passing rows cap the growth factor
        assert cert.rho <= 2.0 ** (n - 1) + 1e-9


def test_growth_scale_invariance():
    rng = np.random.default_rng(21)
    a = rand_sym(rng, 8)
    g = growth_factor(a, factorize(a))
    for c in (-1e3, 1e-3, 7.0):
        b = SymmetricMatrix(a.entries * c)
        gb = growth_factor(b, factorize(b))
        assert abs(gb - g) <= 1e-12 * g


def test_bound_table_values():
    t3 = bound_table(3)
    assert (t3.higham_bound, t3.improved_bound, t3.not_tight) == (4.0, 4.0, False)
    t4 = bound_table(4)
    assert (t4.higham_bound, t4.improved_bound) == (16.0, 8.0)
    t6 = bound_table(6)
    assert (t6.higham_bound, t6.improved_bound, t6.not_tight) == (256.0, 32.0, True)


def test_bound_table_monotone_doubling():
    for n in range(2, 20):
        assert bound_table(n + 1).improved_bound == 2.0 * bound_table(n).improved_bound
        if n >= 3:
            assert bound_table(n).improved_bound <= bound_table(n).higham_bound


def test_bound_table_domain():
    with pytest.raises(ValueError):
        bound_table(1)


def test_reference_targets():
    targets = {n: (v, src) for n, v, src in reference_growth_targets()}
    assert targets[3] == (4.0, "cheng")
    assert targets[4] == (7.99, "cheng")
    assert targets[5] == (14.61, "cheng")
    assert targets[6] == (24.0, "constructed")
