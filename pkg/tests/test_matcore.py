import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _helpers import assemble_triple_loop, rand_sym
from ltlt.aasen import factorize
from ltlt.extremal import extremal_matrix
from ltlt.matcore import (
    PermutationVector,
    SymmetricMatrix,
    SymmetricTridiagonal,
    UnitLowerTriangular,
    assemble,
    max_abs,
    permute_sym,
    residual,
)


def test_max_abs_identity():
    assert max_abs(SymmetricMatrix(np.eye(3))) == 1.0


def test_max_abs_zero():
    assert max_abs(SymmetricMatrix(np.zeros((2, 2)))) == 0.0


def test_max_abs_extremal_n6():
    assert max_abs(extremal_matrix(6, 0.4).A) == 1.0


def test_max_abs_scaling():
    rng = np.random.default_rng(3)
    a = rand_sym(rng, 5)
    for c in (-3.5, 0.25, 1e3):
        assert max_abs(SymmetricMatrix(a.entries * c)) == abs(c) * max_abs(a)


def test_permute_identity():
    rng = np.random.default_rng(0)
    a = rand_sym(rng, 4)
    out = permute_sym(a, PermutationVector.identity(4))
    np.testing.assert_array_equal(out.entries, a.entries)


def test_permute_2x2_swap():
    a = SymmetricMatrix(np.array([[1.0, 2.0], [2.0, 3.0]]))
    out = permute_sym(a, PermutationVector(np.array([1, 0])))
    np.testing.assert_array_equal(out.entries, [[3.0, 2.0], [2.0, 1.0]])


def test_permute_roundtrip_exact():
    rng = np.random.default_rng(1)
    a = rand_sym(rng, 5)
    p = PermutationVector(rng.permutation(5))
    back = permute_sym(permute_sym(a, p), p.inverse())
    assert np.array_equal(back.entries, a.entries)


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 8), st.integers(0, 2**31))
def test_permute_roundtrip_property(n, seed):
    rng = np.random.default_rng(seed)
    a = rand_sym(rng, n)
    p = PermutationVector(rng.permutation(n))
    back = permute_sym(permute_sym(a, p), p.inverse())
    assert np.array_equal(back.entries, a.entries)


def test_permute_dim_mismatch():
    a = SymmetricMatrix(np.eye(3))
    with pytest.raises(ValueError):
        permute_sym(a, PermutationVector.identity(4))


def test_assemble_identity():
    out = assemble(UnitLowerTriangular.identity(2), SymmetricTridiagonal([1.0, 1.0], [0.0]))
    np.testing.assert_array_equal(out.entries, np.eye(2))


def test_assemble_extremal_n4():
    ex = extremal_matrix(4, 0.5)
    out = assemble(ex.refL, ex.refT)
    assert np.max(np.abs(out.entries - ex.A.entries)) <= 1e-14


def test_assemble_matches_triple_loop():
    rng = np.random.default_rng(5)
    n = 6
    strict = np.tril(rng.uniform(-1, 1, (n, n)), -1)
    strict[1:, 0] = 0.0
    lower = UnitLowerTriangular(strict)
    tri = SymmetricTridiagonal(rng.uniform(-2, 2, n), rng.uniform(-2, 2, n - 1))
    got = assemble(lower, tri).entries
    want = assemble_triple_loop(lower.full(), tri.diag, tri.offdiag)
    assert np.max(np.abs(got - want)) <= 1e-13


def test_assemble_exactly_symmetric():
    rng = np.random.default_rng(6)
    n = 7
    strict = np.tril(rng.uniform(-1, 1, (n, n)), -1)
    strict[1:, 0] = 0.0
    out = assemble(
        UnitLowerTriangular(strict),
        SymmetricTridiagonal(rng.uniform(-2, 2, n), rng.uniform(-2, 2, n - 1)),
    )
    assert np.array_equal(out.entries, out.entries.T)


def test_residual_trivial_2x2():
    a = SymmetricMatrix(np.array([[2.0, -1.0], [-1.0, 0.5]]))
    r = residual(
        a,
        PermutationVector.identity(2),
        UnitLowerTriangular.identity(2),
        SymmetricTridiagonal(np.diag(a.entries), np.array([a.entries[1, 0]])),
    )
    assert r == 0.0


def test_residual_extremal_n5():
    ex = extremal_matrix(5, 0.25)
    assert residual(ex.A, ex.refP, ex.refL, ex.refT) <= 1e-13


def test_residual_random_20x20():
    rng = np.random.default_rng(7)
    a = rand_sym(rng, 20)
    f = factorize(a)
    assert residual(a, f.p, f.L, f.T) <= 1e-12 * 20 * max_abs(a)


def test_symmetric_matrix_rejects_asymmetry():
    m = np.array([[1.0, 2.0], [2.0 + 1e-6, 1.0]])
    with pytest.raises(ValueError):
        SymmetricMatrix.from_full(m, tol=1e-9)
    fixed = SymmetricMatrix.from_full(m, tol=1e-5)
    assert np.array_equal(fixed.entries, fixed.entries.T)


def test_unit_lower_invariants():
    with pytest.raises(ValueError):
        UnitLowerTriangular(np.array([[0.0, 0.0], [1.5, 0.0]]))  # multiplier > 1
    bad_first = np.zeros((3, 3))
    bad_first[1, 0] = 0.5
    with pytest.raises(ValueError):
        UnitLowerTriangular(bad_first)


def test_permutation_rejects_non_bijection():
    with pytest.raises(ValueError):
        PermutationVector(np.array([0, 0, 2]))
