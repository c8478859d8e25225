import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from cayley_variation.division_algebra import (
    MULT_TABLE,
    Octonion,
    basis,
    check_identities,
    conjugate,
    identity_report,
    left_mult_matrix,
    norm_residual,
    oct_inner,
    oct_inverse,
    oct_mul,
    oct_norm,
    right_mult_matrix,
    structure_constants,
)
from cayley_variation.errors import IdentityViolation, ZeroDivisor


# Hamilton product written out by hand, then doubled once.  Independent of the
# recursive table construction in the package.
def hamilton(p, q):
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return np.array([
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ])


def qconj(p):
    return p * np.array([1.0, -1.0, -1.0, -1.0])


def oracle_mul(x, y):
    a, b = x[:4], x[4:]
    c, d = y[:4], y[4:]
    return np.concatenate([hamilton(a, c) - hamilton(qconj(d), b), hamilton(d, a) + hamilton(b, qconj(c))])


finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
octs = arrays(np.float64, 8, elements=finite)


def test_table_matches_hand_written_doubling():
    rng = np.random.default_rng(0)
    for _ in range(200):
        x, y = rng.standard_normal((2, 8))
        np.testing.assert_allclose(oct_mul(x, y), oracle_mul(x, y), atol=1e-13)


def test_quaternion_table_is_hamilton():
    t = structure_constants(4)
    e = np.eye(4)
    for i in range(4):
        for j in range(4):
            np.testing.assert_array_equal(t[i, j], hamilton(e[i], e[j]))


def test_structure_constants_rejects_non_power_of_two():
    with pytest.raises(ValueError):
        structure_constants(6)


def test_unit_and_imaginary_squares():
    a = np.arange(8.0)
    np.testing.assert_array_equal(oct_mul(basis(0), a), a)
    np.testing.assert_array_equal(oct_mul(a, basis(0)), a)
    for s in range(1, 8):
        np.testing.assert_array_equal(oct_mul(basis(s), basis(s)), -basis(0))


def test_frozen_products():
    np.testing.assert_array_equal(oct_mul(basis(1), basis(2)), basis(3))
    np.testing.assert_array_equal(oct_mul(basis(1), basis(4)), basis(5))
    np.testing.assert_array_equal(oct_mul(basis(2), basis(4)), basis(6))
    np.testing.assert_array_equal(oct_mul(basis(3), basis(5)), -basis(6))


def test_imaginary_units_anticommute():
    for s in range(1, 8):
        for t in range(1, 8):
            if s != t:
                np.testing.assert_array_equal(MULT_TABLE[s, t], -MULT_TABLE[t, s])


def test_not_associative():
    i1, i2, i4 = basis(1), basis(2), basis(4)
    lhs = oct_mul(oct_mul(i1, i2), i4)
    rhs = oct_mul(i1, oct_mul(i2, i4))
    np.testing.assert_array_equal(lhs, -rhs)


def test_conjugate():
    np.testing.assert_array_equal(conjugate(basis(0)), basis(0))
    np.testing.assert_array_equal(conjugate(basis(3)), -basis(3))
    rng = np.random.default_rng(1)
    a, b = rng.standard_normal((2, 10_000, 8))
    np.testing.assert_allclose(conjugate(oct_mul(a, b)), oct_mul(conjugate(b), conjugate(a)), atol=1e-12)


def test_inner_product():
    assert oct_inner(basis(0), basis(0)) == 1.0
    for s in range(8):
        for t in range(8):
            half = 0.5 * (oct_mul(conjugate(basis(s)), basis(t)) + oct_mul(conjugate(basis(t)), basis(s)))
            assert half[0] == (1.0 if s == t else 0.0)


def test_inverse_examples():
    np.testing.assert_array_equal(oct_inverse(basis(0)), basis(0))
    np.testing.assert_allclose(oct_inverse(2.0 * basis(5)), -0.5 * basis(5))
    with pytest.raises(ZeroDivisor):
        oct_inverse(np.zeros(8))


def test_inverse_loop():
    rng = np.random.default_rng(2)
    a, b = rng.standard_normal((2, 1000, 8))
    ainv = oct_inverse(a)
    np.testing.assert_allclose(oct_mul(a, ainv), np.broadcast_to(basis(0), a.shape), atol=1e-12)
    np.testing.assert_allclose(oct_mul(ainv, a), np.broadcast_to(basis(0), a.shape), atol=1e-12)
    np.testing.assert_allclose(oct_mul(oct_mul(b, ainv), a), b, atol=1e-11)


def test_alternativity_and_moufang():
    rng = np.random.default_rng(3)
    a, b, c = rng.standard_normal((3, 1000, 8))
    np.testing.assert_allclose(oct_mul(a, oct_mul(a, b)), oct_mul(oct_mul(a, a), b), atol=1e-11)
    np.testing.assert_allclose(oct_mul(oct_mul(b, a), a), oct_mul(b, oct_mul(a, a)), atol=1e-11)
    # Moufang: (ab)(ca) = a((bc)a)
    lhs = oct_mul(oct_mul(a, b), oct_mul(c, a))
    rhs = oct_mul(a, oct_mul(oct_mul(b, c), a))
    np.testing.assert_allclose(lhs, rhs, atol=1e-10)


def test_multiplication_matrices():
    rng = np.random.default_rng(4)
    m, u = rng.standard_normal((2, 8))
    np.testing.assert_allclose(left_mult_matrix(m) @ u, oct_mul(m, u), atol=1e-14)
    np.testing.assert_allclose(right_mult_matrix(m) @ u, oct_mul(u, m), atol=1e-14)
    lm = left_mult_matrix(m)
    np.testing.assert_allclose(lm.T @ lm, (m @ m) * np.eye(8), atol=1e-13)


def test_identities_zero_and_orthogonal_basis():
    z = np.zeros(8)
    rep = check_identities(z, z, z, z, z, z)
    assert rep.left == rep.right == rep.four_term == 0.0
    m = np.random.default_rng(5).standard_normal(8)
    for s in range(8):
        for t in range(8):
            rep = check_identities(m, basis(s), m, basis(t), m, m)
            assert rep.four_term <= rep.four_term_bound
            assert oct_inner(oct_mul(m, basis(s)), oct_mul(m, basis(t))) == pytest.approx((m @ m) * (s == t), abs=1e-13)


def test_identities_batched():
    rng = np.random.default_rng(6)
    ops = rng.standard_normal((6, 10_000, 8))
    rep = check_identities(*ops)
    assert rep.max_normalized <= 1.0


def test_broken_table_is_detected(monkeypatch):
    import cayley_variation.division_algebra as da

    a, b, c, d, x, y = np.random.default_rng(7).standard_normal((6, 8))
    assert identity_report(a, b, c, d, x, y).max_normalized < 1.0
    broken = MULT_TABLE.copy()
    broken[1, 2] *= -1.0
    monkeypatch.setattr(da, "_FLAT_TABLE", broken.reshape(64, 8))
    with pytest.raises(IdentityViolation) as info:
        check_identities(a, b, c, d, x, y)
    assert info.value.residual > 1e-6


@settings(max_examples=200, deadline=None)
@given(octs, octs)
def test_norm_multiplicative(a, b):
    assert norm_residual(a, b) <= 1e-12 * (1 + oct_norm(a) * oct_norm(b))


@settings(max_examples=200, deadline=None)
@given(octs, octs, octs)
def test_adjoint_identities(a, x, y):
    lhs = oct_inner(oct_mul(a, x), y)
    rhs = oct_inner(x, oct_mul(conjugate(a), y))
    assert abs(lhs - rhs) <= 1e-12 * (1 + oct_norm(a) * oct_norm(x) * oct_norm(y))


def test_octonion_wrapper():
    one = Octonion.real(1.0)
    i1 = Octonion.unit(1)
    assert i1 * i1 == Octonion.real(-1.0)
    assert (i1 * Octonion.unit(2)) == Octonion.unit(3)
    assert 2 * i1 == Octonion(2 * basis(1))
    assert (one + i1 - i1) == one
    assert i1.conj() == -i1
    assert Octonion(np.full(8, 0.5)).norm() == pytest.approx(np.sqrt(2.0))
    assert Octonion.unit(5).inverse() == -Octonion.unit(5)
    assert hash(Octonion.unit(3)) == hash(Octonion.unit(3))
    with pytest.raises(ValueError):
        Octonion([1.0, 2.0])
    with pytest.raises(ValueError):
        Octonion.unit(1).coeffs[0] = 2.0
