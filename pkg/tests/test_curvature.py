import numpy as np
import pytest

from cayley_variation.cayley_plane_curvature import (
    CurvatureScale,
    curvature_diag,
    curvature_full,
    gauss_2ff_inner,
    sectional_curvature,
)
from cayley_variation.division_algebra import basis
from cayley_variation.octonionic_lines import cayley, line_basis, LineParam

ZERO = np.zeros(8)
X = cayley(basis(0), ZERO)
Y_LINE = cayley(basis(1), ZERO)
Y_CROSS = cayley(ZERO, basis(0))


def unit(rng, *shape):
    v = rng.standard_normal(shape + (16,))
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def test_hand_examples():
    assert curvature_full(X, Y_LINE, X, Y_LINE) == pytest.approx(-4.0)
    assert curvature_full(X, Y_CROSS, X, Y_CROSS) == pytest.approx(-1.0)
    assert curvature_diag(X, Y_LINE) == pytest.approx(-4.0)
    assert curvature_diag(X, Y_CROSS) == pytest.approx(-1.0)
    assert sectional_curvature(X, Y_LINE) == pytest.approx(4.0)
    assert sectional_curvature(X, Y_CROSS) == pytest.approx(1.0)
    assert curvature_diag(X, X) == 0.0
    assert curvature_full(X, X, Y_LINE, Y_CROSS) == 0.0


def test_gauss_examples():
    assert gauss_2ff_inner(X, X, X, X) == pytest.approx(4.0)
    assert gauss_2ff_inner(X, Y_CROSS, X, Y_CROSS) == pytest.approx(1.0)
    scale = CurvatureScale(2.5)
    assert gauss_2ff_inner(X, Y_CROSS, X, Y_CROSS, scale) == pytest.approx(2.5 / 4)


def test_isotropy():
    rng = np.random.default_rng(0)
    x = unit(rng, 1000)
    np.testing.assert_allclose(gauss_2ff_inner(x, x, x, x), 4.0, atol=1e-10)


def test_symmetries_and_bianchi():
    rng = np.random.default_rng(1)
    x, y, z, w = unit(rng, 4, 2000)
    r = curvature_full(x, y, z, w)
    np.testing.assert_allclose(curvature_full(y, x, z, w), -r, atol=1e-10)
    np.testing.assert_allclose(curvature_full(x, y, w, z), -r, atol=1e-10)
    np.testing.assert_allclose(curvature_full(z, w, x, y), r, atol=1e-10)
    bianchi = r + curvature_full(y, z, x, w) + curvature_full(z, x, y, w)
    np.testing.assert_allclose(bianchi, 0.0, atol=1e-10)
    np.testing.assert_allclose(curvature_diag(x, y), curvature_full(x, y, x, y), atol=1e-10)


def test_multilinear():
    rng = np.random.default_rng(2)
    x, x2, y, z, w = rng.standard_normal((5, 16))
    lhs = curvature_full(2.0 * x - 3.0 * x2, y, z, w)
    rhs = 2.0 * curvature_full(x, y, z, w) - 3.0 * curvature_full(x2, y, z, w)
    assert lhs == pytest.approx(rhs, abs=1e-10)


def test_pinching_range():
    rng = np.random.default_rng(3)
    q, _ = np.linalg.qr(rng.standard_normal((20000, 16, 2)))
    k = sectional_curvature(q[..., 0], q[..., 1])
    assert k.min() >= 1.0 - 1e-8
    assert k.max() <= 4.0 + 1e-8


def test_planes_in_a_line_have_maximal_curvature():
    rng = np.random.default_rng(4)
    b = line_basis(LineParam.finite(rng.standard_normal(8)))
    u, v = np.linalg.qr(b @ rng.standard_normal((8, 2)))[0].T
    assert sectional_curvature(u, v) == pytest.approx(4.0, abs=1e-10)


def test_scales():
    assert CurvatureScale().lambda_sq == 4.0
    assert CurvatureScale.complex_projective(8).lambda_sq == pytest.approx(1.6)
    assert CurvatureScale.quaternionic_projective(8).lambda_sq == pytest.approx(4.0 / 3.0)
    for bad in (0.0, -1.0, float("inf"), float("nan")):
        with pytest.raises(ValueError):
            CurvatureScale(bad)
    assert curvature_diag(X, Y_LINE, CurvatureScale(1.0)) == pytest.approx(-1.0)
