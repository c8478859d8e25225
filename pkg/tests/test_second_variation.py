import numpy as np
import pytest

from cayley_variation.cayley_plane_curvature import CurvatureScale
from cayley_variation.dense_linear import random_orthogonal
from cayley_variation.errors import (
    BadIndex,
    BadStructure,
    CertificatesAbsent,
    ConstraintViolated,
    DimensionMismatch,
)
from cayley_variation.octonionic_lines import ORIGIN_LINE, LineParam, line_basis
from cayley_variation.second_variation import (
    ComplexStructure,
    ProductFrame,
    QuaternionicStructure,
    certificate_commutators,
    certificate_search,
    cluster_eigenvalues,
    complex_integrand,
    invariant_frame_blocks,
    odd_dimension_certificate,
    octonionic_integrand_normal,
    octonionic_integrand_tangent,
    quaternionic_integrand,
    random_frame,
    raw_2ff_sum,
    splitting_check,
)


def unit(rng, m):
    v = rng.standard_normal(m)
    return v / np.linalg.norm(v)


def pad(block, m1, m2, factor):
    block = np.atleast_2d(block)
    out = np.zeros((block.shape[0], m1 + m2))
    if factor == 1:
        out[:, :m1] = block
    else:
        out[:, m1:] = block
    return out


# ------------------------------------------------------------------ frames


def test_frame_validation():
    with pytest.raises(ConstraintViolated):
        ProductFrame(2, 2, [[1.0, 1.0, 0.0, 0.0]])
    with pytest.raises(DimensionMismatch):
        ProductFrame(1, 1, np.eye(2), [[1.0, 0.0]])
    f = ProductFrame(2, 1, [[0.0, 0.0, 1.0]], [[1.0, 0.0, 0.0]])
    assert (f.n, f.d) == (1, 1)
    np.testing.assert_array_equal(f.e2, [[1.0]])
    np.testing.assert_array_equal(f.eta1, [[1.0, 0.0]])


def test_structures():
    j = ComplexStructure.standard(6)
    np.testing.assert_allclose(j.J @ j.J, -np.eye(6))
    with pytest.raises(BadStructure):
        ComplexStructure.standard(5)
    with pytest.raises(BadStructure):
        ComplexStructure(np.eye(2))
    q = QuaternionicStructure.standard(8)
    np.testing.assert_allclose(q[1].J @ q[2].J, q[3].J)
    with pytest.raises(BadIndex):
        q[0]
    with pytest.raises(BadStructure):
        QuaternionicStructure(q[1], q[3], q[2])
    with pytest.raises(BadStructure):
        QuaternionicStructure.standard(6)


# ---------------------------------------------------------------- complex


def test_complex_examples():
    rng = np.random.default_rng(0)
    m1, m2 = 8, 4
    j = ComplexStructure.standard(m1)
    only_second = ProductFrame(m1, m2, pad(np.eye(m2)[:2], m1, m2, 2))
    assert complex_integrand(only_second, j).value == 0.0

    v = unit(rng, m1)
    plane = ProductFrame(m1, m2, pad(np.stack([v, j.J @ v]), m1, m2, 1))
    rep = complex_integrand(plane, j)
    assert abs(rep.value) <= 1e-12
    assert rep.certificates["span_invariant"] and rep.certificates["commutes"]

    single = ProductFrame(m1, m2, pad(v, m1, m2, 1))
    lam = CurvatureScale.complex_projective(m1).lambda_sq
    assert complex_integrand(single, j).value == pytest.approx(-lam)


def test_complex_sign_and_negation():
    rng = np.random.default_rng(1)
    j = ComplexStructure.standard(6)
    for _ in range(200):
        f = random_frame(6, 5, int(rng.integers(1, 8)), 0, rng)
        a = complex_integrand(f, j).value
        assert a <= 1e-12
        assert complex_integrand(f, j.negated()).value == pytest.approx(a, abs=1e-12)


def test_complex_structure_dimension_checked():
    f = random_frame(4, 4, 2, 0, np.random.default_rng(2))
    with pytest.raises(BadStructure):
        complex_integrand(f, ComplexStructure.standard(6))


# ----------------------------------------------------------- quaternionic


def test_quaternionic_examples():
    rng = np.random.default_rng(3)
    m1, m2 = 8, 4
    q = QuaternionicStructure.standard(m1)
    zero = ProductFrame(m1, m2, pad(np.eye(m2)[:1], m1, m2, 2), pad(np.eye(m2)[1:3], m1, m2, 2))
    assert quaternionic_integrand(zero, q, 2).value == 0.0

    v = unit(rng, m1)
    line = np.stack([v, q[1].J @ v, q[2].J @ v, q[3].J @ v])
    f = ProductFrame(m1, m2, pad(line, m1, m2, 1), pad(np.eye(m2)[:3], m1, m2, 2))
    for s in (1, 2, 3):
        rep = quaternionic_integrand(f, q, s)
        assert abs(rep.value) <= 1e-12
        assert rep.certificates["cross_orthogonal"] and rep.certificates["span_invariant"]

    single = ProductFrame(m1, m2, pad(v, m1, m2, 1), pad(q[1].J @ v, m1, m2, 1))
    rep = quaternionic_integrand(single, q, 1)
    assert rep.value == pytest.approx(-4.0 / 3.0)
    assert rep.components["cross"] == pytest.approx(0.0, abs=1e-14)
    # with s = 2 the normal J1 v is J3 (J2 v) up to sign, so the cross term is -lambda^2
    assert quaternionic_integrand(single, q, 2).components["cross"] == pytest.approx(-4.0 / 3.0)


def test_quaternionic_cross_residuals_locate_violations():
    rng = np.random.default_rng(4)
    q = QuaternionicStructure.standard(8)
    for _ in range(100):
        f = random_frame(8, 4, 3, 2, rng)
        rep = quaternionic_integrand(f, q, 1)
        assert rep.value <= 1e-12
        res = rep.residuals["cross"]
        assert res.shape == (2, 2, 3)
        assert rep.components["cross"] == pytest.approx(-4.0 / 3.0 * np.sum(res**2))
    with pytest.raises(BadIndex):
        quaternionic_integrand(f, q, 4)


# ------------------------------------------------------------ octonionic


def test_octonionic_full_line():
    m2 = 8
    tangent = pad(line_basis(ORIGIN_LINE).T, 16, m2, 1)
    normal = pad(np.eye(m2), 16, m2, 2)
    f = ProductFrame(16, m2, tangent, normal)
    rep = octonionic_integrand_tangent(f)
    assert rep.components["projection"] == pytest.approx(64.0)
    assert 8 * rep.components["gram"] == pytest.approx(64.0)
    assert rep.value == pytest.approx(0.0, abs=1e-12)
    assert octonionic_integrand_normal(f).value == 0.0
    assert raw_2ff_sum(f) == 0.0


def test_octonionic_single_vector_matches_raw():
    rng = np.random.default_rng(5)
    e = pad(np.eye(16)[0], 16, 4, 1)
    for _ in range(20):
        rest = np.linalg.qr(np.hstack([e.T, rng.standard_normal((20, 3))]))[0][:, 1:].T
        f = ProductFrame(16, 4, e, rest)
        rep = octonionic_integrand_tangent(f)
        assert rep.components["projection"] - 8 * rep.components["gram"] == pytest.approx(-7.0)
        # a single tangent vector is not a complete frame, so only the sign is shared
        assert rep.value <= -7 * 4.0 + 1e-12


def test_complete_frames_agree_with_raw_sum():
    rng = np.random.default_rng(6)
    for n in (1, 4, 9, 15):
        f = random_frame(16, 3, n, 19 - n, rng)
        raw = raw_2ff_sum(f)
        assert octonionic_integrand_tangent(f).value == pytest.approx(raw, abs=1e-9)
        assert octonionic_integrand_normal(f).value == pytest.approx(raw, abs=1e-9)
        assert raw <= 1e-9


def test_fallback_line_is_irrelevant():
    rng = np.random.default_rng(7)
    tangent = np.zeros((3, 20))
    tangent[0, 16] = 1.0
    tangent[1:, :16] = np.linalg.qr(rng.standard_normal((16, 2)))[0].T
    f = ProductFrame(16, 4, tangent)
    a = octonionic_integrand_tangent(f).value
    for line in (LineParam.infinity(), LineParam.finite(rng.standard_normal(8))):
        assert octonionic_integrand_tangent(f, fallback=line).value == pytest.approx(a, abs=1e-13)


def test_octonionic_requires_sixteen():
    f = random_frame(8, 8, 2, 2, np.random.default_rng(8))
    for fn in (octonionic_integrand_tangent, octonionic_integrand_normal, raw_2ff_sum):
        with pytest.raises(DimensionMismatch):
            fn(f)


def test_rotation_invariance():
    rng = np.random.default_rng(9)
    j = ComplexStructure.standard(16)
    q = QuaternionicStructure.standard(16)
    for _ in range(20):
        f = random_frame(16, 4, 5, 3, rng)
        g = f.rotate_tangent(random_orthogonal(5, int(rng.integers(1 << 62))))
        assert complex_integrand(g, j).value == pytest.approx(complex_integrand(f, j).value, abs=1e-10)
        assert quaternionic_integrand(g, q, 3).value == pytest.approx(quaternionic_integrand(f, q, 3).value, abs=1e-10)
        assert octonionic_integrand_tangent(g).value == pytest.approx(octonionic_integrand_tangent(f).value, abs=1e-10)


# -------------------------------------------------------------- splitting


def test_splitting_product_frame():
    f = ProductFrame(2, 2, [[1, 0, 0, 0], [0, 0, 1, 0]], [[0, 1, 0, 0], [0, 0, 0, 1]])
    v = splitting_check(f)
    assert v.f_invariant and v.cross_orthogonal


def test_splitting_half_example():
    s = 1 / np.sqrt(2)
    f = ProductFrame(2, 2, [[s, 0, s, 0]], [[s, 0, -s, 0]])
    v = splitting_check(f)
    assert v.first_factor[0, 0] == pytest.approx(0.5)
    assert v.second_factor[0, 0] == pytest.approx(-0.5)
    # orthonormality forces the two conditions to coincide
    assert not v.f_invariant and not v.cross_orthogonal


def test_splitting_symmetry_and_equivalence():
    rng = np.random.default_rng(10)
    for _ in range(500):
        v = splitting_check(random_frame(3, 4, 2, 3, rng))
        assert v.symmetry_residual <= 1e-12
        assert v.f_invariant == v.cross_orthogonal


# ---------------------------------------------------------- odd dimension


def test_cluster_eigenvalues():
    assert cluster_eigenvalues([1.0, 0.0, 1.0 + 1e-9, 0.5]) == [(pytest.approx(1.0), 2), (0.5, 1), (0.0, 1)]


def test_odd_dimension_even_plane():
    rng = np.random.default_rng(11)
    j1, j2 = ComplexStructure.standard(4), ComplexStructure.standard(4)
    v = unit(rng, 4)
    x1 = np.stack([v, j1.J @ v], axis=1)
    verdict = odd_dimension_certificate(x1, np.zeros((4, 2)), j1, j2)
    assert verdict.status == "even" and verdict.certified
    assert verdict.gram1_table == [(pytest.approx(1.0), 2)]


def test_odd_dimension_forced_single_column():
    j = ComplexStructure.standard(4)
    x1 = np.array([[1.0], [0.0], [0.0], [0.0]])
    with pytest.raises(CertificatesAbsent):
        odd_dimension_certificate(x1, np.zeros((4, 1)), j, j)
    verdict = odd_dimension_certificate(x1, np.zeros((4, 1)), j, j, assume_certificates=True)
    assert verdict.status == "contradiction"
    assert not verdict.certified
    assert not verdict.checks["gram1_nonzero_even"]


def test_odd_dimension_precondition():
    j = ComplexStructure.standard(2)
    with pytest.raises(ConstraintViolated):
        odd_dimension_certificate(np.eye(2), np.eye(2), j, j)


def test_constructed_invariant_frames_are_even():
    rng = np.random.default_rng(12)
    j1, j2 = ComplexStructure.standard(6), ComplexStructure.standard(8)
    for n in (2, 4, 6):
        for _ in range(20):
            x1, x2 = invariant_frame_blocks(6, 8, n, rng)
            verdict = odd_dimension_certificate(x1, x2, j1, j2)
            assert verdict.certified and verdict.status == "even"
    with pytest.raises(DimensionMismatch):
        invariant_frame_blocks(6, 8, 3, rng)


def test_certificate_search_is_batch_independent():
    a = certificate_search(4, 4, 3, 500, seed=7, batch=64)
    b = certificate_search(4, 4, 3, 500, seed=7, batch=500)
    assert a == b
    assert a.hits == 0 and a.min_commutator > 1e-3
    np.testing.assert_array_equal(
        certificate_commutators(4, 4, 3, 7, 10, 20), certificate_commutators(4, 4, 3, 7, 0, 20)[10:]
    )
