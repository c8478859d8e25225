"""Summed second-variation integrands for minimal submanifolds of products.

A :class:`ProductFrame` holds orthonormal tangent vectors ``e_j`` and normal
vectors ``eta_k`` of ``R^{m1} + R^{m2}`` as rows.  Superscripts 1 and 2 in the
docstrings denote the factor components, e.g. ``e1`` is the ``n x m1`` block.

The core sums are written against plain arrays with arbitrary leading batch
axes (:func:`complex_values` and friends) so campaigns can evaluate thousands of
frames at once; the public functions wrap them for a single frame.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .cayley_plane_curvature import CurvatureScale, gauss_2ff_inner
from .dense_linear import sym_eig
from .division_algebra import structure_constants
from .errors import (
    BadIndex,
    BadStructure,
    CertificatesAbsent,
    ConstraintViolated,
    DimensionMismatch,
)
from .octonionic_lines import CAYLEY_DIM, ORIGIN_LINE, LineParam, weighted_projection_sum
from .tolerance import DEFAULT_TOL, Tolerance
from .trace_inequalities import key_defect

FRAME_TOL = 1e-9
CERTIFICATE_TOL = 1e-6
CLUSTER_TOL = 1e-7


def _gram(a, b):
    """``a @ b^T`` on the last two axes."""
    return a @ np.swapaxes(b, -1, -2)


@dataclass(frozen=True, eq=False)
class ProductFrame:
    """Orthonormal tangent (``n`` rows) and normal (``d`` rows) vectors of ``R^{m1+m2}``."""

    m1: int
    m2: int
    tangent: np.ndarray
    normal: np.ndarray = field(default=None)

    def __post_init__(self):
        m = self.m1 + self.m2
        if self.m1 < 0 or self.m2 < 0 or m == 0:
            raise DimensionMismatch(f"bad factor dimensions ({self.m1}, {self.m2})")
        tangent = np.array(self.tangent, dtype=float).reshape(-1, m)
        normal = (
            np.zeros((0, m)) if self.normal is None else np.array(self.normal, dtype=float).reshape(-1, m)
        )
        if tangent.shape[0] + normal.shape[0] > m:
            raise DimensionMismatch("n + d exceeds m1 + m2")
        rows = np.vstack([tangent, normal])
        if np.abs(rows @ rows.T - np.eye(rows.shape[0])).max(initial=0.0) > FRAME_TOL:
            raise ConstraintViolated("tangent and normal vectors are not orthonormal")
        tangent.setflags(write=False)
        normal.setflags(write=False)
        object.__setattr__(self, "tangent", tangent)
        object.__setattr__(self, "normal", normal)

    @property
    def n(self) -> int:
        return self.tangent.shape[0]

    @property
    def d(self) -> int:
        return self.normal.shape[0]

    @property
    def e1(self) -> np.ndarray:
        return self.tangent[:, : self.m1]

    @property
    def e2(self) -> np.ndarray:
        return self.tangent[:, self.m1 :]

    @property
    def eta1(self) -> np.ndarray:
        return self.normal[:, : self.m1]

    @property
    def eta2(self) -> np.ndarray:
        return self.normal[:, self.m1 :]

    @classmethod
    def from_components(cls, e1, e2, eta1=None, eta2=None) -> "ProductFrame":
        e1 = np.atleast_2d(np.asarray(e1, dtype=float))
        e2 = np.atleast_2d(np.asarray(e2, dtype=float))
        m1, m2 = e1.shape[1], e2.shape[1]
        if eta1 is None:
            normal = np.zeros((0, m1 + m2))
        else:
            normal = np.hstack([np.atleast_2d(eta1), np.atleast_2d(eta2)])
        return cls(m1, m2, np.hstack([e1, e2]), normal)

    def rotate_tangent(self, q) -> "ProductFrame":
        """Replace the tangent rows by ``q @ tangent`` for an orthogonal ``n x n`` ``q``."""
        return ProductFrame(self.m1, self.m2, np.asarray(q) @ self.tangent, self.normal)


def random_frames(m1: int, m2: int, n: int, d: int, rng: np.random.Generator, count: int | None = None):
    """Haar-random orthonormal frames as ``(tangent, normal)`` arrays.

    With ``count=None`` the arrays are ``(n, m)`` and ``(d, m)``; otherwise
    they carry a leading axis of length ``count``.
    """
    m = m1 + m2
    if n + d > m:
        raise DimensionMismatch("n + d exceeds m1 + m2")
    shape = (m, n + d) if count is None else (count, m, n + d)
    q, r = np.linalg.qr(rng.standard_normal(shape))
    signs = np.sign(np.diagonal(r, axis1=-2, axis2=-1))
    signs[signs == 0] = 1.0
    rows = np.swapaxes(q * signs[..., None, :], -1, -2)
    return rows[..., :n, :], rows[..., n:, :]


def random_frame(m1: int, m2: int, n: int, d: int, rng: np.random.Generator) -> ProductFrame:
    tangent, normal = random_frames(m1, m2, n, d, rng)
    return ProductFrame(m1, m2, tangent, normal)


# ----------------------------------------------------------------- structures


@dataclass(frozen=True, eq=False)
class ComplexStructure:
    """Orthogonal ``J`` with ``J^2 = -Id``."""

    J: np.ndarray

    def __post_init__(self):
        j = np.array(self.J, dtype=float)
        if j.ndim != 2 or j.shape[0] != j.shape[1]:
            raise BadStructure(f"J must be square, got shape {j.shape}")
        eye = np.eye(j.shape[0])
        if np.abs(j.T @ j - eye).max() > FRAME_TOL or np.abs(j @ j + eye).max() > FRAME_TOL:
            raise BadStructure("J must satisfy J^T J = Id and J^2 = -Id")
        j.setflags(write=False)
        object.__setattr__(self, "J", j)

    @property
    def dim(self) -> int:
        return self.J.shape[0]

    @classmethod
    def standard(cls, m: int) -> "ComplexStructure":
        """``[[0, -Id], [Id, 0]]`` on ``R^m``, ``m`` even."""
        if m <= 0 or m % 2:
            raise BadStructure(f"a complex structure needs even dimension, got {m}")
        k = m // 2
        j = np.zeros((m, m))
        j[:k, k:] = -np.eye(k)
        j[k:, :k] = np.eye(k)
        return cls(j)

    def negated(self) -> "ComplexStructure":
        return ComplexStructure(-self.J)


@dataclass(frozen=True, eq=False)
class QuaternionicStructure:
    """Three complex structures with ``J1 J2 = J3``, ``J2 J3 = J1``, ``J3 J1 = J2``."""

    J1: ComplexStructure
    J2: ComplexStructure
    J3: ComplexStructure

    def __post_init__(self):
        a, b, c = self.J1.J, self.J2.J, self.J3.J
        if not (a.shape == b.shape == c.shape):
            raise BadStructure("J1, J2, J3 must act on the same space")
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            if np.abs(x @ y - z).max() > FRAME_TOL:
                raise BadStructure("quaternion relations J1 J2 = J3 (and cyclic) fail")

    @property
    def dim(self) -> int:
        return self.J1.dim

    def __getitem__(self, s: int) -> ComplexStructure:
        if s not in (1, 2, 3):
            raise BadIndex(f"s must be 1, 2 or 3, got {s!r}")
        return (self.J1, self.J2, self.J3)[s - 1]

    @classmethod
    def standard(cls, m: int) -> "QuaternionicStructure":
        """Left multiplication by ``i, j, k`` on ``H^{m/4}``."""
        if m <= 0 or m % 4:
            raise BadStructure(f"a quaternionic structure needs dimension divisible by 4, got {m}")
        table = structure_constants(4)
        eye = np.eye(m // 4)
        mats = [np.kron(np.einsum("sk->ks", table[s]), eye) for s in (1, 2, 3)]
        return cls(*(ComplexStructure(x) for x in mats))


# ----------------------------------------------------------------- integrands


@dataclass(frozen=True)
class VariationReport:
    """``value`` is the summed integrand, already multiplied by ``lambda^2``."""

    value: float
    components: dict
    certificates: dict
    residuals: dict = field(default_factory=dict)


def _key_sums(e1, j):
    """``sum <J e_j, e_i>^2 - sum <e_j, e_i>^2`` over the rows of ``e1``."""
    twisted = _gram(e1, e1 @ j.T)
    gram = _gram(e1, e1)
    return np.sum(twisted * twisted, axis=(-2, -1)) - np.sum(gram * gram, axis=(-2, -1))


def complex_values(e1, j, lambda_sq: float):
    """Batched complex integrand on tangent blocks ``(..., n, m1)``."""
    return lambda_sq * _key_sums(np.asarray(e1, dtype=float), np.asarray(j, dtype=float))


def _check_structure(dim: int, m1: int):
    if dim != m1:
        raise BadStructure(f"structure acts on R^{dim}, factor 1 is R^{m1}")


def complex_integrand(
    frame: ProductFrame,
    J1: ComplexStructure,
    scale: CurvatureScale | None = None,
    tol: Tolerance = DEFAULT_TOL,
) -> VariationReport:
    """``lambda^2 * sum_ij (<J e_j^1, e_i^1>^2 - <e_j^1, e_i^1>^2)``; never positive.

    The default scale is the holomorphic curvature ``2 m1 / (m1 + 2)``.
    """
    _check_structure(J1.dim, frame.m1)
    scale = scale or CurvatureScale.complex_projective(frame.m1)
    value = float(complex_values(frame.e1, J1.J, scale.lambda_sq))
    if frame.n and np.any(frame.e1):
        report = key_defect(J1.J, frame.e1.T, tol)
        commutator, invariant = report.commutator_norm, report.span_invariant
    else:
        commutator, invariant = 0.0, True
    return VariationReport(
        value=value,
        components={"key": value},
        certificates={"span_invariant": invariant, "commutes": commutator <= CERTIFICATE_TOL},
        residuals={"commutator_norm": commutator},
    )


def quaternionic_values(e1, eta1, structure: QuaternionicStructure, s: int, lambda_sq: float):
    """Batched ``(value, cross, key, cross_residuals)`` of the quaternionic integrand.

    ``cross_residuals[..., t, k, j] = <J_t eta_k^1, e_j^1>`` for the two
    indices ``t != s`` in increasing order.
    """
    js = structure[s].J
    others = [structure[t].J for t in (1, 2, 3) if t != s]
    e1 = np.asarray(e1, dtype=float)
    eta1 = np.asarray(eta1, dtype=float)
    residuals = np.stack([_gram(eta1 @ jt.T, e1) for jt in others], axis=-3)
    cross = -lambda_sq * np.sum(residuals * residuals, axis=(-3, -2, -1))
    key = lambda_sq * _key_sums(e1, js)
    return cross + key, cross, key, residuals


def quaternionic_integrand(
    frame: ProductFrame,
    Q: QuaternionicStructure,
    s: int,
    scale: CurvatureScale | None = None,
    tol: Tolerance = DEFAULT_TOL,
) -> VariationReport:
    """``lambda^2 * (-sum_{t != s} <J_t eta^1, e^1>^2 + sum (<J_s e^1, e^1>^2 - <e^1, e^1>^2))``.

    Both grouped terms are non-positive and are reported separately as
    ``cross`` and ``key``.  The default scale is ``2 m1 / (m1 + 4)``.
    """
    if s not in (1, 2, 3):
        raise BadIndex(f"s must be 1, 2 or 3, got {s!r}")
    _check_structure(Q.dim, frame.m1)
    scale = scale or CurvatureScale.quaternionic_projective(frame.m1)
    value, cross, key, residuals = quaternionic_values(frame.e1, frame.eta1, Q, s, scale.lambda_sq)
    if frame.n and np.any(frame.e1):
        invariant = key_defect(Q[s].J, frame.e1.T, tol).span_invariant
    else:
        invariant = True
    return VariationReport(
        value=float(value),
        components={"cross": float(cross), "key": float(key)},
        certificates={
            "cross_orthogonal": bool(np.abs(residuals).max(initial=0.0) <= CERTIFICATE_TOL),
            "span_invariant": invariant,
        },
        residuals={"cross": residuals},
    )


def _require_cayley(frame: ProductFrame):
    if frame.m1 != CAYLEY_DIM:
        raise DimensionMismatch(f"octonionic integrands need m1 = 16, got {frame.m1}")


def octonionic_values(xs, others, lambda_sq: float, tol: Tolerance = DEFAULT_TOL, fallback=ORIGIN_LINE):
    """Batched ``(value, projection, gram, cross)``: ``xs`` are the rows whose
    lines are used, ``others`` the rows entering only the cross term."""
    xs = np.asarray(xs, dtype=float)
    others = np.asarray(others, dtype=float)
    projection = weighted_projection_sum(xs, tol, fallback) if xs.shape[-2] else np.zeros(xs.shape[:-2])
    gram = _gram(xs, xs)
    cross = _gram(xs, others)
    gram_sum = np.sum(gram * gram, axis=(-2, -1))
    cross_sum = np.sum(cross * cross, axis=(-2, -1))
    value = lambda_sq * (projection - 8.0 * gram_sum - 6.0 * cross_sum)
    return value, projection, gram_sum, cross_sum


def _octonionic_report(frame, xs, others, fallback, scale, tol) -> VariationReport:
    _require_cayley(frame)
    scale = scale or CurvatureScale.cayley_plane()
    value, projection, gram_sum, cross_sum = octonionic_values(xs, others, scale.lambda_sq, tol, fallback)
    defect = float(projection - 8.0 * gram_sum)
    return VariationReport(
        value=float(value),
        components={
            "projection": float(projection),
            "gram": float(gram_sum),
            "cross": float(cross_sum),
        },
        certificates={
            "line_equality": abs(defect) <= CERTIFICATE_TOL,
            "cross_orthogonal": float(cross_sum) <= CERTIFICATE_TOL**2,
        },
    )


def octonionic_integrand_tangent(
    frame: ProductFrame,
    fallback: LineParam = ORIGIN_LINE,
    scale: CurvatureScale | None = None,
    tol: Tolerance = DEFAULT_TOL,
) -> VariationReport:
    """``lambda^2 * (sum |e_j^1|^2 |Proj_{L(e_j^1)} e_i^1|^2 - 8 sum <e_j^1, e_i^1>^2
    - 6 sum <e_j^1, eta_k^1>^2)`` for ``m1 = 16``; never positive."""
    _require_cayley(frame)
    return _octonionic_report(frame, frame.e1, frame.eta1, fallback, scale, tol)


def octonionic_integrand_normal(
    frame: ProductFrame,
    fallback: LineParam = ORIGIN_LINE,
    scale: CurvatureScale | None = None,
    tol: Tolerance = DEFAULT_TOL,
) -> VariationReport:
    """The same sums with the normal vectors ``eta^1`` in place of ``e^1``."""
    _require_cayley(frame)
    return _octonionic_report(frame, frame.eta1, frame.e1, fallback, scale, tol)


def raw_2ff_values(e1, eta1, lambda_sq: float):
    """Batched ``sum_jk 2 |B(e_j, eta_k)|^2 - <B(eta_k, eta_k), B(e_j, e_j)>``."""
    e = np.asarray(e1, dtype=float)[..., :, None, :]
    h = np.asarray(eta1, dtype=float)[..., None, :, :]
    e, h = np.broadcast_arrays(e, h)
    scale = CurvatureScale(lambda_sq)
    terms = 2.0 * gauss_2ff_inner(e, h, e, h, scale) - gauss_2ff_inner(h, h, e, e, scale)
    return np.sum(terms, axis=(-2, -1))


def raw_2ff_sum(frame: ProductFrame, scale: CurvatureScale | None = None) -> float:
    """Second-fundamental-form double sum, built only from the Gauss equation.

    On complete frames (``n + d = m1 + m2``) it equals both octonionic
    integrands.
    """
    _require_cayley(frame)
    scale = scale or CurvatureScale.cayley_plane()
    if frame.n == 0 or frame.d == 0:
        return 0.0
    return float(raw_2ff_values(frame.e1, frame.eta1, scale.lambda_sq))


# ----------------------------------------------------------- splitting check


@dataclass(frozen=True)
class SplittingVerdict:
    """``F = P - Q`` maps the tangent space to itself iff ``f_invariant``.

    ``cross_orthogonal`` is the stronger-looking pair of conditions
    ``<e^1, eta^1> = 0`` and ``<e^2, eta^2> = 0``.  Because
    ``<e^1, eta^1> + <e^2, eta^2> = <e, eta> = 0`` on an orthonormal frame the
    two verdicts always coincide; ``symmetry_residual`` measures that sum.
    """

    f_invariant: bool
    cross_orthogonal: bool
    f_residuals: np.ndarray
    first_factor: np.ndarray
    second_factor: np.ndarray
    symmetry_residual: float


def splitting_check(frame: ProductFrame, tol: Tolerance = DEFAULT_TOL) -> SplittingVerdict:
    """Per-pair residuals ``<F e_i, eta_k> = <e_i^1, eta_k^1> - <e_i^2, eta_k^2>``.

    Residuals count as zero below ``sqrt(abs_tol)``.
    """
    cut = math.sqrt(tol.abs_tol)
    first = _gram(frame.e1, frame.eta1)
    second = _gram(frame.e2, frame.eta2)
    f_res = first - second
    return SplittingVerdict(
        f_invariant=bool(np.abs(f_res).max(initial=0.0) <= cut),
        cross_orthogonal=bool(max(np.abs(first).max(initial=0.0), np.abs(second).max(initial=0.0)) <= cut),
        f_residuals=f_res,
        first_factor=first,
        second_factor=second,
        symmetry_residual=float(np.abs(first + second).max(initial=0.0)),
    )


# ----------------------------------------------------- odd dimension argument


def cluster_eigenvalues(values, cluster_tol: float = CLUSTER_TOL) -> list[tuple[float, int]]:
    """Group sorted eigenvalues whose neighbours lie within ``cluster_tol``.

    Returns ``(mean, multiplicity)`` pairs in descending order.
    """
    values = np.sort(np.asarray(values, dtype=float))[::-1]
    clusters: list[list[float]] = []
    for v in values:
        if clusters and clusters[-1][-1] - v <= cluster_tol:
            clusters[-1].append(v)
        else:
            clusters.append([v])
    return [(float(np.mean(c)), len(c)) for c in clusters]


def _multiplicity_at(table, target: float, cluster_tol: float) -> int:
    return sum(mult for value, mult in table if abs(value - target) <= cluster_tol)


@dataclass(frozen=True)
class OddDimensionVerdict:
    """``status`` is ``"even"`` when the multiplicity table is consistent with
    an even ``n``, ``"contradiction"`` otherwise.

    ``certified`` says whether both commutators were actually below the
    certificate threshold; ``False`` means the parity argument ran only
    because ``assume_certificates`` was set.
    """

    status: str
    n: int
    certified: bool
    commutator_norms: tuple[float, float]
    gram1_table: list
    gram2_table: list
    checks: dict


def odd_dimension_certificate(
    X1,
    X2,
    J1: ComplexStructure,
    J2: ComplexStructure,
    tol: Tolerance = DEFAULT_TOL,
    *,
    certificate_tol: float = CERTIFICATE_TOL,
    cluster_tol: float = CLUSTER_TOL,
    assume_certificates: bool = False,
) -> OddDimensionVerdict:
    """Parity argument for ``X1^T X1 + X2^T X2 = Id_n`` with ``X_i X_i^T``
    commuting with ``J_i``.

    Commutation makes every eigenspace of ``X_i X_i^T`` ``J_i``-invariant, so
    every nonzero eigenvalue of ``X_i^T X_i`` has even multiplicity, and
    eigenvalue 1 of ``X1^T X1`` pairs with eigenvalue 0 of ``X2^T X2``.
    Counting multiplicities of ``X1^T X1`` then forces ``n`` to be even.
    """
    X1 = np.atleast_2d(np.asarray(X1, dtype=float))
    X2 = np.atleast_2d(np.asarray(X2, dtype=float))
    n = X1.shape[1]
    if X2.shape[1] != n:
        raise DimensionMismatch("X1 and X2 need the same number of columns")
    _check_structure(J1.dim, X1.shape[0])
    _check_structure(J2.dim, X2.shape[0])
    g1 = X1.T @ X1
    g2 = X2.T @ X2
    if np.linalg.norm(g1 + g2 - np.eye(n)) > tol.bound(n):
        raise ConstraintViolated("X1^T X1 + X2^T X2 differs from the identity")

    commutators = []
    for x, j in ((X1, J1.J), (X2, J2.J)):
        outer = x @ x.T
        commutators.append(float(np.linalg.norm(outer @ j - j @ outer)))
    certified = all(c <= certificate_tol for c in commutators)
    if not certified and not assume_certificates:
        raise CertificatesAbsent(
            f"commutators {commutators[0]:.3e}, {commutators[1]:.3e} exceed {certificate_tol:g}",
            tuple(commutators),
        )

    table1 = cluster_eigenvalues(sym_eig(g1, tol).eigenvalues, cluster_tol)
    table2 = cluster_eigenvalues(sym_eig(g2, tol).eigenvalues, cluster_tol)

    def nonzero_even(table):
        return all(mult % 2 == 0 for value, mult in table if abs(value) > cluster_tol)

    zero1 = _multiplicity_at(table1, 0.0, cluster_tol)
    checks = {
        "gram1_nonzero_even": nonzero_even(table1),
        "gram2_nonzero_even": nonzero_even(table2),
        "one_zero_pairing": _multiplicity_at(table1, 1.0, cluster_tol) == _multiplicity_at(table2, 0.0, cluster_tol),
        "zero1_even": zero1 % 2 == 0,
        "n_even": n % 2 == 0,
    }
    status = "even" if all(checks.values()) else "contradiction"
    return OddDimensionVerdict(
        status=status,
        n=n,
        certified=certified,
        commutator_norms=tuple(commutators),
        gram1_table=table1,
        gram2_table=table2,
        checks=checks,
    )


def invariant_frame_blocks(m1: int, m2: int, n: int, rng: np.random.Generator, J1=None, J2=None):
    """``(X1, X2)`` for an ``n``-frame (``n`` even) with ``X_i X_i^T`` commuting with ``J_i``.

    Columns come in pairs ``(c v, s w), (c J1 v, s J2 w)`` with ``c^2 + s^2 = 1``
    and the ``v`` (resp. ``w``) orthogonal to the earlier ``J``-planes.
    """
    if n % 2:
        raise DimensionMismatch("a J-invariant frame needs even n")
    if n > min(m1, m2):
        raise DimensionMismatch("need n <= min(m1, m2) for this construction")
    J1 = J1 or ComplexStructure.standard(m1)
    J2 = J2 or ComplexStructure.standard(m2)

    def plane_vectors(m, j):
        basis = np.zeros((m, 0))
        out = []
        for _ in range(n // 2):
            v = rng.standard_normal(m)
            v -= basis @ (basis.T @ v)
            v /= np.linalg.norm(v)
            pair = np.stack([v, j @ v], axis=1)
            basis = np.hstack([basis, pair])
            out.append(pair)
        return out

    v_pairs = plane_vectors(m1, J1.J)
    w_pairs = plane_vectors(m2, J2.J)
    angles = rng.uniform(0.0, 0.5 * math.pi, size=n // 2)
    x1 = np.hstack([math.cos(t) * p for t, p in zip(angles, v_pairs)])
    x2 = np.hstack([math.sin(t) * p for t, p in zip(angles, w_pairs)])
    return x1, x2


def certificate_commutators(m1: int, m2: int, n: int, seed: int, start: int, stop: int) -> np.ndarray:
    """``max(||[X1 X1^T, J1]||, ||[X2 X2^T, J2]||)`` for trials ``start..stop-1``.

    Trial ``t`` orthonormalises a Gaussian ``(m1+m2) x n`` matrix drawn from
    ``default_rng(seed ^ t)``; ``J1, J2`` are the standard structures.
    """
    if n > m1 + m2:
        raise DimensionMismatch("n exceeds m1 + m2")
    if stop <= start:
        return np.zeros(0)
    j1 = ComplexStructure.standard(m1).J
    j2 = ComplexStructure.standard(m2).J
    draws = np.stack([
        np.random.default_rng((seed ^ t) & 0xFFFFFFFFFFFFFFFF).standard_normal((m1 + m2, n))
        for t in range(start, stop)
    ])
    q, _ = np.linalg.qr(draws)
    worst = np.zeros(stop - start)
    for x, j in ((q[:, :m1, :], j1), (q[:, m1:, :], j2)):
        outer = x @ np.swapaxes(x, -1, -2)
        comm = outer @ j - j @ outer
        worst = np.maximum(worst, np.sqrt(np.sum(comm * comm, axis=(-2, -1))))
    return worst


@dataclass(frozen=True)
class SearchResult:
    trials: int
    hits: int
    min_commutator: float
    """Smallest ``max(||[X1 X1^T, J1]||, ||[X2 X2^T, J2]||)`` over the trials."""


def certificate_search(
    m1: int,
    m2: int,
    n: int,
    trials: int,
    seed: int,
    threshold: float = CERTIFICATE_TOL,
    batch: int = 8192,
) -> SearchResult:
    """Count random ``n``-frames whose blocks satisfy both commutation certificates.

    The result does not depend on ``batch``.
    """
    hits = 0
    best = math.inf
    for start in range(0, trials, batch):
        worst = certificate_commutators(m1, m2, n, seed, start, min(trials, start + batch))
        hits += int(np.count_nonzero(worst <= threshold))
        best = min(best, float(worst.min()))
    return SearchResult(trials=trials, hits=hits, min_commutator=best)
