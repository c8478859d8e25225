"""Octonionic lines in O + O = R^16 and the octonionic Hopf map.

A Cayley vector is a float array of length 16: the first eight entries are
the octonion ``u``, the last eight the octonion ``v``.  The line
``l_m = {(u, m u)}`` is described by a :class:`LineParam`; ``l_inf`` is
``{(0, u)}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .division_algebra import DIM, left_mult_matrix, oct_inverse, oct_mul, oct_norm
from .errors import LemmaViolation, NotOnLine, NotOrthonormalBasis, NotUnit, ZeroVector
from .tolerance import DEFAULT_TOL, Tolerance

CAYLEY_DIM = 2 * DIM
GROUPING_REL_TOL = 1e-8


def cayley(u, v) -> np.ndarray:
    return np.concatenate([np.asarray(u, dtype=float), np.asarray(v, dtype=float)], axis=-1)


def split(x) -> tuple[np.ndarray, np.ndarray]:
    x = np.asarray(x, dtype=float)
    return x[..., :DIM], x[..., DIM:]


@dataclass(frozen=True, eq=False)
class LineParam:
    """A point of ``O u {inf}``: ``m`` is an octonion, or ``None`` for infinity."""

    m: np.ndarray | None = field(default=None)

    @classmethod
    def finite(cls, m) -> "LineParam":
        arr = np.array(m, dtype=float).reshape(DIM)
        arr.setflags(write=False)
        return cls(arr)

    @classmethod
    def infinity(cls) -> "LineParam":
        return cls(None)

    @property
    def is_infinity(self) -> bool:
        return self.m is None

    def same_line(self, other: "LineParam", rel_tol: float = GROUPING_REL_TOL) -> bool:
        """``|m - m'| <= rel_tol * (1 + |m|)``, or both infinite."""
        if self.is_infinity or other.is_infinity:
            return self.is_infinity and other.is_infinity
        return float(oct_norm(self.m - other.m)) <= rel_tol * (1.0 + float(oct_norm(self.m)))

    def __repr__(self):
        if self.is_infinity:
            return "LineParam(inf)"
        return f"LineParam({np.array2string(self.m, precision=6, separator=', ')})"


ORIGIN_LINE = LineParam.finite(np.zeros(DIM))


def line_through(x, tol: Tolerance = DEFAULT_TOL) -> LineParam:
    """The octonionic line containing ``x = (u, v)``: ``l_{v u^-1}``, or
    ``l_inf`` when ``|u| <= abs_tol * |x|``."""
    x = np.asarray(x, dtype=float)
    norm = float(np.linalg.norm(x))
    if norm <= tol.abs_tol:
        raise ZeroVector("the zero vector lies on every octonionic line")
    u, v = split(x)
    if float(oct_norm(u)) <= tol.abs_tol * norm:
        return LineParam.infinity()
    return LineParam.finite(oct_mul(v, oct_inverse(u)))


def line_basis(line: LineParam) -> np.ndarray:
    """16 x 8 matrix whose columns ``(I_s, m I_s) / sqrt(1 + |m|^2)`` are an
    orthonormal basis of the line (``(0, I_s)`` for infinity)."""
    if line.is_infinity:
        return np.vstack([np.zeros((DIM, DIM)), np.eye(DIM)])
    m = line.m
    scale = 1.0 / math.sqrt(1.0 + float(m @ m))
    return scale * np.vstack([np.eye(DIM), left_mult_matrix(m)])


def line_bases(xs, tol: Tolerance = DEFAULT_TOL, fallback: LineParam = ORIGIN_LINE) -> np.ndarray:
    """Stacked bases ``(..., 16, 8)`` of the lines through each vector in ``xs``.

    Vectors of norm at most ``abs_tol`` get the basis of ``fallback``.
    """
    xs = np.asarray(xs, dtype=float)
    u, v = split(xs)
    norms = np.linalg.norm(xs, axis=-1)
    u_norm = oct_norm(u)
    zero = norms <= tol.abs_tol
    at_infinity = ~zero & (u_norm <= tol.abs_tol * norms)
    finite = ~(zero | at_infinity)

    u_safe = np.where(finite[..., None], u, np.eye(DIM)[0])
    m = oct_mul(v, oct_inverse(u_safe))
    m = np.where(finite[..., None], m, 0.0)
    scale = 1.0 / np.sqrt(1.0 + np.sum(m * m, axis=-1))
    bases = scale[..., None, None] * np.concatenate(
        [np.broadcast_to(np.eye(DIM), m.shape[:-1] + (DIM, DIM)), left_mult_matrix(m)], axis=-2
    )
    bases = np.where(at_infinity[..., None, None], line_basis(LineParam.infinity()), bases)
    bases = np.where(zero[..., None, None], line_basis(fallback), bases)
    return bases


def project_onto_line(x, line: LineParam) -> np.ndarray:
    """Orthogonal projection of ``x`` (or a stack of vectors) onto the line."""
    b = line_basis(line)
    return (np.asarray(x, dtype=float) @ b) @ b.T


def weighted_projection_sum(xs, tol: Tolerance = DEFAULT_TOL, fallback: LineParam = ORIGIN_LINE):
    """``sum_j sum_i |x_j|^2 |Proj_{L(x_j)} x_i|^2`` over the last-but-one axis.

    ``xs`` has shape ``(..., n, 16)``; leading axes are independent batches.
    """
    xs = np.asarray(xs, dtype=float)
    bases = line_bases(xs, tol, fallback)
    coords = np.einsum("...jak,...ia->...jik", bases, xs)
    proj_sq = np.sum(coords * coords, axis=(-2, -1))
    weights = np.sum(xs * xs, axis=-1)
    return np.sum(weights * proj_sq, axis=-1)


@dataclass(frozen=True)
class LineGram:
    """``B1^T B2 = c Q`` with ``Q`` orthogonal and ``0 <= c <= 1``."""

    c: float
    q: np.ndarray
    orthogonality_residual: float


def _check_basis(line: LineParam, b: np.ndarray, tol: Tolerance, label: str):
    if b.shape != (CAYLEY_DIM, DIM):
        raise NotOrthonormalBasis(f"{label} must be 16x8, got {b.shape}")
    if np.linalg.norm(b.T @ b - np.eye(DIM)) > tol.rel_tol:
        raise NotOrthonormalBasis(f"{label} columns are not orthonormal")
    ref = line_basis(line)
    off_line = b - ref @ (ref.T @ b)
    if np.linalg.norm(off_line) > tol.rel_tol:
        raise NotOnLine(f"{label} has columns off the line {line!r}")


def line_gram(m1: LineParam, m2: LineParam, b1, b2, tol: Tolerance = DEFAULT_TOL) -> LineGram:
    """Split ``G = B1^T B2`` as ``c Q`` with ``c = ||G||_F / sqrt(8)``.

    Raises :class:`LemmaViolation` if ``G / c`` is not orthogonal to
    ``rel_tol / c``, or if ``c`` leaves ``[0, 1]``.
    """
    b1 = np.asarray(b1, dtype=float)
    b2 = np.asarray(b2, dtype=float)
    _check_basis(m1, b1, tol, "B1")
    _check_basis(m2, b2, tol, "B2")
    g = b1.T @ b2
    c = float(np.linalg.norm(g)) / math.sqrt(DIM)
    if c > 1.0 + tol.rel_tol:
        raise LemmaViolation(f"c = {c!r} exceeds 1")
    if c <= tol.abs_tol:
        return LineGram(c=c, q=np.eye(DIM), orthogonality_residual=0.0)
    q = g / c
    residual = float(np.linalg.norm(q.T @ q - np.eye(DIM)))
    if residual > tol.rel_tol / c:
        raise LemmaViolation(f"B1^T B2 / c is not orthogonal (residual {residual:.3e})")
    return LineGram(c=c, q=q, orthogonality_residual=residual)


def hopf(x, tol: Tolerance = DEFAULT_TOL) -> LineParam:
    """Octonionic Hopf map ``S^15 -> S^8 = O u {inf}``."""
    x = np.asarray(x, dtype=float)
    if abs(float(np.linalg.norm(x)) - 1.0) > tol.rel_tol:
        raise NotUnit("hopf expects a unit vector")
    return line_through(x, tol)


def random_line(rng: np.random.Generator, infinity_prob: float = 0.0) -> LineParam:
    if infinity_prob and rng.random() < infinity_prob:
        return LineParam.infinity()
    return LineParam.finite(rng.standard_normal(DIM))


def random_line_basis(line: LineParam, rng: np.random.Generator) -> np.ndarray:
    """A Haar-random orthonormal basis of the line."""
    q, r = np.linalg.qr(rng.standard_normal((DIM, DIM)))
    return line_basis(line) @ (q * np.sign(np.diagonal(r)))
