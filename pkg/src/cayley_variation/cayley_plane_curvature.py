"""Curvature of the Cayley plane on a tangent space identified with O + O.

``curvature_full(X, Y, Z, W)`` is ``<R(X, Y) Z, W>``.  With this ordering the
sectional curvature of the plane spanned by ``X, Y`` is
``-<R(X, Y) X, Y> / (|X|^2 |Y|^2 - <X, Y>^2)``, which ranges over
``[lambda^2 / 4, lambda^2]``.

Every function broadcasts over leading axes of its 16-vector arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .division_algebra import conjugate as cj
from .division_algebra import oct_inner as ip
from .division_algebra import oct_mul as mul
from .octonionic_lines import split


@dataclass(frozen=True)
class CurvatureScale:
    """Maximum sectional curvature ``lambda^2`` of the ambient projective space."""

    lambda_sq: float = 4.0

    def __post_init__(self):
        if not (math.isfinite(self.lambda_sq) and self.lambda_sq > 0):
            raise ValueError(f"lambda_sq must be positive and finite, got {self.lambda_sq!r}")

    @classmethod
    def cayley_plane(cls, lambda_sq: float = 4.0) -> "CurvatureScale":
        return cls(lambda_sq)

    @classmethod
    def complex_projective(cls, m: int) -> "CurvatureScale":
        """Holomorphic sectional curvature ``2m / (m + 2)`` of ``CP^{m/2}``."""
        return cls(2.0 * m / (m + 2.0))

    @classmethod
    def quaternionic_projective(cls, m: int) -> "CurvatureScale":
        """Maximum sectional curvature ``2m / (m + 4)`` of ``HP^{m/4}``."""
        return cls(2.0 * m / (m + 4.0))


DEFAULT_SCALE = CurvatureScale()


def _dot(x, y):
    return np.sum(np.asarray(x, dtype=float) * np.asarray(y, dtype=float), axis=-1)


def curvature_full(x, y, z, w, scale: CurvatureScale = DEFAULT_SCALE):
    """``<R((a,b),(c,d))(e,f), (g,h)>`` for ``X=(a,b), Y=(c,d), Z=(e,f), W=(g,h)``."""
    a, b = split(x)
    c, d = split(y)
    e, f = split(z)
    g, h = split(w)
    total = (
        -4.0 * ip(a, e) * ip(c, g)
        + 4.0 * ip(c, e) * ip(a, g)
        - 4.0 * ip(b, f) * ip(d, h)
        + 4.0 * ip(d, f) * ip(b, h)
        + ip(mul(e, cj(d)), mul(g, cj(b)))
        - ip(mul(e, cj(b)), mul(g, cj(d)))
        + ip(mul(c, cj(f)), mul(a, cj(h)))
        - ip(mul(a, cj(f)), mul(c, cj(h)))
        + ip(mul(a, cj(d)) - mul(c, cj(b)), mul(g, cj(f)) - mul(e, cj(h)))
    )
    return 0.25 * scale.lambda_sq * total


def curvature_diag(x, y, scale: CurvatureScale = DEFAULT_SCALE):
    """``<R(X, Y) X, Y>`` from its own closed form (not via :func:`curvature_full`)."""
    a, b = split(x)
    c, d = split(y)
    ad = mul(a, cj(d))
    cb = mul(c, cj(b))
    diff = ad - cb
    total = (
        -4.0 * ip(a, a) * ip(c, c)
        + 4.0 * ip(a, c) ** 2
        - 4.0 * ip(b, b) * ip(d, d)
        + 4.0 * ip(b, d) ** 2
        + 2.0 * ip(ad, cb)
        - 2.0 * ip(mul(a, cj(b)), mul(c, cj(d)))
        - ip(diff, diff)
    )
    return 0.25 * scale.lambda_sq * total


def sectional_curvature(x, y, scale: CurvatureScale = DEFAULT_SCALE):
    area_sq = _dot(x, x) * _dot(y, y) - _dot(x, y) ** 2
    return -curvature_diag(x, y, scale) / area_sq


def gauss_2ff_inner(x, y, z, w, scale: CurvatureScale = DEFAULT_SCALE):
    """``<B(X, Y), B(Z, W)>`` for the isotropic embedding, from the Gauss equation."""
    lam = scale.lambda_sq
    return (
        curvature_full(x, z, w, y, scale)
        + curvature_full(x, w, z, y, scale)
        + lam * (_dot(x, y) * _dot(z, w) + _dot(x, w) * _dot(y, z) + _dot(x, z) * _dot(w, y))
    ) / 3.0
