"""Octonion arithmetic on coefficient arrays.

An octonion is stored as the last axis of a float array of length 8, holding
the coefficients of ``I0 = 1, I1, ..., I7``.  All functions broadcast over
leading axes, so a stack of ``N`` octonions is simply an ``(N, 8)`` array.

The multiplication table comes from Cayley-Dickson doubling,
``(a, b)(c, d) = (ac - d*b, da + bc*)``, applied three times starting from
the reals.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import IdentityViolation, ZeroDivisor
from .tolerance import DEFAULT_TOL, Tolerance

DIM = 8


def _cd_conj(x):
    out = -x
    out[0] = x[0]
    return out


def _cd_product(x, y):
    """Product of two Cayley-Dickson numbers given as length-2**k arrays."""
    n = len(x)
    if n == 1:
        return x * y
    h = n // 2
    a, b = x[:h], x[h:]
    c, d = y[:h], y[h:]
    return np.concatenate([
        _cd_product(a, c) - _cd_product(_cd_conj(d), b),
        _cd_product(d, a) + _cd_product(b, _cd_conj(c)),
    ])


def structure_constants(dim: int) -> np.ndarray:
    """``T[i, j, k]`` = coefficient of basis ``k`` in ``e_i * e_j``.

    ``dim`` must be a power of two: 1, 2, 4 (quaternions) or 8 (octonions).
    """
    if dim < 1 or dim & (dim - 1):
        raise ValueError(f"dim must be a power of two, got {dim}")
    eye = np.eye(dim)
    table = np.empty((dim, dim, dim))
    for i in range(dim):
        for j in range(dim):
            table[i, j] = _cd_product(eye[i], eye[j])
    return table


MULT_TABLE = structure_constants(DIM)
MULT_TABLE.setflags(write=False)
_FLAT_TABLE = MULT_TABLE.reshape(DIM * DIM, DIM)
_CONJ_SIGNS = np.array([1.0] + [-1.0] * (DIM - 1))


def basis(s: int) -> np.ndarray:
    """Coefficient vector of ``I_s``."""
    e = np.zeros(DIM)
    e[s] = 1.0
    return e


def oct_mul(a, b) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    outer = a[..., :, None] * b[..., None, :]
    return outer.reshape(outer.shape[:-2] + (DIM * DIM,)) @ _FLAT_TABLE


def conjugate(a) -> np.ndarray:
    return np.asarray(a, dtype=float) * _CONJ_SIGNS


def oct_inner(a, b) -> np.ndarray:
    """Euclidean inner product of coefficient vectors, ``Re(a* b)``."""
    return np.sum(np.asarray(a, dtype=float) * np.asarray(b, dtype=float), axis=-1)


def oct_norm(a) -> np.ndarray:
    return np.sqrt(oct_inner(a, a))


def oct_inverse(a, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    norm_sq = oct_inner(a, a)
    if np.any(np.sqrt(norm_sq) <= tol.abs_tol):
        raise ZeroDivisor("octonion is zero to tolerance and has no inverse")
    return conjugate(a) / np.asarray(norm_sq)[..., None]


def left_mult_matrix(m) -> np.ndarray:
    """Matrix ``L`` with ``L @ u == oct_mul(m, u)``."""
    return np.einsum("...a,ask->...ks", np.asarray(m, dtype=float), MULT_TABLE)


def right_mult_matrix(m) -> np.ndarray:
    """Matrix ``R`` with ``R @ u == oct_mul(u, m)``."""
    return np.einsum("...a,sak->...ks", np.asarray(m, dtype=float), MULT_TABLE)


@dataclass(frozen=True)
class IdentityReport:
    """Residuals of the three inner-product identities, with their bounds.

    Fields are arrays when the inputs carry batch axes.
    """

    left: np.ndarray
    right: np.ndarray
    four_term: np.ndarray
    left_bound: np.ndarray
    right_bound: np.ndarray
    four_term_bound: np.ndarray

    @property
    def max_normalized(self) -> float:
        """Largest residual divided by its bound; at most 1 when all pass."""
        ratios = [
            np.max(np.asarray(r) / np.asarray(b), initial=0.0)
            for r, b in (
                (self.left, self.left_bound),
                (self.right, self.right_bound),
                (self.four_term, self.four_term_bound),
            )
        ]
        return float(max(ratios))


def identity_report(a, b, c, d, x, y, tol: Tolerance = DEFAULT_TOL) -> IdentityReport:
    """Residuals of ``<ax, y> = <x, a*y>``, ``<xa, y> = <x, ya*>`` and
    ``<ab, cd> + <ad, cb> = 2<a, c><b, d>``, without raising.

    Each bound is ``tol.bound`` of the product of the operand norms.
    """
    a, b, c, d, x, y = (np.asarray(v, dtype=float) for v in (a, b, c, d, x, y))
    a_star = conjugate(a)
    left = np.abs(oct_inner(oct_mul(a, x), y) - oct_inner(x, oct_mul(a_star, y)))
    right = np.abs(oct_inner(oct_mul(x, a), y) - oct_inner(x, oct_mul(y, a_star)))
    four = np.abs(
        oct_inner(oct_mul(a, b), oct_mul(c, d))
        + oct_inner(oct_mul(a, d), oct_mul(c, b))
        - 2.0 * oct_inner(a, c) * oct_inner(b, d)
    )
    axy = oct_norm(a) * oct_norm(x) * oct_norm(y)
    abcd = oct_norm(a) * oct_norm(b) * oct_norm(c) * oct_norm(d)
    return IdentityReport(
        left=left,
        right=right,
        four_term=four,
        left_bound=tol.bound(axy),
        right_bound=tol.bound(axy),
        four_term_bound=tol.bound(abcd),
    )


def check_identities(a, b, c, d, x, y, tol: Tolerance = DEFAULT_TOL) -> IdentityReport:
    """:func:`identity_report`, raising :class:`IdentityViolation` on any excess.

    An excess can only come from a broken multiplication table.
    """
    report = identity_report(a, b, c, d, x, y, tol)
    for name in ("left", "right", "four_term"):
        residual = getattr(report, name)
        if np.any(residual > getattr(report, name + "_bound")):
            raise IdentityViolation(
                f"octonion identity '{name}' violated", float(np.max(residual))
            )
    return report


def norm_residual(a, b) -> np.ndarray:
    """``| |ab| - |a||b| |``."""
    return np.abs(oct_norm(oct_mul(a, b)) - oct_norm(a) * oct_norm(b))


class Octonion:
    """Thin value wrapper around a length-8 coefficient array."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        if coeffs is None:
            coeffs = np.zeros(DIM)
        arr = np.array(coeffs, dtype=float).reshape(-1)
        if arr.shape != (DIM,):
            raise ValueError(f"an octonion needs {DIM} coefficients, got {arr.size}")
        arr.setflags(write=False)
        self.coeffs = arr

    @classmethod
    def unit(cls, s: int) -> "Octonion":
        return cls(basis(s))

    @classmethod
    def real(cls, r: float) -> "Octonion":
        return cls(r * basis(0))

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.coeffs, dtype=dtype)

    def __repr__(self):
        return f"Octonion({np.array2string(self.coeffs, precision=6, separator=', ')})"

    def __eq__(self, other):
        if not isinstance(other, Octonion):
            return NotImplemented
        return bool(np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash(self.coeffs.tobytes())

    def __add__(self, other):
        return Octonion(self.coeffs + _coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return Octonion(self.coeffs - _coerce(other))

    def __rsub__(self, other):
        return Octonion(_coerce(other) - self.coeffs)

    def __neg__(self):
        return Octonion(-self.coeffs)

    def __mul__(self, other):
        if np.isscalar(other):
            return Octonion(self.coeffs * other)
        return Octonion(oct_mul(self.coeffs, _coerce(other)))

    def __rmul__(self, other):
        if np.isscalar(other):
            return Octonion(self.coeffs * other)
        return Octonion(oct_mul(_coerce(other), self.coeffs))

    def __truediv__(self, scalar):
        return Octonion(self.coeffs / scalar)

    def conj(self) -> "Octonion":
        return Octonion(conjugate(self.coeffs))

    def norm(self) -> float:
        return float(oct_norm(self.coeffs))

    def inner(self, other) -> float:
        return float(oct_inner(self.coeffs, _coerce(other)))

    def inverse(self, tol: Tolerance = DEFAULT_TOL) -> "Octonion":
        return Octonion(oct_inverse(self.coeffs, tol))


def _coerce(value) -> np.ndarray:
    if isinstance(value, Octonion):
        return value.coeffs
    if np.isscalar(value):
        return value * basis(0)
    return np.asarray(value, dtype=float)
