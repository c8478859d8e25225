"""Trace inequalities for column families, with equality diagnostics.

For columns ``x_1..x_n`` of ``X`` and an orthogonal ``A``:

* ``sum <x_i, A x_j>^2 - sum <x_i, x_j>^2 <= 0``, with equality iff
  ``X X^T`` commutes with ``A``;
* ``m * sum <x_i, x_j>^2 >= (sum |x_i|^2)^2`` where ``m`` is the dimension of
  the span, with equality iff ``X X^T`` is a multiple of the projector onto
  the span (orthogonal columns of equal length when there are at most ``m``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dense_linear import as_matrix, column_space_basis, frobenius_norm, haar_orthogonal, numerical_rank
from .errors import NotOrthogonal, ShapeMismatch
from .tolerance import DEFAULT_TOL, Tolerance


@dataclass(frozen=True)
class KeyDefectReport:
    defect: float
    commutator_norm: float
    span_invariant: bool
    projector_commutator: float

    def equality_certified(self, threshold: float) -> bool:
        return self.commutator_norm <= threshold


def key_defect(a, x, tol: Tolerance = DEFAULT_TOL) -> KeyDefectReport:
    """``||X^T A X||^2 - ||X^T X||^2`` for orthogonal ``A`` (m x m) and ``X`` (m x n).

    ``commutator_norm`` is ``||X X^T A - A X X^T||_F``.  ``span_invariant``
    tests the column span of ``X`` for ``A``-invariance through the orthogonal
    projector ``P`` onto it: ``||PA - AP||_F <= sqrt(abs_tol)``, with the span
    cut at singular values below ``sqrt(abs_tol)`` times the largest.
    """
    a = as_matrix(a)
    x = as_matrix(x)
    m = a.shape[0]
    if a.shape != (m, m) or x.shape[0] != m:
        raise ShapeMismatch(f"A must be {x.shape[0]}x{x.shape[0]}, got {a.shape}")
    if frobenius_norm(a.T @ a - np.eye(m)) > tol.abs_tol * m:
        raise NotOrthogonal("A^T A differs from the identity beyond tolerance")

    gram = x.T @ x
    twisted = x.T @ a @ x
    defect = float(np.sum(twisted * twisted) - np.sum(gram * gram))

    outer = x @ x.T
    commutator = frobenius_norm(outer @ a - a @ outer)

    cut = math.sqrt(tol.abs_tol)
    span = column_space_basis(x, cut)
    proj = span @ span.T
    proj_comm = frobenius_norm(proj @ a - a @ proj)
    return KeyDefectReport(
        defect=defect,
        commutator_norm=commutator,
        span_invariant=bool(proj_comm <= cut),
        projector_commutator=proj_comm,
    )


def sum_defect(x, tol: Tolerance = DEFAULT_TOL) -> float:
    """``m' * sum <x_i, x_j>^2 - (sum |x_i|^2)^2``, with ``m'`` the numerical rank of ``X``.

    Non-negative in exact arithmetic.
    """
    x = as_matrix(x)
    rank = numerical_rank(x, tol)
    gram = x.T @ x
    total = float(np.trace(gram))
    return rank * float(np.sum(gram * gram)) - total * total


def invariant_pair(m: int, n: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """An orthogonal ``A`` and an ``m x n`` ``X`` with ``X X^T`` commuting with ``A``.

    ``A = U diag(R1, R2) U^T`` for Haar ``U, R1, R2``; ``X`` is a scaled,
    rotated copy of the first ``n`` columns of ``U``, so ``X X^T`` is a
    multiple of the projector onto an ``A``-invariant subspace.
    """
    if not 0 < n <= m:
        raise ShapeMismatch(f"need 0 < n <= m, got n={n}, m={m}")
    u = haar_orthogonal(m, rng)
    blocks = np.zeros((m, m))
    blocks[:n, :n] = haar_orthogonal(n, rng)
    if n < m:
        blocks[n:, n:] = haar_orthogonal(m - n, rng)
    a = u @ blocks @ u.T
    mix = haar_orthogonal(n, rng) * rng.uniform(0.5, 2.0)
    return a, u[:, :n] @ mix
