"""Dense real matrices: trace inner product, a Jacobi eigensolver, Haar sampling.

Matrices are plain 2-D ``numpy`` float arrays.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import NoConvergence, NotSymmetric, ShapeMismatch
from .tolerance import DEFAULT_TOL, Tolerance

JACOBI_OFF_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100
_UINT64 = (1 << 64) - 1


def as_matrix(x) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 2 or 0 in arr.shape:
        raise ShapeMismatch(f"expected a non-empty 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix has non-finite entries")
    return arr


def frobenius_inner(a, b) -> float:
    """``Tr(A^T B)``, the sum of entrywise products."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ShapeMismatch(f"shapes differ: {a.shape} vs {b.shape}")
    return float(np.sum(a * b))


def frobenius_norm(a) -> float:
    a = np.asarray(a, dtype=float)
    return float(np.sqrt(np.sum(a * a)))


@dataclass(frozen=True)
class SymmetricSpectrum:
    """Eigenvalues in descending order and matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int = 0

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues[..., None, :]) @ np.swapaxes(v, -1, -2)


@njit(cache=True)
def _jacobi_kernel(a, v, off_tol, max_sweeps):
    """Row-cyclic Jacobi in place on ``a``; rotations accumulate into ``v``.

    Returns the number of sweeps used, or -1 if ``max_sweeps`` ran out.
    """
    n = a.shape[0]
    sweep = 0
    while True:
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += a[i, j] * a[i, j]
        if np.sqrt(off) <= off_tol:
            return sweep
        if sweep == max_sweeps:
            return -1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(tau) > 1e150:
                    t = 0.5 / tau
                elif tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
        sweep += 1


def sym_eig(s, tol: Tolerance = DEFAULT_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS) -> SymmetricSpectrum:
    """Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps visit the off-diagonal pairs row by row until
    ``off(A) <= 1e-14 * ||S||``.  Accepts a stack ``(..., n, n)``; the
    reported ``sweeps`` is the maximum over the stack.
    """
    a = np.array(s, dtype=float)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2] or a.shape[-1] == 0:
        raise ShapeMismatch(f"expected square matrices, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    batch_shape = a.shape[:-2]
    n = a.shape[-1]
    a = a.reshape((-1, n, n))
    scale = np.sqrt(np.sum(a * a, axis=(-2, -1)))
    asym = np.sqrt(np.sum((a - np.swapaxes(a, -1, -2)) ** 2, axis=(-2, -1)))
    if np.any(asym > tol.bound(scale)):
        raise NotSymmetric(f"||S - S^T|| = {float(np.max(asym)):.3e} exceeds tolerance")
    a = np.ascontiguousarray(0.5 * (a + np.swapaxes(a, -1, -2)))
    v = np.broadcast_to(np.eye(n), a.shape).copy()

    sweeps = 0
    for b in range(a.shape[0]):
        used = _jacobi_kernel(a[b], v[b], JACOBI_OFF_TOL * scale[b], max_sweeps)
        if used < 0:
            raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps")
        sweeps = max(sweeps, used)

    evals = np.diagonal(a, axis1=-2, axis2=-1)
    order = np.argsort(-evals, axis=-1, kind="stable")
    evals = np.take_along_axis(evals, order, axis=-1)
    v = np.take_along_axis(v, order[:, None, :], axis=-1)
    return SymmetricSpectrum(
        eigenvalues=evals.reshape(batch_shape + (n,)),
        eigenvectors=v.reshape(batch_shape + (n, n)),
        sweeps=sweeps,
    )


def haar_orthogonal(m: int, rng: np.random.Generator, count: int | None = None) -> np.ndarray:
    """Haar-distributed orthogonal matrices: QR of a Gaussian, with the signs
    of ``diag(R)`` moved into ``Q``.  ``count`` adds a leading batch axis."""
    if m < 1:
        raise ValueError("m must be at least 1")
    shape = (m, m) if count is None else (count, m, m)
    q, r = np.linalg.qr(rng.standard_normal(shape))
    signs = np.sign(np.diagonal(r, axis1=-2, axis2=-1))
    signs[signs == 0] = 1.0
    return q * signs[..., None, :]


def random_orthogonal(m: int, seed: int) -> np.ndarray:
    """Haar-distributed ``m x m`` orthogonal matrix, deterministic per seed."""
    return haar_orthogonal(m, np.random.default_rng(int(seed) & _UINT64))


def singular_values(x) -> np.ndarray:
    return np.linalg.svd(np.asarray(x, dtype=float), compute_uv=False)


def numerical_rank(x, tol: Tolerance = DEFAULT_TOL) -> int:
    """Count squared singular values above ``abs_tol * max(1, largest)``."""
    sv2 = singular_values(x) ** 2
    if sv2.size == 0:
        return 0
    cutoff = tol.abs_tol * max(1.0, float(sv2[0]))
    return int(np.count_nonzero(sv2 > cutoff))


def column_space_basis(x, rel_cutoff: float) -> np.ndarray:
    """Orthonormal basis of the column span, dropping singular values below
    ``rel_cutoff * largest``."""
    x = np.asarray(x, dtype=float)
    u, sv, _ = np.linalg.svd(x, full_matrices=False)
    if sv.size == 0 or sv[0] == 0.0:
        return np.zeros((x.shape[0], 0))
    return u[:, sv > rel_cutoff * sv[0]]


def _eig_rank(b: np.ndarray, tol: Tolerance) -> int:
    """Rank of ``b`` from the eigenvalues ``+-sigma`` of ``[[0, b], [b^T, 0]]``.

    Thresholding singular values rather than Gram eigenvalues keeps the
    cutoff from acting on squared conditioning.
    """
    n, m = b.shape
    s = np.zeros((n + m, n + m))
    s[:n, n:] = b
    s[n:, :n] = b.T
    evals = sym_eig(s, tol).eigenvalues
    cutoff = tol.abs_tol * max(1.0, float(evals[0]))
    return int(np.count_nonzero(evals > cutoff))


@dataclass(frozen=True)
class SpectrumMatch:
    verdict: bool
    gram_nonzero: np.ndarray
    outer_nonzero: np.ndarray
    max_difference: float


def nonzero_spectrum_match(x, tol: Tolerance = DEFAULT_TOL) -> SpectrumMatch:
    """Compare the nonzero eigenvalues of ``X^T X`` and ``X X^T`` as multisets.

    An eigenvalue counts as nonzero above ``abs_tol * max(1, largest)``; the
    two sorted lists must have equal length and agree within the same cutoff.
    """
    x = as_matrix(x)
    small = sym_eig(x.T @ x, tol).eigenvalues
    big = sym_eig(x @ x.T, tol).eigenvalues
    cutoff = tol.abs_tol * max(1.0, float(small[0]), float(big[0]))
    small_nz = small[small > cutoff]
    big_nz = big[big > cutoff]
    if small_nz.size != big_nz.size:
        return SpectrumMatch(False, small_nz, big_nz, float("inf"))
    diff = float(np.max(np.abs(small_nz - big_nz), initial=0.0))
    return SpectrumMatch(diff <= cutoff, small_nz, big_nz, diff)


def row_space_equal(x, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Decide whether ``X^T X X^T`` and ``X^T`` have the same row space.

    Both are ``n x m``.  Each block is normalised to unit Frobenius norm and the
    row spaces agree iff ``rank(top) == rank(bottom) == rank(stacked)``, with
    ranks read off the singular values.
    """
    x = as_matrix(x)
    xt = x.T
    top = xt @ x @ xt
    blocks = []
    for block in (top, xt):
        norm = frobenius_norm(block)
        blocks.append(block / norm if norm > 0 else block)
    top, bottom = blocks
    if frobenius_norm(top) == 0.0 or frobenius_norm(bottom) == 0.0:
        return frobenius_norm(top) == frobenius_norm(bottom)
    r_top = _eig_rank(top, tol)
    r_bottom = _eig_rank(bottom, tol)
    r_both = _eig_rank(np.vstack([top, bottom]), tol)
    return r_top == r_bottom == r_both
