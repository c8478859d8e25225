"""The octonionic projection inequality and its eigenvalue reformulation.

For nonzero ``x_1..x_n`` in ``O + O``,

    D(x) = sum_j sum_i |x_j|^2 |Proj_{L(x_j)} x_i|^2 - 8 sum_ij <x_i, x_j>^2 <= 0.

Grouping the vectors by line turns ``D`` into a quadratic form ``f`` in the
Gram eigenvalues ``lambda_{r,i}`` of each group, with couplings
``c_rs`` (the line-Gram scale) and orthogonal ``A_rs``.  This module computes
that decomposition, evaluates ``f`` and its gradient, and maximises ``f`` on
the sphere ``sum lambda^2 = C`` intersected with the non-negative orthant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dense_linear import numerical_rank, sym_eig
from .division_algebra import DIM
from .errors import DegenerateGroup, NegativeEigenvalue, ZeroVector
from .octonionic_lines import (
    CAYLEY_DIM,
    GROUPING_REL_TOL,
    ORIGIN_LINE,
    LineParam,
    line_basis,
    line_gram,
    line_through,
    weighted_projection_sum,
)
from .tolerance import DEFAULT_TOL, Tolerance

MAXIMIZE_BOUND = 1e-7
_UINT64 = (1 << 64) - 1


def octo_defect(xs, fallback: LineParam = ORIGIN_LINE, tol: Tolerance = DEFAULT_TOL):
    """``D(x)`` for rows of ``xs`` with shape ``(..., n, 16)``; zero rows contribute nothing."""
    xs = np.asarray(xs, dtype=float)
    if xs.size == 0:
        return np.zeros(xs.shape[:-2]) if xs.ndim > 2 else 0.0
    gram = xs @ np.swapaxes(xs, -1, -2)
    out = weighted_projection_sum(xs, tol, fallback) - 8.0 * np.sum(gram * gram, axis=(-2, -1))
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True, eq=False)
class LineDecomposition:
    """Vectors grouped by octonionic line.

    ``eigen[r]`` holds the eight Gram eigenvalues of group ``r`` (descending,
    zero-padded), ``c[r, s]`` the line-Gram scale and ``A[r, s]`` the coupling
    ``U_r^T Q_rs U_s`` in the groups' eigenbases.
    """

    lines: list
    groups: list
    eigen: np.ndarray
    c: np.ndarray
    A: np.ndarray

    @property
    def k(self) -> int:
        return len(self.lines)

    def quadratic_form(self) -> np.ndarray:
        """Symmetric ``8k x 8k`` matrix ``M`` with ``f(lambda) = lambda^T M lambda``."""
        c2 = self.c**2
        w = c2[:, :, None, None] * (1.0 - 8.0 * self.A**2)
        n = DIM * self.k
        return np.transpose(w, (0, 2, 1, 3)).reshape(n, n)


def _group_by_line(lines: list[LineParam], rel_tol: float) -> tuple[list[LineParam], list[list[int]]]:
    reps: list[LineParam] = []
    groups: list[list[int]] = []
    for i, line in enumerate(lines):
        for r, rep in enumerate(reps):
            if rep.same_line(line, rel_tol):
                groups[r].append(i)
                break
        else:
            reps.append(line)
            groups.append([i])
    return reps, groups


def decompose(xs, tol: Tolerance = DEFAULT_TOL, rel_tol: float = GROUPING_REL_TOL) -> LineDecomposition:
    """Group ``xs`` (rows) by line and extract eigenvalues and couplings."""
    xs = np.atleast_2d(np.asarray(xs, dtype=float))
    if xs.shape[-1] != CAYLEY_DIM:
        raise ValueError(f"expected Cayley vectors of length 16, got shape {xs.shape}")
    if np.any(np.linalg.norm(xs, axis=-1) <= tol.abs_tol):
        raise ZeroVector("decompose needs nonzero vectors")
    lines, groups = _group_by_line([line_through(x, tol) for x in xs], rel_tol)
    k = len(lines)
    bases = [line_basis(line) for line in lines]

    eigen = np.zeros((k, DIM))
    frames = []
    for r, (basis, idx) in enumerate(zip(bases, groups)):
        if numerical_rank(xs[idx], tol) > DIM:
            raise DegenerateGroup(f"group {r} has rank above 8")
        z = basis.T @ xs[idx].T
        spec = sym_eig(z @ z.T, tol)
        eigen[r] = np.clip(spec.eigenvalues, 0.0, None)
        frames.append(spec.eigenvectors)

    c = np.eye(k)
    A = np.broadcast_to(np.eye(DIM), (k, k, DIM, DIM)).copy()
    for r in range(k):
        for s in range(r + 1, k):
            lg = line_gram(lines[r], lines[s], bases[r], bases[s], tol)
            c[r, s] = c[s, r] = lg.c
            if lg.c > tol.abs_tol:
                A[r, s] = frames[r].T @ lg.q @ frames[s]
                A[s, r] = A[r, s].T
    return LineDecomposition(lines=lines, groups=groups, eigen=eigen, c=c, A=A)


def _check_lambdas(dec: LineDecomposition, lambdas) -> np.ndarray:
    lam = np.asarray(lambdas, dtype=float)
    if lam.shape[-2:] != (dec.k, DIM):
        raise ValueError(f"lambdas must have shape (..., {dec.k}, 8), got {lam.shape}")
    if np.any(lam < 0):
        raise NegativeEigenvalue("eigenvalue parameters must be non-negative")
    return lam


def eigen_f(dec: LineDecomposition, lambdas):
    """``sum c_rs^2 lambda_ri lambda_sj (1 - 8 A_rs[i, j]^2)``; batched over leading axes."""
    lam = _check_lambdas(dec, lambdas)
    flat = lam.reshape(lam.shape[:-2] + (-1,))
    out = np.einsum("...i,ij,...j->...", flat, dec.quadratic_form(), flat)
    return float(out) if np.ndim(out) == 0 else out


def eigen_f_gradient(dec: LineDecomposition, lambdas) -> np.ndarray:
    """``2 M lambda`` reshaped to ``(..., k, 8)``; each row sums to zero."""
    lam = _check_lambdas(dec, lambdas)
    flat = lam.reshape(lam.shape[:-2] + (-1,))
    return (2.0 * flat @ dec.quadratic_form()).reshape(lam.shape)


def _project(x: np.ndarray) -> np.ndarray:
    """Nearest point of the unit sphere within the non-negative orthant, row-wise."""
    clipped = np.clip(x, 0.0, None)
    norms = np.linalg.norm(clipped, axis=-1, keepdims=True)
    empty = norms[:, 0] == 0.0
    if np.any(empty):
        fix = np.zeros((int(empty.sum()), x.shape[-1]))
        fix[np.arange(fix.shape[0]), np.argmax(x[empty], axis=-1)] = 1.0
        clipped[empty] = fix
        norms[empty] = 1.0
    return clipped / norms


def kkt_residual(m: np.ndarray, x: np.ndarray) -> float:
    """``||grad f - alpha x - mu||`` on the unit sphere with orthant multipliers ``mu``."""
    g = 2.0 * m @ x
    alpha = float(g @ x)
    support = x > 0.0
    r_support = (g - alpha * x)[support]
    r_active = np.maximum(g[~support], 0.0)
    return float(math.sqrt(r_support @ r_support + r_active @ r_active))


@dataclass(frozen=True)
class MaximizeResult:
    value: float
    argmax: np.ndarray
    kkt_residual: float
    iterations: int
    bound_holds: bool


def maximize_f(
    dec: LineDecomposition,
    C: float = 1.0,
    seed: int = 0,
    iters: int = 10_000,
    starts: int = 32,
    step0: float = 0.1,
) -> MaximizeResult:
    """Multi-start projected-gradient ascent of ``f`` on ``{lambda >= 0, |lambda|^2 = C}``.

    ``f`` is homogeneous of degree two, so the search runs on the unit
    sphere and the result is scaled by ``C``.  Each step backtracks from
    ``step0`` until ``f`` increases; a start stops when no step helps.
    """
    if not C > 0:
        raise ValueError("C must be positive")
    m = dec.quadratic_form()
    dim = m.shape[0]
    rng = np.random.default_rng(int(seed) & _UINT64)
    x = _project(np.abs(rng.standard_normal((starts, dim))))

    def f(v):
        return np.einsum("si,ij,sj->s", v, m, v)

    fx = f(x)
    active = np.ones(starts, dtype=bool)
    it = 0
    for it in range(1, iters + 1):
        xa = x[active]
        fa = fx[active]
        grad = 2.0 * xa @ m
        step = np.full(xa.shape[0], step0)
        moved = np.zeros(xa.shape[0], dtype=bool)
        new_x = xa.copy()
        new_f = fa.copy()
        for _ in range(40):
            todo = ~moved
            if not todo.any():
                break
            trial = _project(xa[todo] + step[todo, None] * grad[todo])
            ft = f(trial)
            better = ft > fa[todo] + 1e-15 * (1.0 + np.abs(fa[todo]))
            where = np.flatnonzero(todo)
            new_x[where[better]] = trial[better]
            new_f[where[better]] = ft[better]
            moved[where[better]] = True
            step[todo] *= 0.5
        idx = np.flatnonzero(active)
        x[idx] = new_x
        fx[idx] = new_f
        active[idx[~moved]] = False
        if not active.any():
            break

    best = int(np.argmax(fx))
    value = float(C * fx[best])
    return MaximizeResult(
        value=value,
        argmax=(math.sqrt(C) * x[best]).reshape(dec.k, DIM),
        kkt_residual=math.sqrt(C) * kkt_residual(m, x[best]),
        iterations=it,
        bound_holds=value <= MAXIMIZE_BOUND * C * C,
    )


@dataclass(frozen=True)
class FalsifyResult:
    """``worst`` is the largest ``D(x) / (sum |x|^2)^2`` seen; ``-inf`` with no trials.

    The ratio always lies in ``[-8, 0]``, which fixes the histogram range.
    """

    n: int
    trials: int
    worst: float
    witness: np.ndarray | None
    histogram: tuple[np.ndarray, np.ndarray] | None


def falsify_search(n: int, seed: int, trials: int, bins: int = 20, batch: int = 4096) -> FalsifyResult:
    """Largest normalised defect over ``trials`` sets of ``n`` Gaussian vectors in ``R^16``.

    Trial ``t`` is drawn from ``default_rng(seed ^ t)``.
    """
    if trials <= 0:
        return FalsifyResult(n=n, trials=0, worst=-math.inf, witness=None, histogram=None)
    ratios = np.empty(trials)
    worst, witness = -math.inf, None
    for start in range(0, trials, batch):
        idx = range(start, min(trials, start + batch))
        xs = np.stack([np.random.default_rng((seed ^ t) & _UINT64).standard_normal((n, CAYLEY_DIM)) for t in idx])
        total = np.sum(xs * xs, axis=(-2, -1))
        r = octo_defect(xs) / (total * total)
        ratios[start : start + len(idx)] = r
        j = int(np.argmax(r))
        if r[j] > worst:
            worst, witness = float(r[j]), xs[j]
    counts, edges = np.histogram(ratios, bins=bins, range=(-8.0, max(0.0, worst)))
    return FalsifyResult(n=n, trials=trials, worst=worst, witness=witness, histogram=(counts, edges))


@dataclass(frozen=True)
class SimpleBound:
    """``bound = (sum |x|^2)^2 - 8 sum <x_i, x_j>^2``, an upper bound for ``defect``
    that is itself non-positive when ``n <= 8``."""

    defect: float
    bound: float
    agree: bool


def simple_bound_certificate(xs, tol: Tolerance = DEFAULT_TOL) -> SimpleBound:
    """Cruder bound for ``n <= 8``: projections shrink norms, and the rank-8 sum
    inequality gives ``8 sum <x_i, x_j>^2 >= (sum |x_i|^2)^2``."""
    xs = np.atleast_2d(np.asarray(xs, dtype=float))
    if xs.shape[0] > DIM:
        raise ValueError("the simple bound needs at most 8 vectors")
    gram = xs @ xs.T
    total = float(np.trace(gram))
    bound = total * total - 8.0 * float(np.sum(gram * gram))
    defect = octo_defect(xs, tol=tol)
    slack = tol.bound(total * total)
    return SimpleBound(defect=defect, bound=bound, agree=defect <= bound + slack and bound <= slack)


def grouped_vectors(rng: np.random.Generator, max_lines: int = 4, max_per_line: int = 10) -> np.ndarray:
    """Rows drawn in clusters on a few random lines, so that groups have more
    than one member and ranks up to 8."""
    k = int(rng.integers(1, max_lines + 1))
    rows = []
    for _ in range(k):
        basis = line_basis(LineParam.finite(rng.standard_normal(DIM)))
        count = int(rng.integers(1, max_per_line + 1))
        rows.append((basis @ rng.standard_normal((DIM, count))).T)
    return np.vstack(rows)
