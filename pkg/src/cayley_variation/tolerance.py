from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerance:
    """Absolute and relative cutoffs used by the numerical checks.

    ``bound(scale)`` is the cutoff applied to a residual whose natural size is
    ``scale``: ``abs_tol * (1 + scale)``.
    """

    abs_tol: float = 1e-12
    rel_tol: float = 1e-10

    def __post_init__(self):
        for name in ("abs_tol", "rel_tol"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"{name} must be finite and non-negative, got {value!r}")

    def bound(self, scale: float = 0.0) -> float:
        return self.abs_tol * (1.0 + scale)


DEFAULT_TOL = Tolerance()
