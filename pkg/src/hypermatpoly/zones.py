"""Spectral zones of hyperbolic matrix polynomials.

For unit ``x`` let ``lambda_1(x) <= ... <= lambda_ell(x)`` be the roots of
``<L(z)x, x>``.  Zone ``j`` is the range of ``lambda_j`` over the unit
sphere, a closed interval ``[delta_j^-, delta_j^+]``; distinct zones meet in
at most one point.

Endpoints are estimated, not certified: seeded sampling followed by
coordinate search on the sphere.  Reported intervals are running extrema of
values actually attained, hence inner estimates of the true zones.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import NonRealRootError, ShapeError
from .hyperbolicity import random_unit_vectors, scalar_section
from .polycore import MatrixPolynomial, poly_roots, real_root_classify

__all__ = [
    "SpectralZones",
    "Prop23Verdict",
    "section_roots",
    "zone_estimates",
    "zones_consistent",
    "convex_combination_hyperbolic",
]


@dataclass(frozen=True)
class SpectralZones:
    intervals: np.ndarray  # shape (ell, 2): delta_minus, delta_plus
    sample_count: int
    refined: bool
    tol: float = 1e-6

    @property
    def lower(self) -> np.ndarray:
        return self.intervals[:, 0]

    @property
    def upper(self) -> np.ndarray:
        return self.intervals[:, 1]

    def __len__(self):
        return len(self.intervals)


@dataclass(frozen=True)
class Prop23Verdict:
    """``holds`` iff ``max(d+_j(L), d+_j(M)) <= min(d-_{j+1}(L), d-_{j+1}(M)) + tol`` for all j.

    ``binding_j`` is the first failing (1-based) index; ``boundary`` lists the
    indices whose margin is within tolerance of zero, where the estimate
    cannot tell touching zones from a small overlap or gap.
    """

    holds: bool
    binding_j: Optional[int]
    margins: list[float] = field(default_factory=list)
    boundary: list[int] = field(default_factory=list)
    tol: float = 0.0

    def __bool__(self):
        return self.holds


def section_roots(L: MatrixPolynomial, x, tol: float = 1e-8) -> np.ndarray:
    """Sorted real roots of ``<L(z)x, x>``; raises with ``x`` as witness if any is non-real."""
    verdict = real_root_classify(poly_roots(scalar_section(L, x)), tol)
    if not verdict.all_real:
        raise NonRealRootError("section has non-real roots; L is not hyperbolic", np.asarray(x))
    return verdict.reals


def _refine(L, x0, j, sense, value0, iters, tol):
    """Coordinate search on the sphere pushing lambda_j(x) down (sense=-1) or up (+1)."""
    p = np.concatenate([x0.real, x0.imag])
    n = len(x0)
    best = value0
    step = 0.25
    for _ in range(iters):
        improved = False
        for k in range(2 * n):
            for d in (step, -step):
                q = p.copy()
                q[k] += d
                x = q[:n] + 1j * q[n:]
                nx = np.linalg.norm(x)
                if nx == 0:
                    continue
                v = section_roots(L, x / nx, tol)[j]
                if sense * (v - best) > 0:
                    p, best, improved = q / nx, v, True
                    break
        if not improved:
            step = max(step / 2, 1e-10)
    return best


def zone_estimates(
    L: MatrixPolynomial,
    samples: int = 500,
    refine_iters: int = 50,
    seed: int = 0,
    tol: float = 1e-8,
    zone_tol: float = 1e-6,
) -> SpectralZones:
    """Inner estimates of the ``ell`` spectral zones of ``L``.

    ``refine_iters=0`` skips the local search.  ``zone_tol`` is stored on the
    result and used by consumers comparing endpoints.
    """
    X = random_unit_vectors(L.n, samples, seed)
    lam = np.array([section_roots(L, x, tol) for x in X])
    intervals = np.empty((L.ell, 2))
    for j in range(L.ell):
        lo, hi = int(np.argmin(lam[:, j])), int(np.argmax(lam[:, j]))
        intervals[j] = lam[lo, j], lam[hi, j]
        if refine_iters > 0:
            intervals[j, 0] = min(intervals[j, 0], _refine(L, X[lo], j, -1, lam[lo, j], refine_iters, tol))
            intervals[j, 1] = max(intervals[j, 1], _refine(L, X[hi], j, +1, lam[hi, j], refine_iters, tol))
    return SpectralZones(intervals, len(X), refine_iters > 0, zone_tol)


def zones_consistent(z: SpectralZones, overlap_tol: Optional[float] = None) -> bool:
    """Consecutive zones overlap in at most one point (up to ``overlap_tol``)."""
    tol = z.tol if overlap_tol is None else overlap_tol
    return bool(np.all(z.upper[:-1] <= z.lower[1:] + tol))


def convex_combination_hyperbolic(
    L: MatrixPolynomial,
    M: MatrixPolynomial,
    samples: int = 500,
    refine_iters: int = 50,
    seed: int = 0,
    tol: float = 1e-8,
    zone_tol: float = 1e-6,
) -> Prop23Verdict:
    """Zone criterion for hyperbolicity of all convex combinations of ``L`` and ``M``."""
    if L.coeffs.shape != M.coeffs.shape:
        raise ShapeError("L and M differ in shape")
    zl = zone_estimates(L, samples, refine_iters, seed, tol, zone_tol)
    zm = zone_estimates(M, samples, refine_iters, seed, tol, zone_tol)
    ztol = max(zl.tol, zm.tol)
    margins, boundary, binding = [], [], None
    for j in range(L.ell - 1):
        lhs = max(zl.upper[j], zm.upper[j])
        rhs = min(zl.lower[j + 1], zm.lower[j + 1])
        margin = float(rhs - lhs)
        margins.append(margin)
        if abs(margin) <= ztol:
            boundary.append(j + 1)
        if margin < -ztol and binding is None:
            binding = j + 1
    return Prop23Verdict(binding is None, binding, margins, boundary, ztol)
