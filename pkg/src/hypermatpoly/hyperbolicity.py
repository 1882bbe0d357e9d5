"""Hyperbolicity tests for monic matrix polynomials.

``L`` is *weakly hyperbolic* when ``det L(z)`` has only real roots, and
*hyperbolic* when every scalar section ``<L(z)x, x>`` does.  The first is a
finite check; the second quantifies over all nonzero ``x`` and is decided
here by seeded Monte Carlo sampling, so a positive answer only means that no
counterexample was found.

The rest of the module concerns pairs ``(L, M)``: weak hyperbolicity of the
whole real line of affine combinations, the three-variable determinant
``det(alpha C_L + beta C_M - gamma I)`` built from companion matrices, and
comparison of combination roots with eigenvalues of symmetric pencils.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .config import DEFAULT_ALPHA_GRID, DEFAULT_T_GRID
from .errors import ShapeError
from .polycore import (
    MatrixPolynomial,
    ScalarPolynomial,
    affine_combine,
    companion,
    derivative,
    det_poly,
    gen_eigs,
    poly_roots,
    real_root_classify,
    sym_eigs,
)

__all__ = [
    "HyperbolicityVerdict",
    "StarReport",
    "CoincidenceReport",
    "DegenerationCheck",
    "is_weakly_hyperbolic",
    "scalar_section",
    "random_unit_vectors",
    "is_hyperbolic",
    "condition_star",
    "direction_poly",
    "degeneration_check",
    "verify_coincidence",
    "derivative_pencil",
    "derivative_pencil_check",
]


@dataclass(frozen=True)
class HyperbolicityVerdict:
    """Outcome of the sampled hyperbolicity test.

    ``hyperbolic=True`` is one-sided: none of the sampled sections had a
    non-real root.  ``witness`` is a vector whose section failed, or ``None``.
    """

    hyperbolic: bool
    witness: Optional[np.ndarray] = None
    reason: str = ""
    samples: int = 0

    def __bool__(self):
        return self.hyperbolic


@dataclass(frozen=True)
class StarReport:
    alpha_grid: tuple[float, ...]
    failures: list[tuple[float, np.ndarray]]
    leading_diff_spectrum: np.ndarray
    leading_diff_real: bool
    verdict: bool

    def __bool__(self):
        return self.verdict


@dataclass(frozen=True)
class CoincidenceReport:
    alpha_grid: tuple[float, ...]
    max_mismatch: float
    per_alpha: list[float] = field(default_factory=list)
    tol: float = 1e-7
    verdict: bool = False

    def __bool__(self):
        return self.verdict


def is_weakly_hyperbolic(L: MatrixPolynomial, tol: float = 1e-8) -> bool:
    """True iff ``det L(z)`` has ``n * ell`` real roots."""
    return real_root_classify(poly_roots(det_poly(L)), tol).all_real


def scalar_section(L: MatrixPolynomial, x) -> ScalarPolynomial:
    """The scalar polynomial ``<L(z)x, x>`` for ``x`` normalized to unit length."""
    x = np.asarray(x, dtype=complex).ravel()
    if x.shape != (L.n,):
        raise ShapeError(f"vector of length {x.size} for n={L.n}")
    nx = np.linalg.norm(x)
    if nx == 0:
        raise ValueError("section along the zero vector")
    if abs(nx - 1) > 1e-12:
        x = x / nx
    c = np.einsum("i,jik,k->j", x.conj(), L.coeffs, x)
    c[-1] = 1.0
    return ScalarPolynomial(c)


def random_unit_vectors(n: int, samples: int, seed: int = 0) -> np.ndarray:
    """``samples`` complex Gaussian unit vectors followed by the ``n`` basis vectors."""
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((samples, n)) + 1j * rng.standard_normal((samples, n))
    X /= np.linalg.norm(X, axis=1, keepdims=True)
    return np.vstack([X, np.eye(n, dtype=complex)])


def _hermitian_witness(L: MatrixPolynomial, tol: float) -> Optional[int]:
    for j, Lj in enumerate(L.coeffs):
        if np.abs(Lj - Lj.conj().T).max() > tol * (1 + np.abs(Lj).max()):
            return j
    return None


def is_hyperbolic(
    L: MatrixPolynomial, samples: int = 200, seed: int = 0, tol: float = 1e-8
) -> HyperbolicityVerdict:
    """Sampled hyperbolicity test.

    Hyperbolic polynomials have Hermitian coefficients, so a non-Hermitian
    coefficient is reported at once (``witness`` is then the coefficient
    index as a one-element array).
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    j = _hermitian_witness(L, tol)
    if j is not None:
        return HyperbolicityVerdict(False, np.array([j]), f"coefficient L_{j} is not Hermitian")
    X = random_unit_vectors(L.n, samples, seed)
    for x in X:
        if not real_root_classify(poly_roots(scalar_section(L, x)), tol).all_real:
            return HyperbolicityVerdict(False, x, "section with non-real roots", len(X))
    return HyperbolicityVerdict(True, None, "no counterexample found", len(X))


def condition_star(
    L: MatrixPolynomial,
    M: MatrixPolynomial,
    alpha_grid: Sequence[float] = DEFAULT_ALPHA_GRID,
    tol: float = 1e-8,
) -> StarReport:
    """Weak hyperbolicity of ``alpha L + (1 - alpha) M`` over a grid of real alpha.

    Also checks that ``L_{ell-1} - M_{ell-1}`` has real spectrum, which
    governs the ``alpha + beta = 0`` direction of the companion pencil.
    """
    if L.coeffs.shape != M.coeffs.shape:
        raise ShapeError(f"shape mismatch {L.coeffs.shape} vs {M.coeffs.shape}")
    grid = tuple(float(a) for a in alpha_grid)
    if not grid:
        raise ValueError("empty alpha grid")
    failures = []
    for a in grid:
        roots = poly_roots(det_poly(affine_combine(L, M, a)))
        if not real_root_classify(roots, tol).all_real:
            failures.append((a, roots[np.abs(roots.imag) > tol * (1 + np.abs(roots))]))
    diff = L.coeffs[-2] - M.coeffs[-2]
    spec = gen_eigs(diff)
    diff_real = real_root_classify(spec, tol).all_real
    return StarReport(grid, failures, spec, diff_real, not failures and diff_real)


def _pencil_det(K: np.ndarray) -> ScalarPolynomial:
    """``det(K - gamma I)`` as a polynomial in gamma."""
    N = K.shape[0]
    monic = det_poly(MatrixPolynomial.pencil(K))
    return monic * (-1) ** N


def direction_poly(L: MatrixPolynomial, M: MatrixPolynomial, alpha: float, beta: float) -> ScalarPolynomial:
    """``det(alpha C_L + beta C_M - gamma I)`` as a polynomial in gamma."""
    if L.coeffs.shape != M.coeffs.shape:
        raise ShapeError(f"shape mismatch {L.coeffs.shape} vs {M.coeffs.shape}")
    return _pencil_det(alpha * companion(L) + beta * companion(M))


@dataclass(frozen=True)
class DegenerationCheck:
    """Comparison of ``direction_poly(L, M, a, -a)`` with closed forms.

    ``literal`` is ``gamma^(n(ell-1)) det(a D - gamma I)`` with
    ``D = L_{ell-1} - M_{ell-1}``; ``reflected`` is the same with ``-a D``,
    the block-triangular evaluation for the companion layout used here.
    ``*_sign`` is the global sign that matched, or 0 if neither did.
    """

    computed: ScalarPolynomial
    literal: ScalarPolynomial
    reflected: ScalarPolynomial
    literal_sign: int
    reflected_sign: int


def _match_sign(p: ScalarPolynomial, q: ScalarPolynomial, rtol: float) -> int:
    if p.allclose(q, rtol):
        return 1
    if p.allclose(-q, rtol):
        return -1
    return 0


def degeneration_check(
    L: MatrixPolynomial, M: MatrixPolynomial, alpha: float, rtol: float = 1e-8
) -> DegenerationCheck:
    n, ell = L.n, L.ell
    D = L.coeffs[-2] - M.coeffs[-2]
    zeros = ScalarPolynomial(np.r_[np.zeros(n * (ell - 1)), 1.0])
    computed = direction_poly(L, M, alpha, -alpha)
    literal = zeros * _pencil_det(alpha * D)
    reflected = zeros * _pencil_det(-alpha * D)
    return DegenerationCheck(
        computed,
        literal,
        reflected,
        _match_sign(computed, literal, rtol),
        _match_sign(computed, reflected, rtol),
    )


def verify_coincidence(
    L: MatrixPolynomial,
    M: MatrixPolynomial,
    A,
    B,
    alpha_grid: Sequence[float] = DEFAULT_ALPHA_GRID,
    tol: float = 1e-7,
    root_tol: float = 1e-8,
) -> CoincidenceReport:
    """Compare roots of ``det(alpha L + (1-alpha) M)`` with ``eig(alpha A + (1-alpha) B)``.

    Both lists are sorted and compared entry by entry; non-real roots at some
    alpha count as an infinite mismatch.
    """
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    N = L.n * L.ell
    if A.shape != (N, N) or B.shape != (N, N):
        raise ShapeError(f"A, B must be {N}x{N}")
    if L.coeffs.shape != M.coeffs.shape:
        raise ShapeError("L and M differ in shape")
    grid = tuple(float(a) for a in alpha_grid)
    per = []
    for a in grid:
        verdict = real_root_classify(poly_roots(det_poly(affine_combine(L, M, a))), root_tol)
        if not verdict.all_real:
            per.append(float("inf"))
            continue
        eigs = sym_eigs(a * A + (1 - a) * B)
        per.append(float(np.abs(verdict.reals - eigs).max(initial=0.0)))
    worst = max(per, default=0.0)
    return CoincidenceReport(grid, worst, per, tol, worst <= tol)


def derivative_pencil(L: MatrixPolynomial, t: float) -> MatrixPolynomial:
    """``L + t L'``; monic because ``L'`` has lower degree."""
    c = L.coeffs.copy()
    c[:-1] += t * derivative(L)
    return MatrixPolynomial(c)


def derivative_pencil_check(
    L: MatrixPolynomial,
    t_grid: Sequence[float] = DEFAULT_T_GRID,
    samples: int = 200,
    seed: int = 0,
    tol: float = 1e-8,
) -> bool:
    """Sampled hyperbolicity of ``L + t L'`` for every ``t`` in the grid.

    Returns False straight away when ``L`` itself fails the sampled test.
    """
    if not is_hyperbolic(L, samples, seed, tol):
        return False
    return all(is_hyperbolic(derivative_pencil(L, t), samples, seed, tol) for t in t_grid)
