"""Semidefinite feasibility tests for interlacing.

Two linear-matrix-inequality programs decide whether a monic real pair
``(f, h)`` interlaces:

* realization form: with ``h/f = 1 + C (zI - A)^-1 B`` minimal, look for
  ``P > 0`` with ``A P = P A^T`` and ``P C^T = +-B``;
* symmetrizer form: look for ``P > 0`` with ``P C_f = C_f^T P`` and
  ``P C_h = C_h^T P``.  Then ``D = P^(1/2)`` makes both ``D C D^-1``
  symmetric.

Both programs have a linear equality part whose solution set is a small
subspace of symmetric matrices.  The engine extracts that subspace from an
SVD of the stacked constraint operator and maximizes the smallest eigenvalue
over its unit-Frobenius sphere.  A certificate is returned either way; only
``feasible=True`` is a proof, and it is re-checked from scratch.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import NotCoprimeError, PreconditionError, ShapeError, VerificationError
from .interlacing import _check_distinct, _check_monic_pair, are_coprime
from .polycore import MatrixPolynomial, ScalarPolynomial, companion, sym_eigh, sym_eigs

__all__ = [
    "Realization",
    "SymmetrizerCertificate",
    "minimal_realization",
    "symmetric_basis",
    "svec",
    "smat",
    "constraint_nullspace",
    "subspace_max_min_eig",
    "feasibility_realization",
    "feasibility_symmetrizer",
    "sqrtm_psd",
    "congruence_asymmetry",
]

PD_MARGIN = 1e-7
EQ_TOL = 1e-8


@dataclass(frozen=True)
class Realization:
    A: np.ndarray  # ell x ell
    B: np.ndarray  # ell
    C: np.ndarray  # ell

    def transfer(self, z: complex) -> complex:
        ell = self.A.shape[0]
        return 1 + self.C @ np.linalg.solve(z * np.eye(ell) - self.A, self.B)


@dataclass(frozen=True)
class SymmetrizerCertificate:
    """A candidate ``P`` (unit Frobenius norm) and its verified quality.

    ``feasible`` holds iff ``min_eig >= pd_margin`` and
    ``constraint_residual <= eq_tol``.  ``sign`` is the sign of the
    realization-form right-hand side (``P C^T = sign * B`` after rescaling);
    it is 0 for the symmetrizer form.
    """

    P: np.ndarray
    min_eig: float
    constraint_residual: float
    feasible: bool
    pd_margin: float = PD_MARGIN
    eq_tol: float = EQ_TOL
    subspace_dim: int = 0
    sign: int = 0

    def __bool__(self):
        return self.feasible


# --------------------------------------------------------------------------
# realization
# --------------------------------------------------------------------------


def minimal_realization(f: ScalarPolynomial, h: ScalarPolynomial, coprime_rtol: float = 1e-10) -> Realization:
    """Controllable canonical form of ``h/f``: ``A = companion(f)``, ``B = e_ell``, ``C = coeffs(h - f)``."""
    _check_monic_pair(f, h)
    _check_distinct(f, h)
    if not (f.is_real(1e-12) and h.is_real(1e-12)):
        raise PreconditionError("realization needs real coefficients")
    if not are_coprime(f, h, coprime_rtol):
        raise NotCoprimeError("f and h share a root; the realization would not be minimal")
    ell = f.degree
    A = companion(MatrixPolynomial.from_scalar(ScalarPolynomial(f.real_coeffs))).real
    B = np.zeros(ell)
    B[-1] = 1.0
    num = (h - f).coeffs.real
    C = np.zeros(ell)
    C[: len(num)] = num[:ell]
    R = Realization(A, B, C)

    lam_scale = 1.0 + np.abs(f.coeffs).max()
    zs = lam_scale * 1.5 * np.exp(1j * np.pi * (np.arange(2 * ell) + 0.5) / ell)
    got = np.array([R.transfer(z) for z in zs])
    want = np.array([h(z) / f(z) for z in zs])
    if np.abs(got - want).max() > 1e-8 * max(np.abs(want).max(), 1.0):
        raise VerificationError("realization does not reproduce h/f")
    return R


# --------------------------------------------------------------------------
# symmetric-matrix coordinates
# --------------------------------------------------------------------------


def _sym_index(m: int):
    return np.triu_indices(m)


def svec(P: np.ndarray) -> np.ndarray:
    """Isometric coordinates: upper triangle with off-diagonals scaled by sqrt(2)."""
    m = P.shape[0]
    i, j = _sym_index(m)
    w = np.where(i == j, 1.0, np.sqrt(2.0))
    return P[i, j] * w


def smat(v: np.ndarray, m: int) -> np.ndarray:
    i, j = _sym_index(m)
    w = np.where(i == j, 1.0, 1.0 / np.sqrt(2.0))
    P = np.zeros((m, m))
    P[i, j] = v * w
    P[j, i] = v * w
    return P


def symmetric_basis(m: int) -> list[np.ndarray]:
    """Frobenius-orthonormal basis of the m x m symmetric matrices."""
    dim = m * (m + 1) // 2
    return [smat(e, m) for e in np.eye(dim)]


def constraint_nullspace(ops: Sequence, m: int, tol: float) -> list[np.ndarray]:
    """Symmetric ``P`` with ``||op(P)||_F <= tol ||P||_F`` for every linear ``op``.

    Each ``op`` maps an m x m matrix to an array.  Returns right singular
    vectors of the stacked operator with singular value at most ``tol``, so
    any unit combination also meets the bound.
    """
    basis = symmetric_basis(m)
    cols = [np.concatenate([np.ravel(op(E)) for op in ops]) for E in basis]
    K = np.array(cols).T
    _, s, Vt = np.linalg.svd(K, full_matrices=True)
    s_full = np.zeros(Vt.shape[0])
    s_full[: len(s)] = s
    return [smat(v, m) for v, sv in zip(Vt, s_full) if sv <= tol]


# --------------------------------------------------------------------------
# min-eigenvalue maximization
# --------------------------------------------------------------------------


def _min_eig(P: np.ndarray) -> tuple[float, np.ndarray]:
    w, V = sym_eigh(P)
    return float(w[0]), V[:, 0]


def subspace_max_min_eig(
    basis: Sequence[np.ndarray],
    starts: int = 8,
    iters: int = 500,
    seed: int = 0,
) -> tuple[np.ndarray, float]:
    """Approximately maximize ``lambda_min(P)`` over unit-Frobenius ``P`` in ``span(basis)``.

    ``lambda_min`` is concave and positively homogeneous, so for a positive
    optimum this is the maximization of a concave function over the unit
    ball.  Supergradient ascent with backtracking runs from ``starts`` random
    points plus the projection of the identity; the best point wins.  An
    empty basis returns ``(None, -inf)``.
    """
    if len(basis) == 0:
        return None, float("-inf")
    m = basis[0].shape[0]
    if any(E.shape != (m, m) for E in basis):
        raise ShapeError("basis matrices differ in size")
    Q, _ = np.linalg.qr(np.array([svec(E) for E in basis]).T)
    E = [smat(q, m) for q in Q.T]
    k = len(E)

    def value(t):
        P = sum(ti * Ei for ti, Ei in zip(t, E))
        lam, v = _min_eig(P)
        return lam, np.array([v @ Ei @ v for Ei in E])

    rng = np.random.default_rng(seed)
    inits = [np.array([np.trace(Ei) for Ei in E])]
    inits += list(rng.standard_normal((starts, k)))
    if k == 1:
        inits = [np.ones(1), -np.ones(1)]
    best_t, best = None, float("-inf")
    for t in inits:
        nt = np.linalg.norm(t)
        t = t / nt if nt > 0 else np.eye(k)[0]
        lam, g = value(t)
        step = 0.5
        for _ in range(iters if k > 1 else 0):
            cand = t + step * g
            cand /= max(np.linalg.norm(cand), 1.0)
            lam_c, g_c = value(cand)
            if lam_c > lam:
                t, lam, g = cand, lam_c, g_c
                step = min(step * 1.5, 1.0)
            else:
                step *= 0.5
                if step < 1e-12:
                    break
        t = t / np.linalg.norm(t)
        lam = value(t)[0]
        if lam > best:
            best, best_t = lam, t
    P = sum(ti * Ei for ti, Ei in zip(best_t, E))
    P = 0.5 * (P + P.T)
    P /= np.linalg.norm(P)
    return P, _min_eig(P)[0]


# --------------------------------------------------------------------------
# the two programs
# --------------------------------------------------------------------------


def _certificate(P, ops, pd_margin, eq_tol, dim, sign=0) -> SymmetrizerCertificate:
    if P is None:
        return SymmetrizerCertificate(np.zeros((0, 0)), float("-inf"), float("inf"), False, pd_margin, eq_tol, 0, 0)
    P = 0.5 * (P + P.T)
    P = P / np.linalg.norm(P)
    min_eig = float(sym_eigs(P)[0])
    residual = max(float(np.linalg.norm(op(P))) for op in ops)
    feasible = min_eig >= pd_margin and residual <= eq_tol
    return SymmetrizerCertificate(P, min_eig, residual, feasible, pd_margin, eq_tol, dim, sign)


def feasibility_realization(
    R: Realization, pd_margin: float = PD_MARGIN, eq_tol: float = EQ_TOL, seed: int = 0
) -> SymmetrizerCertificate:
    """Search for ``P > 0`` with ``A P = P A^T`` and ``P C^T`` parallel to ``B``.

    ``P C^T = s B`` is homogenized by projecting out ``B``; a positive
    definite solution forces ``s != 0`` and ``P / |s|`` then solves
    ``P C^T = sign(s) B``, covering residues of either common sign.
    """
    A, B, C = R.A, R.B, R.C
    ell = A.shape[0]
    b = B / np.linalg.norm(B)
    proj = np.eye(ell) - np.outer(b, b)
    ops = [lambda P: A @ P - P @ A.T, lambda P: proj @ (P @ C)]
    basis = constraint_nullspace(ops, ell, eq_tol / 10)
    P, _ = subspace_max_min_eig(basis, seed=seed)
    sign = 0
    if P is not None:
        s = b @ (P @ C)
        sign = int(np.sign(s)) if abs(s) > 0 else 0
    return _certificate(P, ops, pd_margin, eq_tol, len(basis), sign)


def feasibility_symmetrizer(
    Cf, Ch, pd_margin: float = PD_MARGIN, eq_tol: float = EQ_TOL, seed: int = 0
) -> SymmetrizerCertificate:
    """Search for ``P > 0`` with ``P Cf = Cf^T P`` and ``P Ch = Ch^T P``."""
    Cf = np.asarray(Cf)
    Ch = np.asarray(Ch)
    if Cf.shape != Ch.shape or Cf.ndim != 2 or Cf.shape[0] != Cf.shape[1]:
        raise ShapeError("Cf and Ch must be square and of equal size")
    if np.abs(np.imag(Cf)).max() > 0 or np.abs(np.imag(Ch)).max() > 0:
        raise PreconditionError("companion matrices must be real")
    Cf, Ch = np.real(Cf).astype(float), np.real(Ch).astype(float)
    ops = [lambda P: P @ Cf - Cf.T @ P, lambda P: P @ Ch - Ch.T @ P]
    basis = constraint_nullspace(ops, Cf.shape[0], eq_tol / 10)
    P, _ = subspace_max_min_eig(basis, seed=seed)
    return _certificate(P, ops, pd_margin, eq_tol, len(basis))


def sqrtm_psd(P: np.ndarray) -> np.ndarray:
    """Symmetric square root from the eigendecomposition."""
    w, V = sym_eigh(P)
    if w[0] < 0:
        raise PreconditionError("matrix is not positive semidefinite")
    return (V * np.sqrt(w)) @ V.T


def congruence_asymmetry(P: np.ndarray, C: np.ndarray) -> float:
    """``||S - S^T||_F / ||S||_F`` for ``S = D C D^-1``, ``D = P^(1/2)``."""
    D = sqrtm_psd(P)
    S = D @ np.real(C) @ np.linalg.inv(D)
    return float(np.linalg.norm(S - S.T) / max(np.linalg.norm(S), 1e-300))
