"""Polynomial value types, companion linearization and dense eigensolvers.

Matrices and spectra are plain numpy arrays.  The two polynomial types are
immutable wrappers around coefficient arrays stored in ascending degree order,
so ``coeffs[j]`` multiplies ``z**j``.

The eigensolvers are written out here rather than delegated to LAPACK so that
iteration caps and failure modes are under our control:

* :func:`gen_eigs` -- balancing, Householder Hessenberg reduction, then
  complex single-shift QR with Wilkinson shifts and deflation.
* :func:`sym_eigs` -- cyclic Jacobi rotations for real symmetric input.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import ConvergenceError, NotMonicError, ShapeError

EPS = np.finfo(float).eps

__all__ = [
    "ScalarPolynomial",
    "MatrixPolynomial",
    "RootVerdict",
    "evaluate",
    "derivative",
    "affine_combine",
    "companion",
    "det_poly",
    "sym_eigs",
    "sym_eigh",
    "gen_eigs",
    "poly_roots",
    "real_root_classify",
    "spectra_distance",
]


# --------------------------------------------------------------------------
# value types
# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ScalarPolynomial:
    """Univariate complex polynomial, coefficients in ascending order.

    Trailing (highest-degree) exact zeros are trimmed on construction; the
    zero polynomial is kept as the single coefficient ``0``.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=complex)).copy()
        if c.ndim != 1:
            raise ShapeError("polynomial coefficients must be one-dimensional")
        nz = np.flatnonzero(c)
        c = c[: nz[-1] + 1] if nz.size else np.zeros(1, dtype=complex)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_roots(cls, roots: Iterable[complex]) -> "ScalarPolynomial":
        c = np.ones(1, dtype=complex)
        for r in roots:
            c = np.concatenate([[0], c]) - r * np.concatenate([c, [0]])
        return cls(c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> complex:
        return complex(self.coeffs[-1])

    @property
    def is_zero(self) -> bool:
        return self.degree == 0 and self.coeffs[0] == 0

    @property
    def is_monic(self) -> bool:
        return self.leading == 1

    def is_real(self, tol: float = 0.0) -> bool:
        return bool(np.all(np.abs(self.coeffs.imag) <= tol * (1 + np.abs(self.coeffs).max())))

    @property
    def real_coeffs(self) -> np.ndarray:
        return self.coeffs.real.copy()

    def monic(self) -> "ScalarPolynomial":
        if self.is_zero:
            raise ValueError("the zero polynomial has no monic normalization")
        c = self.coeffs / self.coeffs[-1]
        c[-1] = 1.0
        return ScalarPolynomial(c)

    def trim(self, rtol: float) -> "ScalarPolynomial":
        """Drop leading coefficients below ``rtol`` times the largest one."""
        c = self.coeffs
        scale = np.abs(c).max()
        k = len(c)
        while k > 1 and abs(c[k - 1]) <= rtol * scale:
            k -= 1
        return ScalarPolynomial(c[:k])

    def derivative(self) -> "ScalarPolynomial":
        if self.degree == 0:
            return ScalarPolynomial([0])
        return ScalarPolynomial(self.coeffs[1:] * np.arange(1, len(self.coeffs)))

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.zeros_like(z)
        for c in self.coeffs[::-1]:
            out = out * z + c
        return out if out.ndim else complex(out)

    def _binary(self, other, sign):
        other = other if isinstance(other, ScalarPolynomial) else ScalarPolynomial([other])
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        out = np.zeros(n, dtype=complex)
        out[: len(a)] += a
        out[: len(b)] += sign * b
        return ScalarPolynomial(out)

    def __add__(self, other):
        return self._binary(other, 1)

    def __sub__(self, other):
        return self._binary(other, -1)

    def __mul__(self, other):
        if isinstance(other, ScalarPolynomial):
            return ScalarPolynomial(np.convolve(self.coeffs, other.coeffs))
        return ScalarPolynomial(self.coeffs * other)

    __rmul__ = __mul__

    def __neg__(self):
        return ScalarPolynomial(-self.coeffs)

    def allclose(self, other: "ScalarPolynomial", rtol: float = 1e-8) -> bool:
        """Coefficientwise comparison relative to the larger coefficient norm."""
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        pa = np.zeros(n, complex)
        pb = np.zeros(n, complex)
        pa[: len(a)] = a
        pb[: len(b)] = b
        scale = max(np.abs(pa).max(), np.abs(pb).max(), 1.0)
        return bool(np.abs(pa - pb).max() <= rtol * scale)

    def __repr__(self):
        terms = ", ".join(f"{c:.6g}" for c in self.coeffs)
        return f"ScalarPolynomial([{terms}])"


@dataclass(frozen=True, eq=False)
class MatrixPolynomial:
    """Monic n x n matrix polynomial ``sum_j L_j z**j`` with ``L_ell = I``.

    ``coeffs`` has shape ``(ell + 1, n, n)``.  A leading coefficient within
    ``1e-12`` of the identity is snapped to the exact identity.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex)
        if c.ndim == 1:
            # scalar polynomial given as a flat coefficient list
            c = c[:, None, None]
        if c.ndim != 3 or c.shape[1] != c.shape[2] or c.shape[0] < 1:
            raise ShapeError(f"expected (ell+1, n, n) coefficients, got shape {c.shape}")
        n = c.shape[1]
        if not np.allclose(c[-1], np.eye(n), rtol=0, atol=1e-12):
            raise NotMonicError("leading coefficient is not the identity")
        c[-1] = np.eye(n)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_scalar(cls, f: ScalarPolynomial) -> "MatrixPolynomial":
        if not f.is_monic:
            raise NotMonicError("scalar polynomial is not monic")
        return cls(f.coeffs[:, None, None])

    @classmethod
    def diagonal(cls, entries: Sequence[ScalarPolynomial]) -> "MatrixPolynomial":
        """``diag(f_1, ..., f_n)`` for monic scalars of a common degree."""
        degs = {f.degree for f in entries}
        if len(degs) != 1:
            raise ShapeError("diagonal entries must share one degree")
        (ell,) = degs
        n = len(entries)
        c = np.zeros((ell + 1, n, n), dtype=complex)
        for i, f in enumerate(entries):
            c[:, i, i] = f.coeffs
        return cls(c)

    @classmethod
    def pencil(cls, H) -> "MatrixPolynomial":
        """``zI - H``."""
        H = np.asarray(H, dtype=complex)
        return cls(np.stack([-H, np.eye(H.shape[0])]))

    @property
    def n(self) -> int:
        return self.coeffs.shape[1]

    @property
    def ell(self) -> int:
        return self.coeffs.shape[0] - 1

    def __call__(self, z: complex) -> np.ndarray:
        return evaluate(self, z)

    def entry(self, i: int, j: int) -> ScalarPolynomial:
        return ScalarPolynomial(self.coeffs[:, i, j])

    def is_diagonal(self, tol: float = 0.0) -> bool:
        off = self.coeffs * (1 - np.eye(self.n))
        return bool(np.abs(off).max(initial=0.0) <= tol)

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        for Lj in self.coeffs:
            if np.abs(Lj - Lj.conj().T).max() > tol * (1 + np.abs(Lj).max()):
                return False
        return True

    def shifted(self, c: float) -> "MatrixPolynomial":
        """``z -> L(z - c)``; roots and zones move right by ``c``."""
        out = np.zeros_like(self.coeffs)
        # (z - c)^j expanded by the binomial theorem
        for j, Lj in enumerate(self.coeffs):
            for k in range(j + 1):
                out[k] += math.comb(j, k) * (-c) ** (j - k) * Lj
        return MatrixPolynomial(out)


class RootVerdict(NamedTuple):
    all_real: bool
    reals: np.ndarray


# --------------------------------------------------------------------------
# polynomial operations
# --------------------------------------------------------------------------


def evaluate(P: MatrixPolynomial, z: complex) -> np.ndarray:
    """Horner evaluation of ``P`` at ``z``."""
    out = np.zeros((P.n, P.n), dtype=complex)
    for Lj in P.coeffs[::-1]:
        out = out * z + Lj
    return out


def derivative(P: MatrixPolynomial) -> np.ndarray:
    """Coefficients ``(j+1) L_{j+1}`` of ``P'``, shape ``(ell, n, n)``.

    ``P'`` has leading coefficient ``ell * I`` and is therefore not a
    :class:`MatrixPolynomial`; callers combine it with monic polynomials.
    """
    if P.ell < 1:
        raise ShapeError("derivative of a degree-0 matrix polynomial")
    j = np.arange(1, P.ell + 1)[:, None, None]
    return P.coeffs[1:] * j


def affine_combine(L: MatrixPolynomial, M: MatrixPolynomial, alpha: float) -> MatrixPolynomial:
    """``alpha L + (1 - alpha) M`` (again monic)."""
    if L.coeffs.shape != M.coeffs.shape:
        raise ShapeError(f"shape mismatch {L.coeffs.shape} vs {M.coeffs.shape}")
    c = alpha * L.coeffs + (1 - alpha) * M.coeffs
    c[-1] = np.eye(L.n)
    return MatrixPolynomial(c)


def companion(P: MatrixPolynomial) -> np.ndarray:
    """Block companion matrix of a monic matrix polynomial.

    Identity blocks on the first block superdiagonal, ``-L_0 .. -L_{ell-1}``
    along the last block row.  For ``ell == 1`` this is just ``-L_0``.
    """
    n, ell = P.n, P.ell
    N = n * ell
    C = np.zeros((N, N), dtype=complex)
    if ell > 1:
        C[: N - n, n:] = np.eye(N - n)
    for j in range(ell):
        C[N - n :, j * n : (j + 1) * n] = -P.coeffs[j]
    return C


def _root_radius_bound(P: MatrixPolynomial) -> float:
    """Fujiwara-type bound ``2 max_j ||L_j||^(1/(ell-j))`` on root moduli."""
    ell = P.ell
    norms = [np.linalg.norm(P.coeffs[j], 2) ** (1.0 / (ell - j)) for j in range(ell)]
    return 2.0 * max(norms, default=0.0)


def _interpolate_det(P: MatrixPolynomial, radius: float) -> np.ndarray:
    """Monomial coefficients of ``det P(z)`` from samples on ``|z| = radius``."""
    N = P.n * P.ell
    # keep radius**N far from underflow; roots below the floor are then
    # resolved only to absolute accuracy, which is all double precision offers
    radius = max(radius, np.finfo(float).tiny ** (1.0 / (2 * N)))
    w = np.exp(2j * np.pi * np.arange(N + 1) / (N + 1))
    values = np.array([np.linalg.det(evaluate(P, radius * x)) for x in w])
    return np.fft.fft(values) / (N + 1) / radius ** np.arange(N + 1)


def _balanced_radius(coeffs: np.ndarray, radius: float) -> float:
    """Geometric mean modulus of the nonzero roots, read off the coefficients."""
    N = len(coeffs) - 1
    mags = np.abs(coeffs) * radius ** np.arange(N + 1)
    k = int(np.argmax(mags > 1e-12 * mags.max()))
    if k >= N or coeffs[k] == 0:
        return radius
    return float((abs(coeffs[k]) / abs(coeffs[N])) ** (1.0 / (N - k)))


def _det_interpolant(P: MatrixPolynomial) -> np.ndarray:
    N = P.n * P.ell
    bound = _root_radius_bound(P)
    if bound == 0:
        return np.r_[np.zeros(N), 1.0]
    geo = abs(np.linalg.det(P.coeffs[0])) ** (1.0 / N)
    if geo > 1e-8 * bound:
        return _interpolate_det(P, geo)
    first = _interpolate_det(P, bound)
    return _interpolate_det(P, max(_balanced_radius(first, bound), 1e-8 * bound))


def det_poly(P: MatrixPolynomial) -> ScalarPolynomial:
    """``det P(z)`` as a monic polynomial of degree ``n * ell``.

    Computed by sampling ``z -> det P(z)`` at the ``n ell + 1`` roots of unity
    scaled to radius ``r`` and inverting with an FFT.  ``r`` is the geometric
    mean of the root moduli, ``|det L_0|^(1/(n ell))``, which balances the
    coefficient magnitudes; when ``det L_0`` vanishes a first pass on a root
    bound estimates the geometric mean of the nonzero roots instead.
    """
    if P.n == 1:
        return ScalarPolynomial(P.coeffs[:, 0, 0])
    if P.ell == 0:
        return ScalarPolynomial([1])
    mono = _det_interpolant(P)
    out = mono / mono[-1]
    out[-1] = 1.0
    return ScalarPolynomial(out)


def det_poly_leading(P: MatrixPolynomial) -> complex:
    """Leading coefficient of the interpolant before monic normalization (ideally 1)."""
    if P.n == 1 or P.ell == 0:
        return 1.0 + 0j
    return complex(_det_interpolant(P)[-1])


# --------------------------------------------------------------------------
# symmetric eigensolver: cyclic Jacobi
# --------------------------------------------------------------------------


def sym_eigh(S, max_sweeps: int = 60) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvectors of real symmetric ``S``."""
    A = np.array(S, dtype=float)
    m = A.shape[0]
    if A.shape != (m, m):
        raise ShapeError("sym_eigh needs a square matrix")
    if not np.array_equal(A, A.T):
        A = 0.5 * (A + A.T)
    V = np.eye(m)
    scale = np.linalg.norm(A)
    if m <= 1 or scale == 0:
        return np.diag(A).copy(), V
    for _ in range(max_sweeps):
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off <= EPS * scale:
            break
        for p in range(m - 1):
            for q in range(p + 1, m):
                apq = A[p, q]
                if abs(apq) <= 1e-300 or abs(apq) <= 0.1 * EPS * min(abs(A[p, p]), abs(A[q, q])):
                    A[p, q] = A[q, p] = 0.0
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = np.copysign(1.0, theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                ap = A[:, p].copy()
                aq = A[:, q].copy()
                A[:, p] = c * ap - s * aq
                A[:, q] = s * ap + c * aq
                rp = A[p, :].copy()
                rq = A[q, :].copy()
                A[p, :] = c * rp - s * rq
                A[q, :] = s * rp + c * rq
                A[p, q] = A[q, p] = 0.0
                vp = V[:, p].copy()
                V[:, p] = c * vp - s * V[:, q]
                V[:, q] = s * vp + c * V[:, q]
    else:
        raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")
    w = np.diag(A).copy()
    order = np.argsort(w, kind="stable")
    return w[order], V[:, order]


def sym_eigs(S) -> np.ndarray:
    """All eigenvalues of a real symmetric matrix, sorted non-decreasing."""
    return sym_eigh(S)[0]


# --------------------------------------------------------------------------
# general eigensolver: balance -> Hessenberg -> shifted QR
# --------------------------------------------------------------------------


def _balance(A: np.ndarray) -> np.ndarray:
    """Parlett-Reinsch diagonal scaling by powers of two."""
    A = A.copy()
    m = A.shape[0]
    radix = 2.0
    converged = False
    while not converged:
        converged = True
        absA = np.abs(A)
        np.fill_diagonal(absA, 0.0)
        for i in range(m):
            c = absA[:, i].sum()
            r = absA[i, :].sum()
            if c == 0 or r == 0:
                continue
            g = r / radix
            f = 1.0
            s = c + r
            while c < g:
                f *= radix
                c *= radix * radix
            g = r * radix
            while c > g:
                f /= radix
                c /= radix * radix
            if (c + r) / f < 0.95 * s:
                converged = False
                A[i, :] /= f
                A[:, i] *= f
                absA[i, :] /= f
                absA[:, i] *= f
    return A


def _hessenberg(A: np.ndarray) -> np.ndarray:
    H = A.copy()
    m = H.shape[0]
    for k in range(m - 2):
        x = H[k + 1 :, k]
        nx = np.linalg.norm(x)
        if nx == 0:
            continue
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        v = x.copy()
        v[0] += phase * nx
        v /= np.linalg.norm(v)
        H[k + 1 :, :] -= 2.0 * np.outer(v, v.conj() @ H[k + 1 :, :])
        H[:, k + 1 :] -= 2.0 * np.outer(H[:, k + 1 :] @ v, v.conj())
        H[k + 2 :, k] = 0.0
    return H


def _eig2(a, b, c, d) -> tuple[complex, complex]:
    half_tr = 0.5 * (a + d)
    disc = np.sqrt(complex(0.25 * (a - d) ** 2 + b * c))
    x = half_tr + disc if abs(half_tr + disc) >= abs(half_tr - disc) else half_tr - disc
    det = a * d - b * c
    y = det / x if x != 0 else half_tr
    return complex(x), complex(y)


def gen_eigs(M, max_sweeps: int | None = None) -> np.ndarray:
    """Eigenvalues of a square complex matrix (unordered multiset).

    Raises :class:`ConvergenceError` after ``30 m`` QR sweeps, or if the
    eigenvalue sum disagrees with the trace beyond rounding.
    """
    A = np.array(M, dtype=complex)
    m = A.shape[0]
    if A.ndim != 2 or A.shape != (m, m):
        raise ShapeError("gen_eigs needs a square matrix")
    if m == 0:
        return np.zeros(0, dtype=complex)
    if not np.all(np.isfinite(A)):
        raise ConvergenceError("non-finite matrix entries")
    cap = 30 * m if max_sweeps is None else max_sweeps
    H = _hessenberg(_balance(A))
    eig = np.zeros(m, dtype=complex)
    hi = m - 1
    sweeps = 0
    its = 0
    while hi >= 0:
        if hi == 0:
            eig[0] = H[0, 0]
            break
        l = hi
        while l > 0:
            s = abs(H[l - 1, l - 1]) + abs(H[l, l])
            if s == 0:
                s = np.abs(H[: hi + 1, : hi + 1]).sum()
            if abs(H[l, l - 1]) <= EPS * s:
                H[l, l - 1] = 0.0
                break
            l -= 1
        if l == hi:
            eig[hi] = H[hi, hi]
            hi -= 1
            its = 0
            continue
        if l == hi - 1:
            eig[hi - 1], eig[hi] = _eig2(H[hi - 1, hi - 1], H[hi - 1, hi], H[hi, hi - 1], H[hi, hi])
            hi -= 2
            its = 0
            continue
        if sweeps >= cap:
            raise ConvergenceError(f"shifted QR did not converge in {cap} sweeps (m={m})")
        sweeps += 1
        its += 1
        if its % 10 == 0:
            # exceptional shift to break cycles
            mu = H[hi, hi] + abs(H[hi, hi - 1].real) + abs(H[hi - 1, hi - 2].real)
        else:
            a, b, c, d = H[hi - 1, hi - 1], H[hi - 1, hi], H[hi, hi - 1], H[hi, hi]
            e1, e2 = _eig2(a, b, c, d)
            mu = e1 if abs(e1 - d) < abs(e2 - d) else e2
        W = H[l : hi + 1, l : hi + 1]
        k = W.shape[0]
        W[np.diag_indices(k)] -= mu
        rots = []
        for i in range(k - 1):
            a, b = W[i, i], W[i + 1, i]
            r = np.hypot(abs(a), abs(b))
            if r == 0:
                rots.append(None)
                continue
            c, s = a / r, b / r
            G = np.array([[c.conjugate(), s.conjugate()], [-s, c]])
            W[i : i + 2, i:] = G @ W[i : i + 2, i:]
            W[i + 1, i] = 0.0
            rots.append(G)
        for i, G in enumerate(rots):
            if G is None:
                continue
            W[: i + 2, i : i + 2] = W[: i + 2, i : i + 2] @ G.conj().T
        W[np.diag_indices(k)] += mu
    scale = np.abs(A).sum() + 1.0
    if abs(eig.sum() - np.trace(A)) > 1e3 * m * EPS * scale:
        raise ConvergenceError("eigenvalue sum disagrees with the trace")
    return eig


def poly_roots(f: ScalarPolynomial) -> np.ndarray:
    """Roots of ``f`` as eigenvalues of the scalar companion matrix."""
    if f.is_zero:
        raise ValueError("the zero polynomial has no finite root set")
    if f.degree == 0:
        return np.zeros(0, dtype=complex)
    g = f.monic()
    return gen_eigs(companion(MatrixPolynomial.from_scalar(g)))


def real_root_classify(roots, tol: float = 1e-8) -> RootVerdict:
    """Decide whether every root is real: ``|Im z| <= tol (1 + |z|)``.

    ``reals`` holds the sorted real parts of all roots when they are all real,
    otherwise of the subset that passes the test.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    z = np.asarray(roots, dtype=complex).ravel()
    ok = np.abs(z.imag) <= tol * (1 + np.abs(z))
    reals = np.sort(z.real[ok])
    return RootVerdict(bool(ok.all()), reals)


def spectra_distance(a, b) -> float:
    """Max elementwise distance between two multisets under optimal matching.

    The matching minimizes the summed distance (Hungarian algorithm); sorting
    by (Re, Im) alone is unstable for conjugate pairs whose real parts agree
    to rounding.
    """
    a = np.asarray(a, dtype=complex).ravel()
    b = np.asarray(b, dtype=complex).ravel()
    if a.size != b.size:
        return float("inf")
    if a.size == 0:
        return 0.0
    cost = np.abs(a[:, None] - b[None, :])
    r, c = linear_sum_assignment(cost)
    return float(cost[r, c].max())
