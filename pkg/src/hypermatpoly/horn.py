"""Horn triples and eigenvalue-sum inequalities for determinant roots.

Eigenvalues are indexed in non-decreasing order throughout.  A triple
``(U, S, T)`` of equal-size subsets of ``{1..m}`` is a Horn triple when

    sum_{i in U} lambda_i(X + Y) <= sum_{j in S} lambda_j(X) + sum_{k in T} lambda_k(Y)

for every pair of Hermitian ``m x m`` matrices.  Triples are generated from
the classical recursive description (stated for non-increasing order and
converted by ``i -> m + 1 - i``) and cross-checked by random sampling.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Optional

import numpy as np

from .errors import NonRealRootError, ShapeError
from .polycore import MatrixPolynomial, affine_combine, det_poly, poly_roots, real_root_classify

__all__ = [
    "HornTriple",
    "DVector",
    "Theorem24Verdict",
    "MAX_M",
    "bar",
    "d_vector",
    "horn_triples",
    "candidate_triples",
    "empirical_triple_filter",
    "verify_theorem24",
    "theorem24_sweep",
]

MAX_M = 5


def _check_set(T: Iterable[int], m: int) -> tuple[int, ...]:
    T = tuple(int(i) for i in T)
    if any(i < 1 or i > m for i in T):
        raise ValueError(f"index out of range 1..{m}: {T}")
    if any(a >= b for a, b in zip(T, T[1:])):
        raise ValueError(f"indices must be strictly increasing: {T}")
    return T


@dataclass(frozen=True, order=True)
class HornTriple:
    U: tuple[int, ...]
    S: tuple[int, ...]
    T: tuple[int, ...]
    m: int

    def __post_init__(self):
        for name in ("U", "S", "T"):
            object.__setattr__(self, name, _check_set(getattr(self, name), self.m))
        if not (len(self.U) == len(self.S) == len(self.T) >= 1):
            raise ValueError("U, S, T must be nonempty and of equal size")

    @property
    def r(self) -> int:
        return len(self.U)

    def swapped(self) -> "HornTriple":
        """The same inequality with the roles of the two summands exchanged."""
        return HornTriple(self.U, self.T, self.S, self.m)

    def as_lists(self) -> list[list[int]]:
        return [list(self.U), list(self.S), list(self.T)]


@dataclass(frozen=True)
class DVector:
    values: np.ndarray

    def __post_init__(self):
        if np.any(np.diff(self.values) < 0):
            raise ValueError("d-vector must be non-decreasing")

    def __len__(self):
        return len(self.values)

    def sum(self, idx: Iterable[int]) -> float:
        return float(sum(self.values[i - 1] for i in idx))


@dataclass(frozen=True)
class Theorem24Verdict:
    holds: bool
    lhs: float
    rhs: float
    S_used: tuple[int, ...]
    T_used: tuple[int, ...]

    def __bool__(self):
        return self.holds


def bar(T: Iterable[int], m: int) -> tuple[int, ...]:
    """``{m + 1 - i : i in T}`` in increasing order."""
    T = _check_set(sorted(int(i) for i in T), m)
    return tuple(sorted(m + 1 - i for i in T))


def d_vector(L: MatrixPolynomial, tol: float = 1e-8) -> DVector:
    """Roots of ``det L`` in non-decreasing order."""
    verdict = real_root_classify(poly_roots(det_poly(L)), tol)
    if not verdict.all_real:
        raise NonRealRootError("det L has non-real roots")
    return DVector(verdict.reals)


# --------------------------------------------------------------------------
# generation
# --------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _horn_decreasing(r: int, n: int) -> frozenset:
    """Horn's set ``T^n_r`` of triples ``(I, J, K)`` for non-increasing eigenvalues.

    ``(I, J, K)`` belongs iff ``|I| + |J| = |K| + r(r+1)/2`` (sums of elements)
    and, for every ``p < r`` and ``(F, G, H)`` in ``T^r_p``,
    ``sum_F i_f + sum_G j_g <= sum_H k_h + p(p+1)/2``.
    """
    subsets = list(combinations(range(1, n + 1), r))
    lower = [(p, _horn_decreasing(p, r)) for p in range(1, r)]
    out = set()
    for I in subsets:
        for J in subsets:
            target = sum(I) + sum(J) - r * (r + 1) // 2
            for K in subsets:
                if sum(K) != target:
                    continue
                ok = all(
                    sum(I[f - 1] for f in F) + sum(J[g - 1] for g in G)
                    <= sum(K[h - 1] for h in H) + p * (p + 1) // 2
                    for p, trip in lower
                    for F, G, H in trip
                )
                if ok:
                    out.add((I, J, K))
    return frozenset(out)


def _check_m(m: int):
    if not 1 <= m <= MAX_M:
        raise ValueError(f"m must be in 1..{MAX_M}, got {m}")


def horn_triples(m: int) -> frozenset[HornTriple]:
    """All Horn triples of size ``1..m`` whose element sums are balanced.

    In non-decreasing order the balance is
    ``sum U = sum S + sum T - r(m+1) + r(r+1)/2``; every other valid
    inequality is implied by one of these and monotonicity.
    """
    _check_m(m)
    out = set()
    for r in range(1, m + 1):
        for I, J, K in _horn_decreasing(r, m):
            out.add(HornTriple(bar(K, m), bar(I, m), bar(J, m), m))
    return frozenset(out)


def candidate_triples(m: int) -> frozenset[HornTriple]:
    """All balanced triples of size ``1..m``: the search space of the generator."""
    _check_m(m)
    out = set()
    for r in range(1, m + 1):
        subsets = list(combinations(range(1, m + 1), r))
        shift = -r * (m + 1) + r * (r + 1) // 2
        for S in subsets:
            for T in subsets:
                target = sum(S) + sum(T) + shift
                for U in subsets:
                    if sum(U) == target:
                        out.add(HornTriple(U, S, T, m))
    return frozenset(out)


# --------------------------------------------------------------------------
# empirical filter
# --------------------------------------------------------------------------


def _gue(rng: np.random.Generator, k: int, m: int) -> np.ndarray:
    G = rng.standard_normal((k, m, m)) + 1j * rng.standard_normal((k, m, m))
    return (G + np.conj(np.swapaxes(G, 1, 2))) / 2


@lru_cache(maxsize=16)
def _spectra_sample(m: int, trials: int, seed: int):
    """Sorted spectra of ``X``, ``Y``, ``X + Y`` for ``trials`` Hermitian pairs.

    Half the pairs are GUE; the rest are low-rank projections and commuting
    pairs ``diag(a)``, ``diag(b)[perm]``, which sit on the faces where Horn
    inequalities become tight and so expose near-miss triples.
    """
    rng = np.random.default_rng(seed)
    k_gue = trials // 2
    k_proj = (trials - k_gue) // 2
    k_diag = trials - k_gue - k_proj
    X = [_gue(rng, k_gue, m)]
    Y = [_gue(rng, k_gue, m)]

    def projections(k):
        Q, _ = np.linalg.qr(_gue(rng, k, m))
        ranks = rng.integers(0, m + 1, size=k)
        w = (np.arange(m)[None, :] < ranks[:, None]) * rng.uniform(0.5, 2.0, (k, 1))
        w = w + 1e-3 * rng.standard_normal((k, m))
        return np.einsum("kij,kj,klj->kil", Q, w, np.conj(Q))

    X.append(projections(k_proj))
    Y.append(projections(k_proj))
    a = np.sort(rng.standard_normal((k_diag, m)), axis=1)
    b = np.sort(rng.standard_normal((k_diag, m)), axis=1)
    perm = np.argsort(rng.random((k_diag, m)), axis=1)
    b = np.take_along_axis(b, perm, axis=1)
    X.append(np.einsum("ki,ij->kij", a, np.eye(m)).astype(complex))
    Y.append(np.einsum("ki,ij->kij", b, np.eye(m)).astype(complex))
    X, Y = np.concatenate(X), np.concatenate(Y)
    return np.linalg.eigvalsh(X), np.linalg.eigvalsh(Y), np.linalg.eigvalsh(X + Y)


def empirical_triple_filter(t: HornTriple, trials: int = 10_000, seed: int = 0, tol: float = 1e-10) -> bool:
    """False iff some sampled Hermitian pair violates the inequality by more than ``tol``.

    One-sided: ``True`` means no violation was found.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    lx, ly, ls = _spectra_sample(t.m, trials, seed)
    u, s, tt = (np.array(ix) - 1 for ix in (t.U, t.S, t.T))
    excess = ls[:, u].sum(1) - lx[:, s].sum(1) - ly[:, tt].sum(1)
    scale = 1 + np.abs(lx).max(1) + np.abs(ly).max(1)
    return bool(np.all(excess <= tol * scale))


# --------------------------------------------------------------------------
# determinant-root inequalities
# --------------------------------------------------------------------------


def _evaluate(dL: DVector, dM: DVector, dmix: DVector, alpha: float, t: HornTriple, tol: float) -> Theorem24Verdict:
    beta = 1.0 - alpha
    S = t.S if alpha >= 0 else bar(t.S, t.m)
    T = t.T if beta >= 0 else bar(t.T, t.m)
    lhs = dmix.sum(t.U)
    rhs = alpha * dL.sum(S) + beta * dM.sum(T)
    return Theorem24Verdict(bool(lhs <= rhs + tol), lhs, rhs, S, T)


def _check_pair(L: MatrixPolynomial, M: MatrixPolynomial) -> int:
    if L.coeffs.shape != M.coeffs.shape:
        raise ShapeError("L and M differ in shape")
    return L.n * L.ell


def verify_theorem24(
    L: MatrixPolynomial,
    M: MatrixPolynomial,
    alpha: float,
    t: HornTriple,
    tol: float = 1e-8,
    root_tol: float = 1e-8,
) -> Theorem24Verdict:
    """Evaluate the Horn inequality on roots of ``det(alpha L + (1 - alpha) M)``.

    A negative coefficient on ``L`` (resp. ``M``) reverses ``S`` (resp. ``T``)
    because ``lambda_j(c A) = c lambda_{m+1-j}(A)`` for ``c < 0``.
    """
    m = _check_pair(L, M)
    if t.m != m:
        raise ShapeError(f"triple is for m={t.m}, but n*ell={m}")
    dmix = d_vector(affine_combine(L, M, alpha), root_tol)
    return _evaluate(d_vector(L, root_tol), d_vector(M, root_tol), dmix, alpha, t, tol)


def theorem24_sweep(
    L: MatrixPolynomial,
    M: MatrixPolynomial,
    alphas: Iterable[float],
    triples: Optional[Iterable[HornTriple]] = None,
    tol: float = 1e-8,
    root_tol: float = 1e-8,
) -> list[tuple[float, HornTriple, Theorem24Verdict]]:
    """``verify_theorem24`` over a grid of alphas and triples; returns the failures.

    ``triples`` defaults to all Horn triples for ``m = n * ell``.  Roots are
    computed once per alpha.
    """
    m = _check_pair(L, M)
    triples = sorted(horn_triples(m) if triples is None else triples)
    if any(t.m != m for t in triples):
        raise ShapeError(f"triples must be for m={m}")
    dL, dM = d_vector(L, root_tol), d_vector(M, root_tol)
    failures = []
    for a in alphas:
        dmix = d_vector(affine_combine(L, M, a), root_tol)
        for t in triples:
            v = _evaluate(dL, dM, dmix, a, t, tol)
            if not v:
                failures.append((float(a), t, v))
    return failures
