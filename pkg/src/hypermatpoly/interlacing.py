"""Interlacing of monic scalar polynomial pairs.

For distinct, coprime, monic ``f`` and ``h`` of equal degree the following are
equivalent, and :func:`obreschkoff_report` evaluates each one on its own:

1. every nonzero real combination ``alpha f + beta h`` is real-rooted;
2. every affine combination ``alpha f + (1 - alpha) h`` is real-rooted;
3. ``f`` is real-rooted and ``h/f = 1 + sum_j c_j / (z - lambda_j)`` with
   all ``c_j`` of one sign;
4. ``f`` and ``h`` have simple real roots that strictly alternate.

When (3) holds the pair is realized by symmetric matrices ``A = diag(lambda)``
and ``B = A - sign(c) x x^T`` with ``x_j = sqrt(|c_j|)``, so that
``f = det(zI - A)`` and ``h = det(zI - B)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.linalg import block_diag

from .config import DEFAULT_ALPHA_GRID, unit_circle_directions
from .errors import (
    MixedSignError,
    MultipleRootError,
    NonRealRootError,
    NotCoprimeError,
    NotMonicError,
    PreconditionError,
    ShapeError,
    VerificationError,
)
from .hyperbolicity import verify_coincidence
from .polycore import (
    MatrixPolynomial,
    ScalarPolynomial,
    det_poly,
    poly_roots,
    real_root_classify,
)

__all__ = [
    "Verdict",
    "ResidueDecomposition",
    "SymmetricPair",
    "ObreschkoffReport",
    "remainder",
    "gcd_degree",
    "are_coprime",
    "residues",
    "roots_interlace",
    "pencil_real_rooted",
    "affine_grid",
    "direction_grid",
    "critical_parameters",
    "obreschkoff_report",
    "char_poly",
    "build_symmetric_pair",
    "build_diagonal_pencil_pair",
]

ALL_POSITIVE = "all_positive"
ALL_NEGATIVE = "all_negative"
MIXED = "mixed"
DEGENERATE = "degenerate"


@dataclass(frozen=True)
class Verdict:
    holds: bool
    reason: str = ""

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class ResidueDecomposition:
    lambdas: np.ndarray
    residues: np.ndarray
    sign_class: str

    def quotient(self, z):
        """``1 + sum_j c_j / (z - lambda_j)``, i.e. ``h(z) / f(z)``."""
        z = np.asarray(z, dtype=complex)
        return 1 + np.sum(self.residues / (z[..., None] - self.lambdas), axis=-1)

    @property
    def same_sign(self) -> bool:
        return self.sign_class in (ALL_POSITIVE, ALL_NEGATIVE)


@dataclass(frozen=True)
class SymmetricPair:
    A: np.ndarray
    B: np.ndarray
    x: np.ndarray
    sign: int


@dataclass(frozen=True)
class ObreschkoffReport:
    cond1: bool
    cond2: bool
    cond3: bool
    cond4: bool
    details: dict = field(default_factory=dict)

    @property
    def verdicts(self) -> tuple[bool, bool, bool, bool]:
        return (self.cond1, self.cond2, self.cond3, self.cond4)

    @property
    def unanimous(self) -> Optional[bool]:
        """The common verdict, or ``None`` when the conditions disagree."""
        v = set(self.verdicts)
        return v.pop() if len(v) == 1 else None


# --------------------------------------------------------------------------
# preconditions
# --------------------------------------------------------------------------


def _check_monic_pair(f: ScalarPolynomial, h: ScalarPolynomial) -> None:
    if not (f.is_monic and h.is_monic):
        raise NotMonicError("f and h must be monic")
    if f.degree != h.degree:
        raise ShapeError(f"degrees differ: {f.degree} vs {h.degree}")
    if f.degree < 1:
        raise ShapeError("degree must be at least 1")


def _check_distinct(f: ScalarPolynomial, h: ScalarPolynomial) -> None:
    if f.allclose(h, 1e-14):
        raise PreconditionError("f and h must be distinct polynomials")


def remainder(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Remainder of ascending-order coefficient arrays, ``deg b >= 0``."""
    a = np.array(a, dtype=complex)
    db = len(b) - 1
    lead = b[-1]
    for k in range(len(a) - 1, db - 1, -1):
        q = a[k] / lead
        a[k - db : k + 1] -= q * b
        a[k] = 0
    return a[:db] if db > 0 else np.zeros(1, dtype=complex)


def gcd_degree(f: ScalarPolynomial, h: ScalarPolynomial, rtol: float = 1e-10) -> int:
    """Degree of ``gcd(f, h)`` by a monic Euclidean remainder sequence.

    A remainder whose coefficients all fall below ``rtol`` times the norm of
    the current dividend is treated as zero.
    """
    a = f.monic().coeffs
    b = h.monic().coeffs
    if len(b) > len(a):
        a, b = b, a
    while len(b) > 1:
        r = remainder(a, b)
        scale = max(np.abs(a).max(), np.abs(b).max())
        if np.abs(r).max() <= rtol * scale:
            return len(b) - 1
        k = len(r)
        rmax = np.abs(r).max()
        while k > 1 and abs(r[k - 1]) <= rtol * rmax:
            k -= 1
        a, b = b, r[:k] / r[k - 1]
    return 0


def are_coprime(f: ScalarPolynomial, h: ScalarPolynomial, rtol: float = 1e-10) -> bool:
    return gcd_degree(f, h, rtol) == 0


def _real_simple_roots(f: ScalarPolynomial, root_tol: float, simple_tol: float, name: str = "f") -> np.ndarray:
    roots = poly_roots(f)
    verdict = real_root_classify(roots, root_tol)
    if not verdict.all_real:
        raise NonRealRootError(f"{name} has non-real roots")
    lam = verdict.reals
    gaps = np.diff(lam)
    if np.any(gaps <= simple_tol * (1 + np.abs(lam[1:]))):
        raise MultipleRootError(f"{name} has a multiple root (within {simple_tol:g})")
    return lam


# --------------------------------------------------------------------------
# the four conditions
# --------------------------------------------------------------------------


def residues(
    f: ScalarPolynomial,
    h: ScalarPolynomial,
    simple_tol: float = 1e-7,
    root_tol: float = 1e-8,
    residue_tol: float = 1e-10,
    coprime_rtol: float = 1e-10,
) -> ResidueDecomposition:
    """Partial fractions ``h/f = 1 + sum_j c_j / (z - lambda_j)`` with ``c_j = h(lambda_j) / f'(lambda_j)``."""
    _check_monic_pair(f, h)
    lam = _real_simple_roots(f, root_tol, simple_tol)
    if not are_coprime(f, h, coprime_rtol):
        raise NotCoprimeError("f and h share a root")
    df = f.derivative()
    c = np.array([h(x) / df(x) for x in lam])
    if np.any(np.abs(c.imag) > 1e-8 * (1 + np.abs(c))):
        raise PreconditionError("residues are not real; h must have real coefficients")
    c = c.real

    dec = ResidueDecomposition(lam, c, _sign_class(c, residue_tol))
    # check the decomposition identity away from the poles
    ell = f.degree
    center = lam.mean()
    radius = 1.0 + np.ptp(lam)
    zs = center + radius * np.exp(1j * (np.pi * (np.arange(2 * ell) + 0.5) / ell))
    lhs = np.array([h(z) for z in zs])
    rhs = np.array([f(z) for z in zs]) * dec.quotient(zs)
    if np.abs(lhs - rhs).max() > 1e-8 * max(np.abs(lhs).max(), 1.0):
        raise VerificationError("partial fraction identity failed")
    return dec


def _sign_class(c: np.ndarray, residue_tol: float) -> str:
    if np.any(np.abs(c) <= residue_tol):
        return DEGENERATE
    if np.all(c > 0):
        return ALL_POSITIVE
    if np.all(c < 0):
        return ALL_NEGATIVE
    return MIXED


def roots_interlace(
    f: ScalarPolynomial, h: ScalarPolynomial, simple_tol: float = 1e-7, root_tol: float = 1e-8
) -> Verdict:
    """Both root sets real and simple, and strictly alternating when merged."""
    _check_monic_pair(f, h)
    try:
        rf = _real_simple_roots(f, root_tol, simple_tol, "f")
        rh = _real_simple_roots(h, root_tol, simple_tol, "h")
    except (NonRealRootError, MultipleRootError) as exc:
        return Verdict(False, str(exc))
    merged = np.concatenate([rf, rh])
    labels = np.r_[np.zeros(len(rf), int), np.ones(len(rh), int)]
    order = np.argsort(merged, kind="stable")
    merged, labels = merged[order], labels[order]
    if np.any(np.diff(merged) <= simple_tol * (1 + np.abs(merged[1:]))):
        return Verdict(False, "f and h have a common root")
    if np.any(labels[1:] == labels[:-1]):
        return Verdict(False, "roots do not alternate")
    return Verdict(True, "roots alternate")


def pencil_real_rooted(
    f: ScalarPolynomial,
    h: ScalarPolynomial,
    grid: Sequence[tuple[float, float]],
    tol: float = 1e-8,
) -> Verdict:
    """Every ``alpha f + beta h`` on the grid has only real roots.

    Leading coefficients that cancel (``alpha + beta = 0``) are trimmed, so
    the difference direction is tested at its true degree.
    """
    _check_monic_pair(f, h)
    _check_distinct(f, h)
    if len(grid) == 0:
        raise ValueError("empty pencil grid")
    for alpha, beta in grid:
        p = (alpha * f + beta * h).trim(1e-12)
        if p.is_zero:
            continue
        if not real_root_classify(poly_roots(p), tol).all_real:
            return Verdict(False, f"non-real roots at (alpha, beta) = ({alpha:g}, {beta:g})")
    return Verdict(True, f"real-rooted on {len(grid)} grid points")


def critical_parameters(f: ScalarPolynomial, h: ScalarPolynomial) -> np.ndarray:
    """Real ``t`` at which ``f + t (h - f)`` acquires a double real root.

    Between consecutive critical values the number of real roots is constant,
    so probing one point per gap decides real-rootedness along the line.
    """
    g = h - f
    if g.is_zero:
        return np.zeros(0)
    w = f.derivative() * g - f * g.derivative()
    w = w.trim(1e-14)
    if w.degree < 1:
        return np.zeros(0)
    z = poly_roots(w)
    z = z[np.abs(z.imag) <= 1e-6 * (1 + np.abs(z))].real
    ts = []
    for x in z:
        gx = g(x)
        if abs(gx) > 1e-14 * (1 + abs(f(x))):
            ts.append((-f(x) / gx).real)
    return np.unique(np.round(ts, 12))


def _probe_ts(f: ScalarPolynomial, h: ScalarPolynomial) -> list[float]:
    ts = critical_parameters(f, h)
    if ts.size == 0:
        return []
    probes = list(0.5 * (ts[1:] + ts[:-1]))
    probes.append(ts[0] - 1 - abs(ts[0]))
    probes.append(ts[-1] + 1 + abs(ts[-1]))
    return probes


def affine_grid(
    f: Optional[ScalarPolynomial] = None,
    h: Optional[ScalarPolynomial] = None,
    alphas: Sequence[float] = DEFAULT_ALPHA_GRID,
) -> list[tuple[float, float]]:
    """``(alpha, 1 - alpha)`` pairs; with ``f, h`` given, adds one probe per critical gap."""
    out = [(float(a), 1.0 - float(a)) for a in alphas]
    if f is not None and h is not None:
        out += [(1.0 - t, t) for t in _probe_ts(f, h)]
    return out


def direction_grid(
    f: Optional[ScalarPolynomial] = None, h: Optional[ScalarPolynomial] = None, count: int = 16
) -> list[tuple[float, float]]:
    """Directions on the unit circle; with ``f, h`` given, adds the critical-gap probes."""
    out = list(unit_circle_directions(count))
    if f is not None and h is not None:
        for t in _probe_ts(f, h):
            v = np.array([1.0 - t, t])
            v /= np.linalg.norm(v)
            out.append((float(v[0]), float(v[1])))
    return out


def obreschkoff_report(
    f: ScalarPolynomial,
    h: ScalarPolynomial,
    simple_tol: float = 1e-7,
    root_tol: float = 1e-8,
    residue_tol: float = 1e-10,
    coprime_rtol: float = 1e-10,
) -> ObreschkoffReport:
    """Evaluate the four equivalent interlacing conditions independently.

    Raises for pairs outside the hypotheses: equal, non-monic, different
    degrees or sharing a root.
    """
    _check_monic_pair(f, h)
    _check_distinct(f, h)
    if not are_coprime(f, h, coprime_rtol):
        raise NotCoprimeError("f and h are not relatively prime")

    grid1 = direction_grid(f, h)
    grid2 = affine_grid(f, h)
    c1 = pencil_real_rooted(f, h, grid1, root_tol)
    c2 = pencil_real_rooted(f, h, grid2, root_tol)
    try:
        dec = residues(f, h, simple_tol, root_tol, residue_tol, coprime_rtol)
        c3 = Verdict(dec.same_sign, dec.sign_class)
        res_detail = {"lambdas": dec.lambdas.tolist(), "residues": dec.residues.tolist()}
    except (NonRealRootError, MultipleRootError) as exc:
        c3 = Verdict(False, str(exc))
        res_detail = {}
    c4 = roots_interlace(f, h, simple_tol, root_tol)
    details = {
        "cond1": c1.reason,
        "cond2": c2.reason,
        "cond3": c3.reason,
        "cond4": c4.reason,
        "grid1_size": len(grid1),
        "grid2_size": len(grid2),
        **res_detail,
    }
    return ObreschkoffReport(c1.holds, c2.holds, c3.holds, c4.holds, details)


# --------------------------------------------------------------------------
# symmetric realizations
# --------------------------------------------------------------------------


def char_poly(S) -> ScalarPolynomial:
    """``det(zI - S)``."""
    return det_poly(MatrixPolynomial.pencil(S))


def build_symmetric_pair(
    f: ScalarPolynomial,
    h: ScalarPolynomial,
    simple_tol: float = 1e-7,
    root_tol: float = 1e-8,
    residue_tol: float = 1e-10,
    rtol: float = 1e-8,
) -> SymmetricPair:
    """Rank-one symmetric realization ``f = det(zI - A)``, ``h = det(zI - B)``."""
    dec = residues(f, h, simple_tol, root_tol, residue_tol)
    if dec.sign_class == DEGENERATE:
        raise PreconditionError("a residue vanishes; f and h nearly share a root")
    if dec.sign_class == MIXED:
        raise MixedSignError("residues have mixed signs; f and h do not interlace")
    sign = -1 if dec.sign_class == ALL_POSITIVE else 1
    A = np.diag(dec.lambdas)
    x = np.sqrt(np.abs(dec.residues))
    B = A + sign * np.outer(x, x)
    if not (char_poly(A).allclose(f, rtol) and char_poly(B).allclose(h, rtol)):
        raise VerificationError("constructed pair does not reproduce f and h")
    return SymmetricPair(A, B, x, sign)


def build_diagonal_pencil_pair(
    L: MatrixPolynomial,
    M: MatrixPolynomial,
    tol: float = 1e-12,
    coincidence_tol: float = 1e-7,
) -> tuple[np.ndarray, np.ndarray]:
    """Direct sums of the scalar constructions for diagonal ``L`` and ``M``.

    Diagonal entries with ``f_i == h_i`` contribute ``A_i = B_i = diag(roots)``.
    The result is checked with :func:`verify_coincidence` on the default grid.
    """
    if L.coeffs.shape != M.coeffs.shape:
        raise ShapeError("L and M differ in shape")
    scale = max(np.abs(L.coeffs).max(), np.abs(M.coeffs).max())
    if not (L.is_diagonal(tol * scale) and M.is_diagonal(tol * scale)):
        raise PreconditionError("L and M must have diagonal coefficients")
    blocks_a, blocks_b = [], []
    for i in range(L.n):
        f, h = L.entry(i, i), M.entry(i, i)
        if not (f.is_real(1e-12) and h.is_real(1e-12)):
            raise PreconditionError(f"entry {i} has non-real coefficients")
        f, h = ScalarPolynomial(f.real_coeffs), ScalarPolynomial(h.real_coeffs)
        if f.allclose(h, 1e-14):
            lam = _real_simple_roots(f, 1e-8, 1e-7)
            blocks_a.append(np.diag(lam))
            blocks_b.append(np.diag(lam))
            continue
        try:
            pair = build_symmetric_pair(f, h)
        except PreconditionError as exc:
            raise type(exc)(f"diagonal entry {i}: {exc}") from exc
        blocks_a.append(pair.A)
        blocks_b.append(pair.B)
    A, B = block_diag(*blocks_a), block_diag(*blocks_b)
    report = verify_coincidence(L, M, A, B, tol=coincidence_tol)
    if not report.verdict:
        raise VerificationError(f"coincidence check failed, mismatch {report.max_mismatch:.3g}")
    return A, B
