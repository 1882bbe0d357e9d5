"""Seeded random instance generators used by the tests and experiment scripts."""
from __future__ import annotations

import numpy as np

from .polycore import MatrixPolynomial, ScalarPolynomial


def spaced_roots(rng: np.random.Generator, ell: int, low: float = -1.5, high: float = 1.5,
                 min_gap: float = 0.2) -> np.ndarray:
    """``ell`` sorted reals in ``[low, high]`` with pairwise gaps >= ``min_gap``."""
    span = high - low - min_gap * (ell - 1)
    if span <= 0:
        raise ValueError("interval too short for the requested gap")
    u = np.sort(rng.uniform(0, span, ell))
    return low + u + min_gap * np.arange(ell)


def rank_one_partner(roots: np.ndarray, weights: np.ndarray, sign: int) -> ScalarPolynomial:
    """``det(zI - diag(roots) - sign * x x^T)`` with ``x_j^2 = weights_j``."""
    f = ScalarPolynomial.from_roots(roots)
    h = f
    for j, w in enumerate(weights):
        others = ScalarPolynomial.from_roots(np.delete(roots, j))
        h = h - sign * w * others
    return ScalarPolynomial(h.coeffs.real)


def interlacing_pair(rng: np.random.Generator, ell: int) -> tuple[ScalarPolynomial, ScalarPolynomial]:
    """Monic real pair built from a diagonal matrix and a rank-one update."""
    lam = spaced_roots(rng, ell)
    w = rng.uniform(0.1, 1.5, ell)
    sign = int(rng.choice([-1, 1]))
    f = ScalarPolynomial.from_roots(lam)
    return ScalarPolynomial(f.coeffs.real), rank_one_partner(lam, w, sign)


def generic_pair(rng: np.random.Generator, ell: int) -> tuple[ScalarPolynomial, ScalarPolynomial]:
    """A monic real pair that interlaces only by chance.

    Cycles through three shapes: real-rooted ``f`` with a random lower-degree
    perturbation, two independent real-rooted polynomials, and random real
    coefficients.
    """
    kind = rng.integers(3)
    if kind == 0:
        f = ScalarPolynomial.from_roots(spaced_roots(rng, ell))
        g = rng.normal(size=ell) * rng.uniform(0.2, 3.0)
        h = f + ScalarPolynomial(g)
    elif kind == 1:
        f = ScalarPolynomial.from_roots(spaced_roots(rng, ell))
        h = ScalarPolynomial.from_roots(spaced_roots(rng, ell))
    else:
        f = ScalarPolynomial(np.r_[rng.normal(size=ell), 1.0])
        h = ScalarPolynomial(np.r_[rng.normal(size=ell), 1.0])
    return ScalarPolynomial(f.coeffs.real), ScalarPolynomial(h.coeffs.real)


def random_monic(rng: np.random.Generator, n: int, ell: int, complex_: bool = True) -> MatrixPolynomial:
    c = rng.standard_normal((ell + 1, n, n))
    if complex_:
        c = c + 1j * rng.standard_normal((ell + 1, n, n))
    c[-1] = np.eye(n)
    return MatrixPolynomial(c)


def random_hermitian(rng: np.random.Generator, m: int) -> np.ndarray:
    G = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    return (G + G.conj().T) / 2


def random_psd(rng: np.random.Generator, n: int) -> np.ndarray:
    G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return G @ G.conj().T / n


def diagonal_interlacing_pair(rng: np.random.Generator, n: int, ell: int) -> tuple[MatrixPolynomial, MatrixPolynomial]:
    """``diag(f_i)``, ``diag(h_i)`` with every ``(f_i, h_i)`` interlacing."""
    pairs = [interlacing_pair(rng, ell) for _ in range(n)]
    return (MatrixPolynomial.diagonal([p[0] for p in pairs]),
            MatrixPolynomial.diagonal([p[1] for p in pairs]))
