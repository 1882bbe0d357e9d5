import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hypermatpoly.config import DEFAULT_ALPHA_GRID
from hypermatpoly.errors import ShapeError
from hypermatpoly.hyperbolicity import (
    condition_star,
    degeneration_check,
    derivative_pencil,
    derivative_pencil_check,
    direction_poly,
    is_hyperbolic,
    is_weakly_hyperbolic,
    scalar_section,
    verify_coincidence,
)
from hypermatpoly.interlacing import build_symmetric_pair
from hypermatpoly.polycore import MatrixPolynomial, ScalarPolynomial, poly_roots
from hypermatpoly.sampling import diagonal_interlacing_pair, random_hermitian, random_monic, random_psd
from strategies import rngs, seeds, small_ell, small_n

I2 = np.eye(2)
C = np.array([[2.0, 1.0], [1.0, 2.0]])
LC = MatrixPolynomial([-C, 0 * I2, I2])
F = ScalarPolynomial([-1, 0, 1])
H = ScalarPolynomial([-1, -1, 1])


def scalar(p):
    return MatrixPolynomial.from_scalar(p)


def test_weak_hyperbolicity_examples():
    assert is_weakly_hyperbolic(LC)
    assert not is_weakly_hyperbolic(MatrixPolynomial([I2, 0 * I2, I2]))
    rng = np.random.default_rng(0)
    assert is_weakly_hyperbolic(MatrixPolynomial.pencil(random_hermitian(rng, 4)))


def test_scalar_section_examples():
    assert scalar_section(LC, [1, 0]).allclose(ScalarPolynomial([-2, 0, 1]), 1e-14)
    assert scalar_section(LC, np.array([1, 1]) / math.sqrt(2)).allclose(ScalarPolynomial([-3, 0, 1]), 1e-14)
    Hm = np.array([[1.0, 2.0], [2.0, -3.0]])
    x = np.array([0.6, 0.8j])
    expect = np.vdot(x, Hm @ x).real
    assert scalar_section(MatrixPolynomial.pencil(Hm), x).allclose(ScalarPolynomial([-expect, 1]), 1e-14)


def test_scalar_section_normalizes_and_rejects_zero():
    assert scalar_section(LC, [3, 0]).allclose(ScalarPolynomial([-2, 0, 1]), 1e-14)
    with pytest.raises(ValueError):
        scalar_section(LC, [0, 0])
    with pytest.raises(ShapeError):
        scalar_section(LC, [1, 0, 0])


@given(rngs, small_n, small_ell)
def test_hermitian_sections_are_real(rng, n, ell):
    c = np.array([random_hermitian(rng, n) for _ in range(ell)] + [np.eye(n)])
    L = MatrixPolynomial(c)
    x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    assert np.abs(scalar_section(L, x).coeffs.imag).max() <= 1e-14


def test_is_hyperbolic_examples():
    rng = np.random.default_rng(1)
    assert is_hyperbolic(MatrixPolynomial([-random_psd(rng, 3), np.zeros((3, 3)), np.eye(3)]))
    v = is_hyperbolic(MatrixPolynomial([I2, 0 * I2, I2]))
    assert not v and v.witness is not None
    assert is_hyperbolic(MatrixPolynomial.pencil(random_hermitian(rng, 3)))


def test_non_hermitian_coefficient_is_reported():
    v = is_hyperbolic(MatrixPolynomial.pencil(np.array([[0.0, 1.0], [0.0, 0.0]])))
    assert not v.hyperbolic
    assert list(v.witness) == [0]


@given(rngs, small_n, small_ell)
def test_hyperbolic_implies_weakly_hyperbolic(rng, n, ell):
    # a mix of hyperbolic (diagonal interlacing, PSD quadratics) and random Hermitian instances
    kind = rng.integers(3)
    if kind == 0:
        L, _ = diagonal_interlacing_pair(rng, n, ell)
    elif kind == 1:
        L = MatrixPolynomial([-random_psd(rng, n), np.zeros((n, n)), np.eye(n)])
    else:
        L = MatrixPolynomial([random_hermitian(rng, n) for _ in range(ell)] + [np.eye(n)])
    if is_hyperbolic(L, samples=50, seed=0):
        assert is_weakly_hyperbolic(L)


def test_condition_star_examples():
    rng = np.random.default_rng(2)
    L, M = diagonal_interlacing_pair(rng, 2, 2)
    assert condition_star(L, M)
    L2 = MatrixPolynomial([-np.diag([1.0, 4.0]), 0 * I2, I2])
    M2 = MatrixPolynomial([-np.diag([2.0, 3.0]), 0 * I2, I2])
    r = condition_star(L2, M2, DEFAULT_ALPHA_GRID)
    assert not r.verdict
    assert 3.0 in [a for a, _ in r.failures]
    same = condition_star(LC, LC)
    assert same.verdict == is_weakly_hyperbolic(LC)
    assert np.all(same.leading_diff_spectrum == 0)


def test_direction_poly_examples():
    Lf, Lh = scalar(F), scalar(H)
    assert direction_poly(Lf, Lh, 1, 0).allclose(ScalarPolynomial([-1, 0, 1]), 1e-12)
    p = direction_poly(Lf, Lh, 1, -1)
    assert p.allclose(ScalarPolynomial([0, 1, 1]), 1e-12) or p.allclose(ScalarPolynomial([0, -1, -1]), 1e-12)
    np.testing.assert_allclose(np.sort(poly_roots(p).real), [-1, 0], atol=1e-12)
    q = direction_poly(LC, LC, 0, 0)
    assert abs(abs(q.leading) - 1) < 1e-14 and np.abs(q.coeffs[:-1]).max() == 0


@given(rngs, small_n, small_ell, st.floats(-3, 3), st.floats(-3, 3), st.sampled_from([2.0, -1.0]))
def test_direction_poly_homogeneity(rng, n, ell, a, b, s):
    L, M = random_monic(rng, n, ell), random_monic(rng, n, ell)
    p, q = direction_poly(L, M, s * a, s * b), direction_poly(L, M, a, b)
    N = n * ell
    for g in (0.3, -1.1, 0.7 + 0.4j):
        ref = s**N * q(g)
        assert abs(p(s * g) - ref) <= 1e-8 * max(1.0, abs(ref), np.abs(q.coeffs).max() * (1 + abs(g)) ** N)


@given(rngs, small_n, small_ell, st.floats(0.1, 3))
def test_degeneration_identity_reflected_form(rng, n, ell, alpha):
    # direction (alpha, -alpha) of the companion pencil equals gamma^(n(ell-1)) det(-alpha D - gamma I)
    L, M = random_monic(rng, n, ell), random_monic(rng, n, ell)
    check = degeneration_check(L, M, alpha)
    assert check.reflected_sign != 0


def test_degeneration_literal_form_differs_when_spectrum_not_symmetric():
    L = MatrixPolynomial([np.zeros((1, 1)), np.array([[-1.0]]), np.eye(1)])
    M = MatrixPolynomial([np.zeros((1, 1)), np.zeros((1, 1)), np.eye(1)])
    check = degeneration_check(L, M, 1.0)
    assert check.reflected_sign != 0
    assert check.literal_sign == 0


def test_verify_coincidence_examples():
    pair = build_symmetric_pair(F, H)
    r = verify_coincidence(scalar(F), scalar(H), pair.A, pair.B)
    assert r.verdict and r.max_mismatch <= 1e-8

    L = MatrixPolynomial.diagonal([ScalarPolynomial.from_roots([1, 2]), ScalarPolynomial.from_roots([-1, 3])])
    A = np.diag([1.0, 2.0, -1.0, 3.0])
    assert verify_coincidence(L, L, A, A).verdict

    rng = np.random.default_rng(3)
    G1, G2 = rng.standard_normal((2, 4, 4))
    assert not verify_coincidence(LC, LC.shifted(1), G1 + G1.T, G2 + G2.T).verdict


def test_verify_coincidence_non_real_roots_are_infinite_mismatch():
    r = verify_coincidence(scalar(F), scalar(ScalarPolynomial([1, 0, 1])), np.eye(2), np.eye(2))
    assert r.max_mismatch == math.inf and not r.verdict


def test_verify_coincidence_size_mismatch():
    with pytest.raises(ShapeError):
        verify_coincidence(LC, LC, np.eye(3), np.eye(3))


def test_derivative_pencil_is_monic_with_shifted_lower_terms():
    P = derivative_pencil(LC, 2.0)
    np.testing.assert_array_equal(P.coeffs[1], 4 * I2)
    np.testing.assert_array_equal(P.coeffs[0], -C)


def test_derivative_pencil_examples():
    rng = np.random.default_rng(4)
    assert derivative_pencil_check(MatrixPolynomial([-random_psd(rng, 3), np.zeros((3, 3)), np.eye(3)]))
    assert derivative_pencil_check(MatrixPolynomial.pencil(random_hermitian(rng, 3)))
    L = MatrixPolynomial([I2, 0 * I2, I2])
    assert derivative_pencil_check(L, (0.0,)) == bool(is_hyperbolic(L))


@given(seeds)
def test_psd_quadratic_derivative_pencils_are_hyperbolic(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 5))
    L = MatrixPolynomial([-random_psd(rng, n), np.zeros((n, n)), np.eye(n)])
    assert derivative_pencil_check(L, samples=30, seed=seed % 1000)
