import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hypermatpoly.errors import NotMonicError
from hypermatpoly.polycore import (
    MatrixPolynomial,
    ScalarPolynomial,
    affine_combine,
    companion,
    derivative,
    det_poly,
    det_poly_leading,
    evaluate,
    gen_eigs,
    poly_roots,
    real_root_classify,
    spectra_distance,
    sym_eigh,
    sym_eigs,
)
from hypermatpoly.sampling import random_monic
from strategies import degrees, finite, rngs, seeds, small_ell, small_n

I2 = np.eye(2)
C = np.array([[2.0, 1.0], [1.0, 2.0]])
LC = MatrixPolynomial([-C, 0 * I2, I2])


def matched(a, b, tol):
    return spectra_distance(a, b) <= tol


# ---------------------------------------------------------------- scalar polynomials


def test_scalar_trims_trailing_zeros():
    p = ScalarPolynomial([1, 2, 0, 0])
    assert p.degree == 1
    assert ScalarPolynomial([0, 0]).is_zero


def test_scalar_monic_has_exact_unit_leading():
    p = ScalarPolynomial([1, 3, 3.0000000001]).monic()
    assert p.leading == 1.0
    assert p.is_monic


@given(st.lists(finite, min_size=1, max_size=6), st.lists(finite, min_size=1, max_size=6), finite)
def test_scalar_arithmetic_matches_numpy(a, b, z):
    p, q = ScalarPolynomial(a), ScalarPolynomial(b)
    P, Q = np.polynomial.Polynomial(a), np.polynomial.Polynomial(b)
    for ours, ref in ((p + q, P + Q), (p - q, P - Q), (p * q, P * Q)):
        assert ours(z) == pytest.approx(ref(z), rel=1e-9, abs=1e-9)
    assert p.derivative()(z) == pytest.approx(P.deriv()(z), rel=1e-9, abs=1e-9)


# ---------------------------------------------------------------- matrix polynomials


def test_non_monic_rejected():
    with pytest.raises(NotMonicError):
        MatrixPolynomial([np.zeros((2, 2)), 2 * I2])


def test_eval_examples():
    np.testing.assert_allclose(evaluate(LC, 0), -C)
    np.testing.assert_allclose(evaluate(LC, 2), [[2, -1], [-1, 2]])
    np.testing.assert_allclose(evaluate(MatrixPolynomial.pencil(np.diag([1.0, 2.0])), 1), np.diag([0, -1]))


@given(rngs, small_n, small_ell, finite)
def test_eval_matches_power_sum(rng, n, ell, z):
    L = random_monic(rng, n, ell)
    ref = sum(Lj * z**j for j, Lj in enumerate(L.coeffs))
    np.testing.assert_allclose(evaluate(L, z), ref, rtol=1e-10, atol=1e-10)


def test_derivative_examples():
    d = derivative(LC)
    np.testing.assert_array_equal(d, [0 * I2, 2 * I2])
    np.testing.assert_array_equal(derivative(MatrixPolynomial.pencil(C)), [I2])
    D = np.diag([1.0, -3.0])
    cubic = MatrixPolynomial([0 * I2, D, 0 * I2, I2])
    np.testing.assert_array_equal(derivative(cubic), [D, 0 * I2, 3 * I2])


def test_affine_combine_examples():
    L = MatrixPolynomial([-I2, 0 * I2, I2])
    M = MatrixPolynomial([-3 * I2, 0 * I2, I2])
    np.testing.assert_array_equal(affine_combine(L, M, 1).coeffs, L.coeffs)
    np.testing.assert_array_equal(affine_combine(L, M, 0).coeffs, M.coeffs)
    np.testing.assert_array_equal(affine_combine(L, M, 0.5).coeffs[0], -2 * I2)


@given(rngs, small_n, small_ell, finite)
def test_companion_is_affine(rng, n, ell, alpha):
    L, M = random_monic(rng, n, ell), random_monic(rng, n, ell)
    lhs = companion(affine_combine(L, M, alpha))
    rhs = alpha * companion(L) + (1 - alpha) * companion(M)
    np.testing.assert_allclose(lhs, rhs, rtol=0, atol=1e-13 * (1 + abs(alpha)))


def test_companion_examples():
    f = MatrixPolynomial.from_scalar(ScalarPolynomial([2, -3, 1]))
    np.testing.assert_array_equal(companion(f), [[0, 1], [-2, 3]])
    np.testing.assert_array_equal(companion(MatrixPolynomial.from_scalar(ScalarPolynomial([-1, 0, 1]))), [[0, 1], [1, 0]])
    K = companion(LC)
    np.testing.assert_array_equal(K[:2, 2:], I2)
    np.testing.assert_array_equal(K[2:, :2], C)
    np.testing.assert_array_equal(K[2:, 2:], 0 * I2)
    assert matched(gen_eigs(K), [-math.sqrt(3), -1, 1, math.sqrt(3)], 1e-10)


def test_companion_degree_one_is_minus_constant():
    H = np.array([[1.0, 2.0], [2.0, -1.0]])
    np.testing.assert_array_equal(companion(MatrixPolynomial.pencil(H)), H)


def test_shifted_evaluates_at_translate():
    L = MatrixPolynomial([-C, np.diag([1.0, 0.0]), I2])
    for c in (1.0, -2.0):
        for z in (0.3, -1.7, 2.0 + 1j):
            np.testing.assert_allclose(evaluate(L.shifted(c), z), evaluate(L, z - c), atol=1e-12)


# ---------------------------------------------------------------- det_poly


def test_det_poly_examples():
    assert det_poly(MatrixPolynomial.pencil(np.diag([1.0, 2.0]))).allclose(ScalarPolynomial([2, -3, 1]), 1e-12)
    assert det_poly(LC).allclose(ScalarPolynomial([3, 0, -4, 0, 1]), 1e-12)
    f = ScalarPolynomial([-1, 0.5, 2, 1])
    np.testing.assert_array_equal(det_poly(MatrixPolynomial.from_scalar(f)).coeffs, f.coeffs)


@given(rngs, small_n, small_ell)
def test_det_poly_matches_pointwise_determinant(rng, n, ell):
    L = random_monic(rng, n, ell)
    p = det_poly(L)
    assert p.degree == n * ell
    assert p.is_monic
    for z in rng.standard_normal(3) + 1j * rng.standard_normal(3):
        ref = np.linalg.det(evaluate(L, z))
        assert abs(p(z) - ref) <= 1e-8 * max(1.0, abs(ref))


def test_det_poly_against_sympy():
    sympy = pytest.importorskip("sympy")
    z = sympy.symbols("z")
    rng = np.random.default_rng(7)
    ints = rng.integers(-3, 4, size=(3, 2, 2))
    ints[-1] = np.eye(2, dtype=int)
    L = MatrixPolynomial(ints.astype(float))
    expr = sympy.Matrix(2, 2, lambda i, j: sum(int(ints[k, i, j]) * z**k for k in range(3))).det()
    exact = [float(c) for c in reversed(sympy.Poly(expr, z).all_coeffs())]
    np.testing.assert_allclose(det_poly(L).coeffs.real, exact, atol=1e-10)


# ---------------------------------------------------------------- eigen solvers


def test_sym_eigs_examples():
    np.testing.assert_allclose(sym_eigs([[0, 1], [1, 0]]), [-1, 1], atol=1e-14)
    np.testing.assert_allclose(sym_eigs(np.diag([3.0, 1.0, 2.0])), [1, 2, 3])
    np.testing.assert_allclose(sym_eigs(C), [1, 3], atol=1e-14)


@given(seeds, st.integers(1, 12), finite)
def test_sym_eigs_trace_shift_and_residual(seed, m, c):
    rng = np.random.default_rng(seed)
    G = rng.standard_normal((m, m))
    S = (G + G.T) / 2
    norm = np.linalg.norm(S, 2)
    w, V = sym_eigh(S)
    assert np.all(np.diff(w) >= 0)
    assert abs(w.sum() - np.trace(S)) <= 1e-10 * (1 + norm)
    np.testing.assert_allclose(sym_eigs(S + c * np.eye(m)), w + c, atol=1e-10 * (1 + norm + abs(c)))
    assert np.linalg.norm(S @ V - V * w) <= 1e-10 * (1 + norm)
    np.testing.assert_allclose(w, np.linalg.eigvalsh(S), atol=1e-10 * (1 + norm))


def test_gen_eigs_examples():
    assert matched(gen_eigs([[0, 1], [-2, 3]]), [1, 2], 1e-12)
    assert matched(gen_eigs([[0, -1], [1, 0]]), [1j, -1j], 1e-12)
    K = companion(MatrixPolynomial.from_scalar(ScalarPolynomial([3, 0, -4, 0, 1])))
    assert matched(gen_eigs(K), [-math.sqrt(3), -1, 1, math.sqrt(3)], 1e-10)


@given(seeds, st.integers(1, 12))
def test_gen_eigs_matches_lapack(seed, m):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    assert matched(gen_eigs(A), np.linalg.eigvals(A), 1e-8 * (1 + np.linalg.norm(A)))


def test_gen_eigs_handles_defective_and_zero():
    assert matched(gen_eigs(np.zeros((3, 3))), [0, 0, 0], 0)
    J = np.array([[2.0, 1.0], [0.0, 2.0]])
    assert matched(gen_eigs(J), [2, 2], 1e-7)


def test_poly_roots_examples():
    assert matched(poly_roots(ScalarPolynomial([1, 0, 1])), [1j, -1j], 1e-12)
    assert matched(poly_roots(ScalarPolynomial([2, -3, 1])), [1, 2], 1e-12)
    quintic = ScalarPolynomial.from_roots([1, 2, 3, 4, 5])
    assert matched(poly_roots(quintic), [1, 2, 3, 4, 5], 1e-8)


def test_poly_roots_rejects_zero_polynomial():
    with pytest.raises(ValueError):
        poly_roots(ScalarPolynomial([0]))


@given(rngs, degrees)
def test_poly_roots_matches_numpy(rng, deg):
    c = np.r_[rng.standard_normal(deg), 1.0]
    assert matched(poly_roots(ScalarPolynomial(c)), np.roots(c[::-1]), 1e-7)


@given(rngs, small_n, small_ell)
def test_companion_spectrum_is_det_roots(rng, n, ell):
    L = random_monic(rng, n, ell)
    assert matched(gen_eigs(companion(L)), poly_roots(det_poly(L)), 1e-6)


def test_real_root_classify_examples():
    v = real_root_classify(np.array([1, 2]), 1e-8)
    assert v.all_real and list(v.reals) == [1, 2]
    assert not real_root_classify(np.array([1j, -1j]), 1e-8).all_real
    assert real_root_classify(np.array([1 + 1e-12j, 2]), 1e-8).all_real


def test_real_root_classify_partial_subset():
    v = real_root_classify(np.array([3.0, 1j, -1.0]), 1e-8)
    assert not v.all_real
    np.testing.assert_array_equal(v.reals, [-1.0, 3.0])


@given(rngs, small_n, small_ell)
def test_det_poly_leading_is_one_before_normalization(rng, n, ell):
    L = random_monic(rng, n, ell)
    assert abs(det_poly_leading(L) - 1) <= 1e-10
