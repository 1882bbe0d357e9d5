import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hypermatpoly.errors import NotCoprimeError, ShapeError
from hypermatpoly.interlacing import are_coprime, obreschkoff_report
from hypermatpoly.polycore import MatrixPolynomial, ScalarPolynomial, companion, sym_eigs
from hypermatpoly.sampling import generic_pair, interlacing_pair
from hypermatpoly.sdpcheck import (
    congruence_asymmetry,
    constraint_nullspace,
    feasibility_realization,
    feasibility_symmetrizer,
    minimal_realization,
    smat,
    sqrtm_psd,
    subspace_max_min_eig,
    svec,
    symmetric_basis,
)
from strategies import degrees, rngs

F = ScalarPolynomial([-1, 0, 1])
H = ScalarPolynomial([-1, -1, 1])
Z2 = ScalarPolynomial([0, 0, 1])


def comp(f):
    return companion(MatrixPolynomial.from_scalar(f)).real


def test_minimal_realization_examples():
    R = minimal_realization(F, H)
    np.testing.assert_array_equal(R.A, [[0, 1], [1, 0]])
    np.testing.assert_array_equal(R.B, [0, 1])
    np.testing.assert_array_equal(R.C, [0, -1])
    R = minimal_realization(F, F + F.derivative())
    np.testing.assert_array_equal(R.C, [0, 2])
    a, b = 0.7, -1.3
    R = minimal_realization(ScalarPolynomial([-a, 1]), ScalarPolynomial([-b, 1]))
    np.testing.assert_allclose([R.A[0, 0], R.B[0], R.C[0]], [a, 1, a - b])


def test_minimal_realization_needs_coprime_pair():
    with pytest.raises(NotCoprimeError):
        minimal_realization(F, ScalarPolynomial.from_roots([1, 3]))


@given(rngs, degrees)
def test_realization_reproduces_transfer_function(rng, ell):
    f, h = generic_pair(rng, ell)
    if not are_coprime(f, h):
        return
    R = minimal_realization(f, h)
    for z in (2.0 + 3j, -1.0 + 0.5j):
        assert abs(R.transfer(z) - h(z) / f(z)) <= 1e-8 * (1 + abs(h(z) / f(z)))


def test_svec_is_an_isometry():
    rng = np.random.default_rng(0)
    G = rng.standard_normal((4, 4))
    S = G + G.T
    assert np.linalg.norm(svec(S)) == pytest.approx(np.linalg.norm(S))
    np.testing.assert_allclose(smat(svec(S), 4), S)
    basis = symmetric_basis(3)
    gram = np.array([[np.sum(a * b) for b in basis] for a in basis])
    np.testing.assert_allclose(gram, np.eye(6), atol=1e-15)


def test_constraint_nullspace_of_commutant():
    D = np.diag([1.0, 2.0, 3.0])
    basis = constraint_nullspace([lambda P: D @ P - P @ D], 3, 1e-12)
    assert len(basis) == 3
    for E in basis:
        np.testing.assert_allclose(E, np.diag(np.diag(E)), atol=1e-14)


def test_subspace_max_min_eig_examples():
    for m in (1, 2, 4):
        P, lam = subspace_max_min_eig([np.eye(m) / math.sqrt(m)])
        assert lam == pytest.approx(1 / math.sqrt(m))
        np.testing.assert_allclose(P, np.eye(m) / math.sqrt(m))
    _, lam = subspace_max_min_eig([np.diag([1.0, -1.0]) / math.sqrt(2)])
    assert lam == pytest.approx(-1 / math.sqrt(2))
    _, lam = subspace_max_min_eig([np.diag([1.0, 0.0]), np.diag([0.0, 1.0])])
    assert lam == pytest.approx(1 / math.sqrt(2), abs=1e-9)


def test_subspace_max_min_eig_empty_and_mismatch():
    P, lam = subspace_max_min_eig([])
    assert P is None and lam == -math.inf
    with pytest.raises(ShapeError):
        subspace_max_min_eig([np.eye(2), np.eye(3)])


def test_feasibility_realization_examples():
    cert = feasibility_realization(minimal_realization(F, H))
    assert cert.feasible and cert.constraint_residual <= 1e-8
    assert not feasibility_realization(minimal_realization(F, Z2)).feasible
    cert = feasibility_realization(minimal_realization(ScalarPolynomial([0, 1]), ScalarPolynomial([-1, 1])))
    assert cert.feasible and cert.P.shape == (1, 1) and cert.P[0, 0] > 0


def test_feasibility_symmetrizer_examples():
    cert = feasibility_symmetrizer([[0, 1], [1, 0]], [[0, 1], [1, 1]])
    assert cert.feasible
    np.testing.assert_allclose(cert.P, np.eye(2) / math.sqrt(2), atol=1e-9)
    assert cert.constraint_residual <= 1e-14
    assert not feasibility_symmetrizer([[0, 1], [1, 0]], [[0, 1], [0, 0]]).feasible
    f = ScalarPolynomial.from_roots([-1.0, 0.5, 2.0])
    assert feasibility_symmetrizer(comp(f), comp(f)).feasible


def test_feasibility_symmetrizer_shape_check():
    with pytest.raises(ShapeError):
        feasibility_symmetrizer(np.eye(2), np.eye(3))


@given(rngs, st.integers(1, 6))
def test_sdp_forms_agree_with_obreschkoff(rng, ell):
    f, h = interlacing_pair(rng, ell) if rng.random() < 0.5 else generic_pair(rng, ell)
    if not are_coprime(f, h) or f.allclose(h, 1e-14):
        return
    verdict = obreschkoff_report(f, h).unanimous
    sym = feasibility_symmetrizer(comp(f), comp(h))
    real = feasibility_realization(minimal_realization(f, h))
    assert sym.feasible == real.feasible == verdict
    for cert in (sym, real):
        if cert.feasible:
            np.testing.assert_array_equal(cert.P, cert.P.T)
            assert sym_eigs(cert.P)[0] >= cert.pd_margin
            assert cert.constraint_residual <= cert.eq_tol
    if sym.feasible:
        assert congruence_asymmetry(sym.P, comp(f)) <= 1e-6
        assert congruence_asymmetry(sym.P, comp(h)) <= 1e-6


def test_sqrtm_psd_squares_back():
    rng = np.random.default_rng(5)
    G = rng.standard_normal((4, 4))
    P = G @ G.T
    D = sqrtm_psd(P)
    np.testing.assert_allclose(D @ D, P, atol=1e-10)
    np.testing.assert_allclose(D, D.T)
