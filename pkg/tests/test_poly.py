import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rootloc.poly import Polynomial, deflate_zero_roots, derivative, evaluate, norm2

from conftest import complexes, poly, polynomials


def test_evaluate_examples():
    P = poly(1, 0, -1)
    assert evaluate(P, 0) == -1
    assert evaluate(P, 1) == 0
    assert evaluate(poly(2, 0, 1, 0), 1j) == -1j


def test_evaluate_array_matches_scalar():
    P = poly(1 + 1j, -2, 0.5j, 3)
    z = np.array([0.3 - 0.1j, 2.0, -1j])
    assert np.allclose(evaluate(P, z), [evaluate(P, w) for w in z], rtol=0, atol=1e-14)


def test_derivative_examples():
    assert derivative(poly(1, 0, -1)).coeffs == (2, 0)
    assert derivative(poly(1, 0, 0, 0)).coeffs == (3, 0, 0)
    assert derivative(poly(2, 0, 1, -5)).coeffs == (6, 0, 1)


def test_derivative_of_constant_rejected():
    with pytest.raises(ValueError, match="constant has no pipeline derivative"):
        derivative(poly(3))


def test_norm_examples():
    assert norm2(poly(1, 0, -1)) == pytest.approx(np.sqrt(2))
    assert norm2(poly(1, 0, 0, 0, 0)) == 1
    assert norm2(poly(3, 4)) == 5


def test_leading_zero_and_nonfinite_rejected():
    with pytest.raises(ValueError, match="a_0"):
        poly(0, 1)
    with pytest.raises(ValueError):
        poly(1, float("nan"))
    with pytest.raises(ValueError):
        Polynomial(())


def test_from_pairs_and_gaussian_integer_flag():
    P = Polynomial.from_pairs([[1, 2], [0, 0], [-3, 0]])
    assert P.coeffs == (1 + 2j, 0, -3)
    assert P.is_gaussian_integer()
    assert not poly(0.5, 1).is_gaussian_integer()


def test_deflate_zero_roots():
    Q, m = deflate_zero_roots(poly(1, 0, -1, 0, 0))
    assert m == 2 and Q.coeffs == (1, 0, -1)
    P = poly(1, 2)
    assert deflate_zero_roots(P) == (P, 0)
    Q, m = deflate_zero_roots(poly(5, 0))
    assert m == 1 and Q.coeffs == (5,)


@settings(max_examples=200, deadline=None)
@given(polynomials(), complexes)
def test_horner_close_to_power_sum(P, z):
    n = P.degree
    naive = sum(c * z ** (n - k) for k, c in enumerate(P.coeffs))
    scale = sum(abs(c) * abs(z) ** (n - k) for k, c in enumerate(P.coeffs))
    assert abs(evaluate(P, z) - naive) <= 10 * n * np.finfo(float).eps * scale + 1e-300


@settings(max_examples=200, deadline=None)
@given(polynomials(min_degree=2), st.integers(-5, 5), st.integers(-5, 5))
def test_derivative_is_linear(P, alpha, beta):
    # Q shares the degree of P so the sum has the same layout
    Q = Polynomial(tuple(reversed(P.coeffs)) if P.coeffs[-1] != 0 else P.coeffs)
    if Q.degree != P.degree:
        return
    if alpha * P.coeffs[0] + beta * Q.coeffs[0] == 0:
        return
    S = Polynomial(tuple(alpha * p + beta * q for p, q in zip(P.coeffs, Q.coeffs)))
    lhs = np.array(derivative(S).coeffs)
    rhs = alpha * np.array(derivative(P).coeffs) + beta * np.array(derivative(Q).coeffs)
    assert np.allclose(lhs, rhs, rtol=4 * np.finfo(float).eps, atol=1e-12)


@settings(max_examples=200, deadline=None)
@given(polynomials())
def test_norm_dominates_each_coefficient(P):
    assert all(norm2(P) >= abs(c) for c in P.coeffs)
