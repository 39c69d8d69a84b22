"""Sylvester resultant, discriminant and the square-freeness gate."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .poly import Polynomial, derivative, norm2

__all__ = [
    "sylvester",
    "resultant",
    "resultant_with_error",
    "resultant_exact",
    "discriminant",
    "is_square_free",
    "SquareFreeCheck",
]

EPS = np.finfo(float).eps


def sylvester(P: Polynomial, Q: Polynomial) -> np.ndarray:
    """(m+n) x (m+n) Sylvester matrix; ``m`` rows of P then ``n`` rows of Q."""
    n, m = P.degree, Q.degree
    if n < 1 or m < 1:
        raise ValueError("sylvester matrix needs degree >= 1 on both sides")
    size = n + m
    S = np.zeros((size, size), dtype=complex)
    for k in range(m):
        S[k, k : k + n + 1] = P.array
    for k in range(n):
        S[m + k, k : k + m + 1] = Q.array
    return S


def _det_partial_pivot(A: np.ndarray) -> tuple[complex, float]:
    """Determinant by Gaussian elimination with partial pivoting; also the growth factor."""
    U = np.array(A, dtype=complex)
    size = U.shape[0]
    scale = np.max(np.abs(U))
    biggest = scale
    det = 1.0 + 0j
    for j in range(size):
        p = j + int(np.argmax(np.abs(U[j:, j])))
        if U[p, j] == 0:
            return 0j, 1.0
        if p != j:
            U[[j, p]] = U[[p, j]]
            det = -det
        det *= U[j, j]
        if j + 1 < size:
            factors = U[j + 1 :, j] / U[j, j]
            U[j + 1 :, j:] -= np.outer(factors, U[j, j:])
            biggest = max(biggest, np.max(np.abs(U[j + 1 :, j:])))
    return det, biggest / scale if scale else 1.0


def _g_mul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _g_sub(x, y):
    return (x[0] - y[0], x[1] - y[1])


def _g_div_exact(x, y):
    nrm = y[0] * y[0] + y[1] * y[1]
    re = x[0] * y[0] + x[1] * y[1]
    im = x[1] * y[0] - x[0] * y[1]
    if re % nrm or im % nrm:
        raise ArithmeticError("inexact Gaussian-integer division")
    return (re // nrm, im // nrm)


def _bareiss(rows: list[list[tuple[int, int]]]) -> tuple[int, int]:
    """Fraction-free determinant over the Gaussian integers."""
    M = [list(r) for r in rows]
    size = len(M)
    sign = 1
    prev = (1, 0)
    for k in range(size - 1):
        if M[k][k] == (0, 0):
            for p in range(k + 1, size):
                if M[p][k] != (0, 0):
                    M[k], M[p] = M[p], M[k]
                    sign = -sign
                    break
            else:
                return (0, 0)
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                num = _g_sub(_g_mul(M[i][j], M[k][k]), _g_mul(M[i][k], M[k][j]))
                M[i][j] = _g_div_exact(num, prev)
        prev = M[k][k]
    d = M[size - 1][size - 1]
    return (sign * d[0], sign * d[1])


def resultant_exact(P: Polynomial, Q: Polynomial) -> tuple[int, int]:
    """Exact resultant ``(re, im)`` for Gaussian-integer coefficients."""
    if not (P.is_gaussian_integer() and Q.is_gaussian_integer()):
        raise ValueError("exact resultant needs Gaussian-integer coefficients")
    S = sylvester(P, Q)
    rows = [[(int(v.real), int(v.imag)) for v in row] for row in S]
    return _bareiss(rows)


def resultant_with_error(P: Polynomial, Q: Polynomial, *, exact: bool | None = None) -> tuple[complex, float]:
    """Resultant and an a-priori error radius (zero on the exact path)."""
    if exact is None:
        exact = P.is_gaussian_integer() and Q.is_gaussian_integer()
    if exact:
        re, im = resultant_exact(P, Q)
        return complex(float(re), float(im)), 0.0
    S = sylvester(P, Q)
    det, growth = _det_partial_pivot(S)
    hadamard = float(np.prod(np.linalg.norm(S, axis=1)))
    return det, S.shape[0] * growth * EPS * hadamard


def resultant(P: Polynomial, Q: Polynomial, *, exact: bool | None = None) -> complex:
    """Determinant of the Sylvester matrix.

    With ``exact=None`` the fraction-free integer path is taken whenever every
    coefficient is a Gaussian integer.
    """
    return resultant_with_error(P, Q, exact=exact)[0]


def discriminant(P: Polynomial, *, exact: bool | None = None) -> complex:
    """Standard discriminant ``a_0^(2n-2) prod_{j<k} (eta_j - eta_k)^2``."""
    n = P.degree
    if n < 2:
        raise ValueError("discriminant needs degree >= 2")
    res = resultant(P, derivative(P), exact=exact)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * res / P.coeffs[0]


class SquareFreeCheck(NamedTuple):
    square_free: bool
    magnitude: float
    exact: bool

    def __bool__(self):
        return self.square_free


def is_square_free(P: Polynomial, tol: float = 1e-8, *, exact: bool | None = None) -> SquareFreeCheck:
    """Gate on ``Res(P, P')``; ``magnitude`` is normalised by ``||P||^(n-1) ||P'||^n``.

    The normalised magnitude is invariant under scaling of P and lies in
    ``[0, 1]`` by Hadamard's inequality.
    """
    n = P.degree
    if n < 2:
        raise ValueError("square-free gate needs degree >= 2")
    Pp = derivative(P)
    if exact is None:
        exact = P.is_gaussian_integer()
    res, _ = resultant_with_error(P, Pp, exact=exact)
    scale = norm2(P) ** (n - 1) * norm2(Pp) ** n
    mag = abs(res) / scale
    ok = res != 0 if exact else mag > tol
    return SquareFreeCheck(bool(ok), float(mag), bool(exact))
