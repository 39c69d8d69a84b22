"""Brute-force reference tools for the test suite.

Nothing in the localisation pipeline imports this module; it exists to
check the certified machinery independently:

* :func:`reference_roots`: Aberth-Ehrlich simultaneous iteration;
* :func:`exact_square_free`: gcd of P and P' over Q(i) in exact rationals;
* :func:`angle_winding`: winding number by summing principal-value
  argument increments along a dense sample.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .poly import Polynomial, evaluate, norm2

__all__ = ["OracleRoots", "OracleError", "reference_roots", "exact_square_free", "angle_winding"]

MAX_DEGREE = 12
MAX_SWEEPS = 1000


class OracleError(RuntimeError):
    """The reference root finder did not converge (test infrastructure failure)."""


@dataclass(frozen=True)
class OracleRoots:
    roots: np.ndarray
    residuals: np.ndarray

    def min_separation(self) -> float:
        r = self.roots
        if r.size < 2:
            return np.inf
        d = np.abs(r[:, None] - r[None, :])
        d[np.diag_indices(r.size)] = np.inf
        return float(d.min())


def _tolerance(P: Polynomial, z: np.ndarray) -> np.ndarray:
    return 1e-10 * norm2(P) * np.maximum(1.0, np.abs(z)) ** P.degree


def reference_roots(P: Polynomial, *, seed: int = 12345) -> OracleRoots:
    """All roots of P by Aberth iteration from a perturbed circle, then Newton polish."""
    n = P.degree
    if n > MAX_DEGREE:
        raise ValueError(f"oracle handles degree <= {MAX_DEGREE}")
    if n < 1:
        return OracleRoots(np.zeros(0, dtype=complex), np.zeros(0))
    c = P.array
    dc = np.polyder(c)
    rng = np.random.default_rng(seed)
    # start radius from the geometric mean of the root moduli
    radius = max(abs(c[-1] / c[0]) ** (1.0 / n), 1e-3)
    phase = 2 * np.pi * (np.arange(n) + rng.uniform(0.1, 0.4)) / n
    z = radius * np.exp(1j * phase) * (1 + 0.05 * rng.standard_normal(n))

    for _ in range(MAX_SWEEPS):
        pz = np.polyval(c, z)
        dpz = np.polyval(dc, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = pz / dpz
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            inv = 1.0 / diff
            np.fill_diagonal(inv, 0.0)
            corr = ratio / (1.0 - ratio * inv.sum(axis=1))
        corr = np.where(np.isfinite(corr), corr, 0.0)
        z = z - corr
        if np.all(np.abs(corr) <= 1e-15 * np.maximum(1.0, np.abs(z))):
            break
    else:
        res = np.abs(np.polyval(c, z))
        if np.any(res >= _tolerance(P, z)):
            raise OracleError("reference root finder did not converge in 1000 sweeps")

    for _ in range(3):
        dpz = np.polyval(dc, z)
        step = np.where(dpz != 0, np.polyval(c, z) / np.where(dpz != 0, dpz, 1), 0)
        z = z - step
    res = np.abs(evaluate(P, z))
    if np.any(res >= _tolerance(P, z)):
        raise OracleError("reference roots fail the residual tolerance")
    order = np.lexsort((z.imag, z.real))
    return OracleRoots(z[order], res[order])


# -- exact gcd over Q(i) --------------------------------------------------------

_Q = tuple  # (Fraction re, Fraction im)


def _q(c: complex) -> _Q:
    if c.real != int(c.real) or c.imag != int(c.imag):
        raise ValueError("exact_square_free needs Gaussian-integer coefficients")
    return (Fraction(int(c.real)), Fraction(int(c.imag)))


def _mul(x: _Q, y: _Q) -> _Q:
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _sub(x: _Q, y: _Q) -> _Q:
    return (x[0] - y[0], x[1] - y[1])


def _div(x: _Q, y: _Q) -> _Q:
    d = y[0] * y[0] + y[1] * y[1]
    return ((x[0] * y[0] + x[1] * y[1]) / d, (x[1] * y[0] - x[0] * y[1]) / d)


def _trim(p: list) -> list:
    i = 0
    while i < len(p) and p[i] == (0, 0):
        i += 1
    return p[i:]


def _rem(a: list, b: list) -> list:
    a = list(a)
    while len(a) >= len(b):
        f = _div(a[0], b[0])
        for k in range(len(b)):
            a[k] = _sub(a[k], _mul(f, b[k]))
        a = _trim(a[1:]) if a[0] == (0, 0) else _trim(a)
    return a


def exact_square_free(P: Polynomial) -> bool:
    """True when gcd(P, P') is constant, by the Euclidean algorithm in exact arithmetic."""
    a = [_q(c) for c in P.coeffs]
    n = len(a) - 1
    if n < 1:
        return True
    b = _trim([_mul((Fraction(n - k), Fraction(0)), a[k]) for k in range(n)])
    while b:
        a, b = b, _rem(a, b)
    return len(a) == 1


# -- winding by angle accumulation --------------------------------------------


def angle_winding(values: np.ndarray) -> int:
    """Winding number of a closed dense sample by summing argument increments.

    Valid when every consecutive pair differs in argument by less than pi.
    """
    v = np.asarray(values, dtype=complex)
    steps = np.angle(v[1:] / v[:-1])
    if np.max(np.abs(steps)) >= np.pi * 0.9:
        raise ValueError("sample too coarse for angle accumulation")
    return int(round(float(np.sum(steps)) / (2 * np.pi)))
