"""Complex polynomials stored leading coefficient first.

Coefficients are kept in the order ``a_0, a_1, ..., a_n`` for
``P(z) = a_0 z^n + ... + a_n``.  This is the reverse of
``numpy.polynomial`` ordering and matches ``numpy.polyval``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

__all__ = ["Polynomial", "evaluate", "derivative", "norm2", "deflate_zero_roots"]


@dataclass(frozen=True)
class Polynomial:
    """Immutable complex polynomial, ``coeffs[0]`` is the leading coefficient."""

    coeffs: tuple

    def __post_init__(self):
        cs = tuple(complex(c) for c in self.coeffs)
        if not cs:
            raise ValueError("polynomial needs at least one coefficient")
        for c in cs:
            if not (math.isfinite(c.real) and math.isfinite(c.imag)):
                raise ValueError("non-finite coefficient")
        if cs[0] == 0:
            raise ValueError("leading coefficient a_0 must be nonzero")
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def from_pairs(cls, pairs: Sequence[Sequence[float]]) -> "Polynomial":
        return cls(tuple(complex(float(re), float(im)) for re, im in pairs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=complex)

    @cached_property
    def abs_coeffs(self) -> np.ndarray:
        return np.abs(self.array)

    def is_gaussian_integer(self) -> bool:
        return all(c.real.is_integer() and c.imag.is_integer() for c in self.coeffs)

    def __call__(self, z):
        return evaluate(self, z)

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)!r})"


def evaluate(P: Polynomial, z):
    """Horner evaluation, highest power first.  ``z`` may be a scalar or array."""
    if np.ndim(z) == 0:
        acc = 0j
        zz = complex(z)
        for c in P.coeffs:
            acc = acc * zz + c
        return acc
    zz = np.asarray(z, dtype=complex)
    acc = np.full(zz.shape, P.coeffs[0], dtype=complex)
    for c in P.coeffs[1:]:
        acc *= zz
        acc += c
    return acc


def derivative(P: Polynomial) -> Polynomial:
    n = P.degree
    if n == 0:
        raise ValueError("constant has no pipeline derivative")
    return Polynomial(tuple((n - k) * P.coeffs[k] for k in range(n)))


def norm2(P: Polynomial) -> float:
    return float(np.sqrt(np.sum(P.abs_coeffs**2)))


def deflate_zero_roots(P: Polynomial) -> tuple[Polynomial, int]:
    """Strip trailing zero coefficients; returns ``(P / z^m, m)``."""
    cs = P.coeffs
    m = 0
    while len(cs) - m > 1 and cs[len(cs) - 1 - m] == 0:
        m += 1
    if m == 0:
        return P, 0
    return Polynomial(cs[: len(cs) - m]), m
