"""Origin-centred contour pieces: circles, radial rays and annulus-segment borders."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["Circle", "Ray", "SegmentBorder"]

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Circle:
    r: float

    def __post_init__(self):
        if not self.r > 0:
            raise ValueError("circle radius must be positive")

    @property
    def length(self) -> float:
        # parameter length; the parameter is the angle
        return TWO_PI

    def points(self, x: np.ndarray) -> np.ndarray:
        return self.r * np.exp(1j * x)


@dataclass(frozen=True)
class Ray:
    """Radial segment ``{r e^{i theta} : r0 <= r <= r1}``, parametrised by r."""

    theta: float
    r0: float
    r1: float

    def __post_init__(self):
        if not 0 <= self.r0 < self.r1:
            raise ValueError("ray needs 0 <= r0 < r1")

    @property
    def length(self) -> float:
        return self.r1 - self.r0

    def points(self, x: np.ndarray) -> np.ndarray:
        return (self.r0 + x) * np.exp(1j * self.theta)


@dataclass(frozen=True)
class SegmentBorder:
    """Positively oriented border of ``KS(a, b, lam, mu)``.

    Traversal: inner arc from ``mu`` down to ``lam``, ray outward along
    ``lam``, outer arc from ``lam`` up to ``mu``, ray inward along ``mu``.
    Arc pieces are parametrised by angle and ray pieces by radius, so the
    total parameter length is ``2 (b - a) + 2 (mu - lam)``.
    """

    a: float
    b: float
    lam: float
    mu: float

    def __post_init__(self):
        if not 0 < self.a < self.b:
            raise ValueError("segment border needs 0 < a < b")
        if not 0 < self.mu - self.lam < TWO_PI:
            raise ValueError("segment border needs 0 < mu - lam < 2 pi")

    @property
    def span(self) -> float:
        return self.mu - self.lam

    @property
    def width(self) -> float:
        return self.b - self.a

    @property
    def length(self) -> float:
        return 2.0 * self.width + 2.0 * self.span

    def breakpoints(self) -> tuple[float, float, float]:
        s, w = self.span, self.width
        return s, s + w, 2 * s + w

    def points(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        a, b, lam, mu = self.a, self.b, self.lam, self.mu
        p1, p2, p3 = self.breakpoints()
        out = np.empty(x.shape, dtype=complex)
        m1 = x < p1
        m2 = (x >= p1) & (x < p2)
        m3 = (x >= p2) & (x < p3)
        m4 = x >= p3
        out[m1] = a * np.exp(1j * (mu - x[m1]))
        out[m2] = (a + (x[m2] - p1)) * np.exp(1j * lam)
        out[m3] = b * np.exp(1j * (lam + (x[m3] - p2)))
        out[m4] = (b - (x[m4] - p3)) * np.exp(1j * mu)
        return out
