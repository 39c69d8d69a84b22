"""Closed-form root bounds, log-derivative bounds and certified sample counts."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .algebra import resultant
from .geometry import Circle, Ray, SegmentBorder
from .poly import Polynomial, derivative, norm2

__all__ = [
    "BoundsReport",
    "ContourBounds",
    "global_bounds",
    "logderiv_circle_bounds",
    "logderiv_radial_bounds",
    "poly_circle_bounds",
    "poly_ray_bounds",
    "modulus_threshold",
    "circle_lipschitz",
    "ray_lipschitz",
    "grid_detection",
    "geometry_lipschitz",
    "index_sample_count",
    "tube_radius",
    "annulus_split_bound",
    "MIN_LOOP_SAMPLES",
]

MIN_LOOP_SAMPLES = 16


@dataclass(frozen=True)
class BoundsReport:
    R0: float
    rho0: float
    rho1: float | None
    rho2: float
    rho_tilde: float
    eps0: float
    normP: float
    disc_mag: float | None
    res_mag: float | None

    @property
    def inner_radius(self) -> float:
        """Radius below which neither P nor P' has a root except possibly z = 0, halved."""
        return min(self.rho_tilde, self.rho0 / 2.0)

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class ContourBounds:
    m_low: float
    M_up: float
    which: str = "P"

    def __post_init__(self):
        if not (self.m_low > 0 and self.M_up >= 0):
            raise ValueError(f"degenerate contour bounds m_low={self.m_low}, M_up={self.M_up}")


def _poly_for(P: Polynomial, which: str) -> Polynomial:
    if which == "P":
        return P
    if which == "Pprime":
        return derivative(P)
    raise ValueError(f"unknown polynomial selector {which!r}")


def global_bounds(P: Polynomial) -> BoundsReport:
    a = P.abs_coeffs
    n = P.degree
    if n < 1:
        raise ValueError("global bounds need degree >= 1")
    if a[n] == 0:
        raise ValueError("strip zero roots first")
    R0 = 1.0 + float(np.max(a[1:])) / a[0]
    rho0 = float(a[n] / (a[n] + np.max(a[:n])))

    # P' has coefficients (n - k) a_k, k = 0..n-1; m is its last nonzero one
    d = np.array([(n - k) * a[k] for k in range(n)])
    m = max(k for k in range(n) if d[k] != 0)
    rest = float(np.max(d[:m])) if m > 0 else 0.0
    rho2 = float(d[m] / (d[m] + rest))
    rho1 = rho2 if m == n - 1 else None

    if n == 1:
        return BoundsReport(R0, rho0, rho1, rho2, rho2 / 2, math.inf, norm2(P), None, None)

    res = resultant(P, derivative(P))
    disc_mag = abs(res) / a[0]
    nrm = norm2(P)
    eps0 = math.sqrt(3.0) * n ** (-(n + 2) / 2) * math.sqrt(disc_mag) * nrm ** (1 - n)
    return BoundsReport(R0, rho0, rho1, rho2, rho2 / 2, eps0, nrm, float(disc_mag), float(abs(res)))


def logderiv_circle_bounds(P: Polynomial, a: float, b: float, k: int, R0: float) -> ContourBounds:
    """Bounds for ``f = P'/P`` on the circle ``|z| = a + k (b - a) / 3`` of a root-free annulus.

    ``m_low`` bounds ``|f|`` from below and ``M_up`` bounds ``|df/dtheta|``.
    """
    if not b > a:
        raise ValueError("annulus needs b > a")
    if k not in (1, 2):
        raise ValueError("k must be 1 or 2")
    n = P.degree
    h = (b - a) / 3.0
    m_low = n * h ** (n - 1) / (2.0 * R0) ** n
    M_up = 9.0 * n * b / (b - a) ** 2
    return ContourBounds(m_low, M_up, "LogDeriv")


def logderiv_radial_bounds(
    P: Polynomial, a: float, b: float, c: float, lam: float, mu: float, R0: float
) -> ContourBounds:
    """Bounds for ``f = P'/P`` along the mid-angle ray of ``KS(a, b, lam, mu)``.

    Requires ``KS(a - c, b + c, lam, mu)`` free of roots of P and P'.
    ``M_up`` bounds ``|df/dr|``.
    """
    span = mu - lam
    if not 0 < span < math.pi:
        raise ValueError("need 0 < mu - lam < pi")
    if not 0 < c < a < b:
        raise ValueError("need 0 < c < a < b")
    n = P.degree
    # distance from the mid ray to the side rays is r sin(span/2) >= a sin(span/2)
    w = min(c, a * math.sin(span / 2.0))
    m_low = n * w ** (n - 1) / (2.0 * R0) ** n
    M_up = n / w**2
    return ContourBounds(m_low, M_up, "LogDeriv")


def modulus_threshold(G: Polynomial, clearance: float) -> float:
    """``|g_0| clearance^deg``: lower bound of ``|G|`` at distance >= clearance from all roots."""
    if not clearance > 0:
        raise ValueError("clearance must be positive")
    return abs(G.coeffs[0]) * clearance**G.degree


def circle_lipschitz(G: Polynomial, r: float) -> float:
    """Upper bound of ``|d/dtheta G(r e^{i theta})|``."""
    d = G.degree
    k = np.arange(d)
    return float(np.sum((d - k) * G.abs_coeffs[:d] * r ** (d - k)))


def ray_lipschitz(G: Polynomial, rmax: float) -> float:
    """Upper bound of ``|d/dr G(r e^{i theta})|`` for ``r <= rmax``."""
    d = G.degree
    k = np.arange(d)
    return float(np.sum((d - k) * G.abs_coeffs[:d] * rmax ** (d - k - 1)))


def poly_circle_bounds(P: Polynomial, r: float, clearance: float, which: str = "P") -> ContourBounds:
    G = _poly_for(P, which)
    return ContourBounds(modulus_threshold(G, clearance), circle_lipschitz(G, r), which)


def poly_ray_bounds(P: Polynomial, ray: Ray, clearance: float, which: str = "P") -> ContourBounds:
    G = _poly_for(P, which)
    return ContourBounds(modulus_threshold(G, clearance), ray_lipschitz(G, ray.r1), which)


def geometry_lipschitz(G: Polynomial, geometry: Circle | Ray | SegmentBorder) -> float:
    """Bound of ``|dG/dx|`` in the geometry's own parameter (angle on arcs, radius on rays)."""
    if isinstance(geometry, Circle):
        return circle_lipschitz(G, geometry.r)
    if isinstance(geometry, Ray):
        return ray_lipschitz(G, geometry.r1)
    if isinstance(geometry, SegmentBorder):
        return max(circle_lipschitz(G, geometry.b), ray_lipschitz(G, geometry.b))
    raise TypeError(f"unsupported geometry {geometry!r}")


def grid_detection(G: Polynomial, geometry: Circle | Ray | SegmentBorder, clearance: float) -> tuple[int, float]:
    """Sample count N and threshold T for the root-on-geometry test.

    If G vanishes somewhere on the geometry then the minimum of ``|G|`` over
    N + 1 equispaced nodes is below ``T / 2``; so a sampled minimum ``>= T``
    certifies that the geometry carries no root of G.
    """
    T = modulus_threshold(G, clearance)
    B = geometry_lipschitz(G, geometry)
    N = math.floor(geometry.length * B / T) + 1
    return 2 * N, T


def index_sample_count(L: float, cb: ContourBounds, clamp: bool = True) -> int:
    """Equispaced sample count keeping the normalised curve under 1/8 rad per step.

    With ``clamp`` (the default, used for every closed contour) the count
    is raised to at least ``MIN_LOOP_SAMPLES``.
    """
    if not cb.m_low > 0:
        raise ValueError("m_low must be positive")
    N = math.ceil(8.0 * L * cb.M_up / cb.m_low) + 1
    return max(N, MIN_LOOP_SAMPLES) if clamp else N


def tube_radius(G: Polynomial, threshold: float, R0: float) -> float:
    """Root-free tube radius around a geometry on which ``|G| >= threshold / 2`` holds
    (with margin), valid inside the disc of radius ``R0 + 1``."""
    B = ray_lipschitz(G, R0 + 1.0)
    if B == 0:
        return math.inf
    return threshold / (2.0 * B)


def annulus_split_bound(eps: float, R0: float, n: int) -> int:
    """Upper bound on annulus separations along one chain before width reaches target."""
    num = math.log(math.sqrt(2.0) * eps) - math.log(R0 * (R0 + 2.0))
    den = math.log(2 * n - 1) - math.log(2 * n)
    return math.floor(num / den) + 1
