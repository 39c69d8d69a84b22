"""Sampling polynomials along contours, certified modulus tests and root counts.

All polynomial evaluations of the pipeline go through an :class:`Evaluator`,
which owns the sampling policy (``certified`` sample counts from explicit
bounds, or ``adaptive`` doubling), the evaluation budget and the counters
reported back to the caller.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .bounds import (
    MIN_LOOP_SAMPLES,
    ContourBounds,
    circle_lipschitz,
    geometry_lipschitz,
    grid_detection,
    index_sample_count,
    ray_lipschitz,
)
from .geometry import Circle, Ray, SegmentBorder
from .poly import Polynomial, derivative, evaluate
from .winding import (
    AmbiguousCrossing,
    SampledLoop,
    Winder,
    ZeroOnContour,
    index,
    max_step_angle,
)

__all__ = [
    "Evaluator",
    "Certificate",
    "RegionCount",
    "BudgetExhausted",
    "CertificationError",
    "ContourTouchesRoot",
    "circle_loop",
    "border_loop",
    "count_in_annulus",
    "count_in_segment",
    "border_bounds",
]

CHUNK = 1 << 20
QUARTER = math.pi / 2


class BudgetExhausted(RuntimeError):
    """The evaluation budget would be exceeded."""


class CertificationError(RuntimeError):
    """A certified claim could not be established."""


class ContourTouchesRoot(ValueError):
    """A contour node evaluates to zero within rounding."""


@dataclass(frozen=True)
class RegionCount:
    roots_P: int
    roots_Pprime: int

    def __add__(self, other: "RegionCount") -> "RegionCount":
        return RegionCount(self.roots_P + other.roots_P, self.roots_Pprime + other.roots_Pprime)

    def __sub__(self, other: "RegionCount") -> "RegionCount":
        return RegionCount(self.roots_P - other.roots_P, self.roots_Pprime - other.roots_Pprime)


@dataclass(frozen=True)
class Certificate:
    """Outcome of a modulus test of G along a circle or ray.

    ``ok`` means the sampled minimum reached ``threshold``; ``m_low`` is then a
    lower bound of ``|G|`` on the whole geometry (rigorous in certified mode,
    the sampled minimum in adaptive mode).
    """

    ok: bool
    m_low: float
    sampled_min: float
    samples: int
    threshold: float
    lipschitz: float


def _rounding_floor(G: Polynomial, rmax: float) -> float:
    d = G.degree
    scale = float(np.sum(G.abs_coeffs * rmax ** np.arange(d, -1, -1)))
    return 64.0 * np.finfo(float).eps * scale


def _rmax(geom) -> float:
    if isinstance(geom, Circle):
        return geom.r
    if isinstance(geom, Ray):
        return geom.r1
    return geom.b


def _closed(geom) -> bool:
    return not isinstance(geom, Ray)


class Evaluator:
    """Sampling policy plus evaluation accounting.

    Parameters
    ----------
    mode : ``"certified"`` or ``"adaptive"``
    budget : maximum total number of polynomial evaluations (``None`` = unlimited)
    precision : decimal digits; above 16 evaluations run in mpmath
    """

    def __init__(self, mode: str = "adaptive", budget: int | None = None, precision: int | None = None,
                 start: int = 64, max_samples: int = 1 << 22):
        if mode not in ("certified", "adaptive"):
            raise ValueError(f"unknown mode {mode!r}")
        self.mode = mode
        self.budget = budget
        self.precision = precision
        self.start = start
        self.max_samples = max_samples
        self.evaluations = 0
        self.max_N = 0
        self._cache: dict = {}

    @property
    def certified(self) -> bool:
        return self.mode == "certified"

    # -- raw evaluation -------------------------------------------------

    def charge(self, count: int) -> None:
        if self.budget is not None and self.evaluations + count > self.budget:
            raise BudgetExhausted(f"evaluation budget {self.budget} exhausted")
        self.evaluations += count

    def values(self, G: Polynomial, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        self.charge(z.size)
        if self.precision is not None and self.precision > 16:
            return self._values_mp(G, z)
        return evaluate(G, z)

    def _values_mp(self, G: Polynomial, z: np.ndarray) -> np.ndarray:
        import mpmath

        with mpmath.workdps(self.precision):
            cs = [mpmath.mpc(c) for c in G.coeffs]
            out = [complex(mpmath.polyval(cs, mpmath.mpc(w))) for w in z.ravel()]
        return np.array(out, dtype=complex).reshape(z.shape)

    def sample(self, G: Polynomial, geom, N: int) -> tuple[np.ndarray, np.ndarray]:
        """Parameters and values at ``N + 1`` equispaced nodes (closure copied)."""
        x = np.linspace(0.0, geom.length, N + 1)
        if _closed(geom):
            v = np.empty(N + 1, dtype=complex)
            v[:N] = self.values(G, geom.points(x[:N]))
            v[N] = v[0]
        else:
            v = self.values(G, geom.points(x))
        self.max_N = max(self.max_N, N)
        return x, v

    def _odd_nodes(self, G: Polynomial, geom, N: int) -> np.ndarray:
        x = (2 * np.arange(N // 2) + 1) * (geom.length / N)
        return self.values(G, geom.points(x))

    def _refine(self, G, geom, v: np.ndarray) -> np.ndarray:
        N = 2 * (v.size - 1)
        out = np.empty(N + 1, dtype=complex)
        out[0::2] = v
        out[1::2] = self._odd_nodes(G, geom, N)
        self.max_N = max(self.max_N, N)
        return out

    def stream(self, G: Polynomial, geom, N: int) -> Iterator[tuple[np.ndarray, bool]]:
        """Yield chunks of node values overlapping in one node; flag marks the last chunk."""
        self.max_N = max(self.max_N, N)
        L = geom.length
        first = None
        for start in range(0, N, CHUNK):
            stop = min(start + CHUNK, N)
            s = np.arange(start, stop + 1)
            last = stop == N
            if last and _closed(geom):
                v = np.empty(s.size, dtype=complex)
                v[:-1] = self.values(G, geom.points(s[:-1] * (L / N)))
                v[-1] = first if first is not None else v[0]
            else:
                v = self.values(G, geom.points(s * (L / N)))
            if first is None:
                first = v[0]
            yield v, last

    # -- modulus tests --------------------------------------------------

    def certify(self, G: Polynomial, geom: Circle | Ray | SegmentBorder, clearance: float) -> Certificate:
        """Test whether G stays away from zero along ``geom``.

        The threshold comes from the clearance; a geometry whose clearance
        really holds always passes.  In certified mode the sampled grid is
        refined by doubling up to the grid-detection count; a pass is
        declared once the Lipschitz margin is at most half the sampled
        minimum, and a sampled minimum below threshold on any nested grid
        rejects (finer nested grids can only lower the minimum).
        """
        key = ("cert", self.mode, G.coeffs, geom, clearance)
        if key in self._cache:
            return self._cache[key]
        if self.certified:
            cert = self._certify_grid(G, geom, clearance)
        else:
            cert = self._certify_adaptive(G, geom, clearance)
        self._cache[key] = cert
        return cert

    def _lipschitz(self, G, geom) -> float:
        return geometry_lipschitz(G, geom)

    def _certify_grid(self, G, geom, clearance) -> Certificate:
        N_formula, T = grid_detection(G, geom, clearance)
        B = self._lipschitz(G, geom)
        N = 256
        while True:
            smin = self._stream_min(G, geom, N)
            margin = B * geom.length / N / 2.0
            if smin < T:
                return Certificate(False, 0.0, smin, N, T, B)
            if margin <= smin / 2.0 or N >= N_formula:
                return Certificate(True, smin - margin, smin, N, T, B)
            N *= 2

    def _stream_min(self, G, geom, N) -> float:
        smin = math.inf
        for v, _ in self.stream(G, geom, N):
            smin = min(smin, float(np.min(np.abs(v))))
        return smin

    def _certify_adaptive(self, G, geom, clearance) -> Certificate:
        T = abs(G.coeffs[0]) * clearance**G.degree
        B = self._lipschitz(G, geom)
        if _closed(geom):
            try:
                _, smin, N = self._adaptive_winding(G, geom, reject_below=T)
            except (CertificationError, ZeroOnContour):
                return Certificate(False, 0.0, 0.0, self.max_samples, T, B)
        else:
            smin, N = self._adaptive_ray_min(G, geom)
        ok = smin >= T
        return Certificate(ok, smin if ok else 0.0, smin, N, T, B)

    def _adaptive_ray_min(self, G, geom) -> tuple[float, int]:
        N = self.start
        _, v = self.sample(G, geom, N)
        prev = None
        while True:
            mod = np.abs(v)
            smin = float(np.min(mod))
            if smin == 0:
                return 0.0, N
            step = max_step_angle(v / mod)
            if prev is not None and step < QUARTER / 2 and abs(smin - prev) <= 0.1 * smin:
                return smin, N
            if 2 * N > self.max_samples:
                return smin, N
            prev = smin
            v = self._refine(G, geom, v)
            N *= 2

    # -- windings ---------------------------------------------------------

    def winding(self, G: Polynomial, geom, cb: ContourBounds | None = None, start: int | None = None) -> int:
        """Index of G along a closed contour.

        With ``cb`` the sample count is the certified one; without, the
        adaptive policy doubles from ``start`` until the index is stable over
        two consecutive refinements with less than pi/4 turn per step.
        """
        if cb is not None:
            key = ("wind", G.coeffs, geom, cb.m_low, cb.M_up)
            if key not in self._cache:
                self._cache[key] = self._certified_winding(G, geom, cb)
            return self._cache[key]
        if self.certified:
            raise CertificationError("certified mode needs contour bounds for every winding")
        return self._adaptive_winding(G, geom, start)[0]

    def _certified_winding(self, G, geom, cb: ContourBounds) -> int:
        N = index_sample_count(geom.length, cb)
        floor = _rounding_floor(G, _rmax(geom))
        w = Winder()
        for v, last in self.stream(G, geom, N):
            if np.min(np.abs(v)) <= floor:
                raise ContourTouchesRoot("contour touches root — caller must choose a safer radius")
            try:
                w.feed(v, last=last)
            except AmbiguousCrossing:
                if w.max_step >= QUARTER:
                    break
                raise
        if w.max_step >= QUARTER:
            raise CertificationError("quarter-turn safety violated; contour bounds are wrong")
        return w.result()

    def _bisect(self, G, geom, x: np.ndarray, v: np.ndarray, mask: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Insert the midpoint of every interval flagged in ``mask``."""
        mids = 0.5 * (x[:-1][mask] + x[1:][mask])
        vm = self.values(G, geom.points(mids))
        pos = np.nonzero(mask)[0] + 1
        x = np.insert(x, pos, mids)
        v = np.insert(v, pos, vm)
        self.max_N = max(self.max_N, x.size - 1)
        return x, v

    def _adaptive_winding(self, G, geom, start: int | None = None,
                          reject_below: float = 0.0) -> tuple[int, float, int]:
        """Index, sampled minimum modulus and final sample count.

        Intervals whose argument step reaches a quarter turn are bisected
        locally, so a contour passing close to a root only pays for extra
        nodes near that root.  Once every step is below an eighth of a turn
        the index is compared with the one on the grid bisected everywhere;
        agreement ends the search.  A sampled modulus below ``reject_below``
        stops early: refinement only lowers the minimum, so the caller's
        modulus test would fail anyway.
        """
        start = self.start if start is None else start
        key = ("adapt", G.coeffs, geom, start)
        if key in self._cache:
            return self._cache[key]
        x, v = self.sample(G, geom, max(start, MIN_LOOP_SAMPLES))
        prev = None
        while True:
            mod = np.abs(v)
            if np.min(mod) == 0:
                raise ZeroOnContour("curve vanishes — contour invalid")
            if np.min(mod) < reject_below:
                return (0, float(np.min(mod)), x.size - 1)
            steps = np.abs(np.angle(v[1:] / v[:-1]))
            if np.max(steps) < QUARTER / 2:
                try:
                    idx = index(SampledLoop(x, v))
                except AmbiguousCrossing:
                    idx = None
                if idx is not None and idx == prev:
                    out = (idx, float(np.min(mod)), x.size - 1)
                    self._cache[key] = out
                    return out
                prev = idx
                mask = np.ones(steps.size, dtype=bool)
            else:
                prev = None
                mask = steps >= QUARTER / 2
            if x.size - 1 + int(mask.sum()) > self.max_samples:
                raise CertificationError("adaptive sampling did not stabilise: contour too close to a root")
            x, v = self._bisect(G, geom, x, v, mask)


# -- loops and counts -------------------------------------------------------


def _check_loop(G: Polynomial, geom, values: np.ndarray) -> None:
    if np.min(np.abs(values)) <= _rounding_floor(G, _rmax(geom)):
        raise ContourTouchesRoot("contour touches root — caller must choose a safer radius")


def circle_loop(G: Polynomial, r: float, N: int, ev: Evaluator | None = None) -> SampledLoop:
    """``G(r e^{i x_s})`` at ``x_s = 2 pi s / N``, closure copied from node 0."""
    if N < MIN_LOOP_SAMPLES:
        raise ValueError(f"need N >= {MIN_LOOP_SAMPLES}")
    ev = ev or Evaluator()
    geom = Circle(r)
    x, v = ev.sample(G, geom, N)
    _check_loop(G, geom, v)
    return SampledLoop(x, v)


def border_loop(G: Polynomial, seg: SegmentBorder, N: int, ev: Evaluator | None = None) -> SampledLoop:
    """G along the positively oriented border of an annulus segment."""
    if N < MIN_LOOP_SAMPLES:
        raise ValueError(f"need N >= {MIN_LOOP_SAMPLES}")
    ev = ev or Evaluator()
    x, v = ev.sample(G, seg, N)
    _check_loop(G, seg, v)
    return SampledLoop(x, v)


def border_bounds(G: Polynomial, seg: SegmentBorder, m_low: float, which: str = "P") -> ContourBounds:
    """Contour bounds over a segment border given a modulus lower bound on all four pieces."""
    M = max(circle_lipschitz(G, seg.b), ray_lipschitz(G, seg.b))
    return ContourBounds(m_low, M, which)


def _pair(P: Polynomial):
    return P, (derivative(P) if P.degree >= 1 else None)


def _wind(ev: Evaluator, G, geom, cb):
    if G is None or G.degree == 0:
        return 0
    return ev.winding(G, geom, cb)


def count_in_annulus(
    P: Polynomial,
    inner_r: float,
    outer_r: float,
    cb_inner: ContourBounds | None = None,
    cb_outer: ContourBounds | None = None,
    *,
    cbp_inner: ContourBounds | None = None,
    cbp_outer: ContourBounds | None = None,
    ev: Evaluator | None = None,
) -> RegionCount:
    """Roots of P (and P') with ``inner_r < |z| < outer_r`` as a winding difference.

    ``cb_*`` size the certified sample counts for P, ``cbp_*`` for P'; a
    missing bound selects adaptive sampling for that loop.
    """
    if not 0 < inner_r < outer_r:
        raise ValueError("need 0 < inner_r < outer_r")
    ev = ev or Evaluator()
    G, Gp = _pair(P)
    inner, outer = Circle(inner_r), Circle(outer_r)
    nP = _wind(ev, G, outer, cb_outer) - _wind(ev, G, inner, cb_inner)
    nPp = _wind(ev, Gp, outer, cbp_outer) - _wind(ev, Gp, inner, cbp_inner)
    if nP < 0 or nPp < 0:
        raise CertificationError("certification violated — internal error (negative count)")
    return RegionCount(nP, nPp)


def count_in_segment(
    P: Polynomial,
    seg: SegmentBorder,
    cb: ContourBounds | None = None,
    *,
    cbp: ContourBounds | None = None,
    ev: Evaluator | None = None,
) -> RegionCount:
    """Roots of P (and P') inside ``KS(a, b, lam, mu)`` from border windings."""
    ev = ev or Evaluator()
    G, Gp = _pair(P)
    nP = _wind(ev, G, seg, cb)
    nPp = _wind(ev, Gp, seg, cbp)
    if nP < 0 or nPp < 0:
        raise CertificationError("certification violated — internal error (negative count)")
    return RegionCount(nP, nPp)
