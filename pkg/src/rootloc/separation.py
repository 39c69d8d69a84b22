"""Splitting annuli and annulus segments along certified root-free circles and rays.

Regions carry a *core*: the counting contour (two circles for an annulus,
a segment border for a segment) sitting inside the root-free safe zones.
A candidate cut is accepted only when its two circles (or rays) pass the
modulus test for P and P' and the thin band (or wedge) between them has
zero winding count for both, so the band is itself a safe zone shared by
the two children.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .bounds import BoundsReport, ContourBounds, circle_lipschitz, global_bounds, tube_radius
from .contours import (
    Certificate,
    CertificationError,
    Evaluator,
    RegionCount,
    border_bounds,
)
from .geometry import TWO_PI, Circle, Ray, SegmentBorder
from .poly import Polynomial, derivative

__all__ = [
    "SafeAnnulus",
    "SafeSegment",
    "CircleCut",
    "RayCut",
    "Separator",
    "find_rootfree_circles",
    "split_annulus",
    "find_rootfree_rays",
    "carve_segment",
    "split_segment",
]

MIN_WIDTH = 1e-15
MIN_ANGLE = 4e-15


@dataclass(frozen=True)
class SafeAnnulus:
    """``K(a, b)`` whose bands ``[a, r1]`` and ``[r2, b]`` hold no root of P or P'.

    ``cert_inner`` / ``cert_outer`` are the modulus certificates of P and P'
    on the counting circles ``|z| = r1`` and ``|z| = r2``.
    """

    a: float
    b: float
    r1: float
    r2: float
    counts: RegionCount
    cert_inner: tuple = field(repr=False, compare=False, default=())
    cert_outer: tuple = field(repr=False, compare=False, default=())
    id: int = 0
    parent: int | None = None
    depth: int = 0

    def __post_init__(self):
        if not (0 < self.a < self.r1 < self.r2 < self.b):
            raise ValueError(f"invalid safe annulus a={self.a} r1={self.r1} r2={self.r2} b={self.b}")

    @property
    def c1(self) -> float:
        return self.r1 - self.a

    @property
    def c2(self) -> float:
        return self.b - self.r2

    @property
    def core_width(self) -> float:
        return self.r2 - self.r1


@dataclass(frozen=True)
class SafeSegment:
    """``KS(a, b, lam, mu)`` whose frame around the core ``KS(r1, r2, al1, al2)`` is root-free."""

    a: float
    b: float
    lam: float
    mu: float
    r1: float
    r2: float
    al1: float
    al2: float
    counts: RegionCount
    cert_inner: tuple = field(repr=False, compare=False, default=())
    cert_outer: tuple = field(repr=False, compare=False, default=())
    cert_left: tuple = field(repr=False, compare=False, default=())
    cert_right: tuple = field(repr=False, compare=False, default=())
    id: int = 0
    parent: int | None = None
    depth: int = 0

    def __post_init__(self):
        if not (0 < self.a < self.r1 < self.r2 < self.b):
            raise ValueError("invalid radial layout of safe segment")
        if not (self.lam < self.al1 < self.al2 < self.mu):
            raise ValueError("invalid angular layout of safe segment")

    @property
    def c1(self) -> float:
        return self.r1 - self.a

    @property
    def c2(self) -> float:
        return self.b - self.r2

    @property
    def theta1(self) -> float:
        return self.al1 - self.lam

    @property
    def theta2(self) -> float:
        return self.mu - self.al2

    @property
    def core(self) -> SegmentBorder:
        return SegmentBorder(self.r1, self.r2, self.al1, self.al2)

    @property
    def core_span(self) -> float:
        return self.al2 - self.al1

    @property
    def core_width(self) -> float:
        return self.r2 - self.r1


@dataclass(frozen=True)
class CircleCut:
    m0: int
    eta: float
    zeta: float
    tube: float
    cert_eta: tuple = field(repr=False)
    cert_zeta: tuple = field(repr=False)


@dataclass(frozen=True)
class RayCut:
    m0: int
    eta_angle: float
    zeta_angle: float
    tube: float
    cert_eta: tuple = field(repr=False)
    cert_zeta: tuple = field(repr=False)


def _scan_order(count: int, scan: str) -> list[int]:
    if scan == "ascending":
        return list(range(count))
    if scan == "center-out":
        mid = (count - 1) / 2.0
        return sorted(range(count), key=lambda m: (abs(m - mid), m))
    raise ValueError(f"unknown scan order {scan!r}")


class Separator:
    """Region splitting for one polynomial, sharing an :class:`Evaluator`.

    ``scan`` selects the candidate order: ``"center-out"`` tries the middle
    bands first (roughly halving regions), ``"ascending"`` takes m = 0, 1, ...
    """

    def __init__(self, P: Polynomial, ev: Evaluator | None = None, bounds: BoundsReport | None = None,
                 scan: str = "center-out"):
        self.P = P
        self.Pp = derivative(P)
        self.n = P.degree
        self.ev = ev or Evaluator()
        self.bounds = bounds or global_bounds(P)
        self.scan = scan
        self._ids = itertools.count(1)
        self.log: list[dict] = []

    # -- helpers ----------------------------------------------------------

    @property
    def polys(self):
        return (self.P, self.Pp)

    def _next_id(self) -> int:
        return next(self._ids)

    def _record(self, region) -> None:
        rec = {"id": region.id, "parent": region.parent, "roots_P": region.counts.roots_P,
               "roots_Pprime": region.counts.roots_Pprime}
        if isinstance(region, SafeAnnulus):
            rec.update(kind="annulus", a=region.a, b=region.b, r1=region.r1, r2=region.r2)
        else:
            rec.update(kind="segment", a=region.a, b=region.b, lam=region.lam, mu=region.mu,
                       r1=region.r1, r2=region.r2, al1=region.al1, al2=region.al2)
        self.log.append(rec)

    def _certify_all(self, geom, clearance: float) -> tuple | None:
        certs = []
        for G in self.polys:
            cert = self.ev.certify(G, geom, clearance)
            if not cert.ok:
                return None
            certs.append(cert)
        return tuple(certs)

    def _circle_cb(self, G: Polynomial, r: float, cert: Certificate) -> ContourBounds | None:
        if not self.ev.certified:
            return None
        return ContourBounds(cert.m_low, circle_lipschitz(G, r))

    def _wind(self, G: Polynomial, geom, cb) -> int:
        if G.degree == 0:
            return 0
        return self.ev.winding(G, geom, cb)

    def circle_windings(self, r: float, certs: tuple) -> tuple[int, int]:
        geom = Circle(r)
        return tuple(self._wind(G, geom, self._circle_cb(G, r, c)) for G, c in zip(self.polys, certs))

    def border_windings(self, border: SegmentBorder, piece_certs: list[tuple]) -> tuple[int, int]:
        out = []
        for k, G in enumerate(self.polys):
            cb = None
            if self.ev.certified:
                cb = border_bounds(G, border, min(c[k].m_low for c in piece_certs))
            out.append(self._wind(G, border, cb))
        return tuple(out)

    def _tube(self, certs: tuple) -> float:
        return min(tube_radius(G, c.threshold, self.bounds.R0) for G, c in zip(self.polys, certs))

    # -- annuli -------------------------------------------------------------

    def annulus(self, a: float, b: float, c1: float, c2: float) -> SafeAnnulus:
        """Certify and count a caller-supplied safe annulus ``K(a, b)``.

        The caller vouches that ``K(a, a + c1)`` and ``K(b - c2, b)`` hold no
        root of P or P'; the counting circles sit at ``a + c1`` and
        ``b - c2`` with clearances ``c1`` and ``c2``.
        """
        r1, r2 = a + c1, b - c2
        cin = self._certify_all(Circle(r1), c1)
        cout = self._certify_all(Circle(r2), c2)
        if cin is None or cout is None:
            raise CertificationError("certification failed — raise precision")
        w_in = self.circle_windings(r1, cin)
        w_out = self.circle_windings(r2, cout)
        ann = SafeAnnulus(a, b, r1, r2, RegionCount(w_out[0] - w_in[0], w_out[1] - w_in[1]),
                          cin, cout, id=self._next_id())
        self._record(ann)
        return ann

    def initial_annulus(self) -> SafeAnnulus:
        """``K(rho, R0 + 1)`` with counting circles at ``1.5 rho`` and ``R0 + 1/2``.

        ``rho`` is at most half the lower root bounds of both P and P', so
        the band ``[rho, 2 rho]`` is root-free, as is ``[R0, R0 + 1]``.
        """
        rho = self.bounds.inner_radius
        R0 = self.bounds.R0
        a, r1, r2, b = rho, 1.5 * rho, R0 + 0.5, R0 + 1.0
        cin = self._certify_all(Circle(r1), 0.5 * rho)
        cout = self._certify_all(Circle(r2), 0.5)
        if cin is None or cout is None:
            raise CertificationError("certification failed on the initial annulus, raise precision")
        w_in = self.circle_windings(r1, cin)
        w_out = self.circle_windings(r2, cout)
        counts = RegionCount(w_out[0] - w_in[0], w_out[1] - w_in[1])
        ann = SafeAnnulus(a, b, r1, r2, counts, cin, cout, id=0)
        self._record(ann)
        return ann

    def find_rootfree_circles(self, ann: SafeAnnulus) -> CircleCut:
        n = self.n
        h = ann.core_width
        if h < MIN_WIDTH * max(1.0, ann.r2):
            raise CertificationError("annulus too thin to separate")
        clearance = h / (6 * n)
        for m in _scan_order(2 * n, self.scan):
            rm = ann.r1 + m * h / (2 * n)
            eta, zeta = rm + h / (6 * n), rm + h / (3 * n)
            ce = self._certify_all(Circle(eta), clearance)
            if ce is None:
                continue
            cz = self._certify_all(Circle(zeta), clearance)
            if cz is None:
                continue
            we = self.circle_windings(eta, ce)
            wz = self.circle_windings(zeta, cz)
            if we != wz:
                continue
            return CircleCut(m, eta, zeta, min(self._tube(ce), self._tube(cz)), ce, cz)
        raise CertificationError("certification failed — raise precision")

    def split_annulus(self, ann: SafeAnnulus) -> list[SafeAnnulus]:
        if ann.counts.roots_P < 1:
            raise ValueError("split_annulus needs a region containing roots")
        cut = self.find_rootfree_circles(ann)
        w_in = self.circle_windings(ann.r1, ann.cert_inner)
        w_out = self.circle_windings(ann.r2, ann.cert_outer)
        w_eta = self.circle_windings(cut.eta, cut.cert_eta)
        w_zeta = self.circle_windings(cut.zeta, cut.cert_zeta)
        mid = 0.5 * (cut.eta + cut.zeta)
        inner = SafeAnnulus(ann.a, mid, ann.r1, cut.eta,
                            RegionCount(w_eta[0] - w_in[0], w_eta[1] - w_in[1]),
                            ann.cert_inner, cut.cert_eta, self._next_id(), ann.id, ann.depth + 1)
        outer = SafeAnnulus(mid, ann.b, cut.zeta, ann.r2,
                            RegionCount(w_out[0] - w_zeta[0], w_out[1] - w_zeta[1]),
                            cut.cert_zeta, ann.cert_outer, self._next_id(), ann.id, ann.depth + 1)
        for child in (inner, outer):
            if child.counts.roots_P < 0 or child.counts.roots_Pprime < 0:
                raise CertificationError("certification violated — internal error (negative count)")
        if inner.counts + outer.counts != ann.counts:
            raise CertificationError("count mismatch — internal error")
        kept = [c for c in (inner, outer) if c.counts.roots_P >= 1]
        for c in kept:
            self._record(c)
        return kept

    # -- segments -----------------------------------------------------------

    def _ray_clearance(self, region, wedge: float) -> float:
        return min(region.c1, region.c2, region.r1 * math.sin(wedge))

    def find_rootfree_rays(self, region: SafeAnnulus | SafeSegment, _skip: frozenset = frozenset()) -> RayCut:
        """First candidate wedge whose two rays pass and whose interior holds no root of P or P'."""
        n = self.n
        if isinstance(region, SafeAnnulus):
            start, span, order = 0.0, TWO_PI, list(range(2 * n))
        else:
            start, span = region.al1, region.core_span
            if span < MIN_ANGLE:
                raise CertificationError("segment thinner than machine angle")
            order = _scan_order(2 * n, self.scan)
        clearance = self._ray_clearance(region, span / (6 * n))
        for m in order:
            if m in _skip:
                continue
            th = start + m * span / (2 * n)
            eta, zeta = th + span / (6 * n), th + span / (3 * n)
            ce = self._certify_all(Ray(eta, region.r1, region.r2), clearance)
            if ce is None:
                continue
            cz = self._certify_all(Ray(zeta, region.r1, region.r2), clearance)
            if cz is None:
                continue
            wedge = SegmentBorder(region.r1, region.r2, eta, zeta)
            w = self.border_windings(wedge, [region.cert_inner, region.cert_outer, ce, cz])
            if w != (0, 0):
                continue
            return RayCut(m, eta, zeta, min(self._tube(ce), self._tube(cz)), ce, cz)
        raise CertificationError("certification failed — raise precision")

    def carve_segment(self, ann: SafeAnnulus) -> SafeSegment:
        """Remove a root-free wedge from an annulus, leaving one segment with all its roots."""
        if ann.counts.roots_P < 1:
            raise ValueError("carve_segment needs a region containing roots")
        tried: set[int] = set()
        while True:
            try:
                cut = self.find_rootfree_rays(ann, frozenset(tried))
            except CertificationError:
                raise CertificationError("carve failed — raise precision") from None
            tried.add(cut.m0)
            mid = 0.5 * (cut.eta_angle + cut.zeta_angle)
            core = SegmentBorder(ann.r1, ann.r2, cut.zeta_angle, cut.eta_angle + TWO_PI)
            certs = [ann.cert_inner, ann.cert_outer, cut.cert_zeta, cut.cert_eta]
            w = self.border_windings(core, certs)
            if RegionCount(*w) != ann.counts:
                continue
            seg = SafeSegment(ann.a, ann.b, mid, mid + TWO_PI, ann.r1, ann.r2,
                              cut.zeta_angle, cut.eta_angle + TWO_PI, RegionCount(*w),
                              ann.cert_inner, ann.cert_outer, cut.cert_zeta, cut.cert_eta,
                              self._next_id(), ann.id, 0)
            self._record(seg)
            return seg

    def split_segment(self, seg: SafeSegment) -> list[SafeSegment]:
        if seg.counts.roots_P < 1:
            raise ValueError("split_segment needs a region containing roots")
        cut = self.find_rootfree_rays(seg)
        mid = 0.5 * (cut.eta_angle + cut.zeta_angle)
        radial = [seg.cert_inner, seg.cert_outer]
        left_core = SegmentBorder(seg.r1, seg.r2, seg.al1, cut.eta_angle)
        right_core = SegmentBorder(seg.r1, seg.r2, cut.zeta_angle, seg.al2)
        wl = self.border_windings(left_core, radial + [seg.cert_left, cut.cert_eta])
        wr = self.border_windings(right_core, radial + [cut.cert_zeta, seg.cert_right])
        left = SafeSegment(seg.a, seg.b, seg.lam, mid, seg.r1, seg.r2, seg.al1, cut.eta_angle,
                           RegionCount(*wl), seg.cert_inner, seg.cert_outer, seg.cert_left, cut.cert_eta,
                           self._next_id(), seg.id, seg.depth + 1)
        right = SafeSegment(seg.a, seg.b, mid, seg.mu, seg.r1, seg.r2, cut.zeta_angle, seg.al2,
                            RegionCount(*wr), seg.cert_inner, seg.cert_outer, cut.cert_zeta, seg.cert_right,
                            self._next_id(), seg.id, seg.depth + 1)
        if left.counts + right.counts != seg.counts:
            raise CertificationError("count mismatch — internal error")
        kept = [c for c in (left, right) if c.counts.roots_P >= 1]
        for c in kept:
            self._record(c)
        return kept


def _separator(P: Polynomial, ev: Evaluator | None, scan: str) -> Separator:
    return Separator(P, ev, scan=scan)


def find_rootfree_circles(P: Polynomial, ann: SafeAnnulus, ev: Evaluator | None = None,
                          scan: str = "center-out") -> CircleCut:
    return _separator(P, ev, scan).find_rootfree_circles(ann)


def split_annulus(P: Polynomial, ann: SafeAnnulus, ev: Evaluator | None = None,
                  scan: str = "center-out") -> list[SafeAnnulus]:
    return _separator(P, ev, scan).split_annulus(ann)


def find_rootfree_rays(P: Polynomial, region, ev: Evaluator | None = None,
                       scan: str = "center-out") -> RayCut:
    return _separator(P, ev, scan).find_rootfree_rays(region)


def carve_segment(P: Polynomial, ann: SafeAnnulus, ev: Evaluator | None = None) -> SafeSegment:
    return _separator(P, ev, "ascending").carve_segment(ann)


def split_segment(P: Polynomial, seg: SafeSegment, ev: Evaluator | None = None,
                  scan: str = "center-out") -> list[SafeSegment]:
    return _separator(P, ev, scan).split_segment(seg)
