"""End-to-end root localisation: from coefficients to one small disc per root."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .algebra import is_square_free
from .bounds import BoundsReport, annulus_split_bound, global_bounds
from .contours import BudgetExhausted, CertificationError, Evaluator
from .geometry import SegmentBorder
from .poly import Polynomial, deflate_zero_roots
from .separation import SafeAnnulus, SafeSegment, Separator

__all__ = [
    "LocalizeConfig",
    "RootDisc",
    "LocalizeResult",
    "NotSquareFree",
    "localize",
    "enclosing_disc",
    "terminal_target",
]


class NotSquareFree(ValueError):
    """The input polynomial has a repeated root."""


@dataclass(frozen=True)
class LocalizeConfig:
    """Options for :func:`localize`.

    ``mode="certified"`` sizes every sample count from explicit bounds and
    shrinks the working tolerance to a quarter of the root-separation bound;
    ``"adaptive"`` samples by doubling and checks each output disc once more
    on a denser grid.
    """

    epsilon: float = 1e-6
    mode: str = "adaptive"
    precision_digits: int | None = None
    budget: int | None = 10**9
    scan: str = "center-out"
    square_free_tol: float = 1e-8

    def __post_init__(self):
        if not (self.epsilon > 0 and math.isfinite(self.epsilon)):
            raise ValueError("epsilon must be a positive finite number")
        if self.mode not in ("certified", "adaptive"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.budget is not None and self.budget <= 0:
            raise ValueError("budget must be positive")


@dataclass(frozen=True)
class RootDisc:
    center: complex
    radius: float
    count_certificate: int = 1
    provenance: tuple = ()


@dataclass
class LocalizeResult:
    discs: list[RootDisc]
    bounds: BoundsReport | None
    square_free: bool
    complete: bool
    mode: str
    evaluations: int
    max_N: int
    eps_eff: float
    target: float
    annulus_splits: int = 0
    split_bound: int | None = None
    regions: list[dict] = field(default_factory=list)
    message: str = ""

    def report(self) -> dict:
        return {
            "evaluations": self.evaluations,
            "max_N": self.max_N,
            "mode": self.mode,
            "complete": self.complete,
        }


def terminal_target(eps: float, R0: float) -> float:
    """Core width and angular span below which the enclosing disc has radius ``<= eps``."""
    return math.sqrt(2.0) * eps / (R0 + 2.0)


def enclosing_disc(seg) -> tuple[complex, float]:
    """Centre and radius of a disc containing the polar box ``KS(a, b, lam, mu)``.

    Accepts a :class:`SafeSegment` (its core is used), a
    :class:`SegmentBorder` or a plain ``(a, b, lam, mu)`` tuple.  The centre
    is the polar midpoint; the radius ``(sqrt2/2)(b (mu - lam) + b - a)``
    bounds the distance from it to any point of the box.
    """
    if isinstance(seg, SafeSegment):
        seg = seg.core
    if isinstance(seg, SegmentBorder):
        a, b, lam, mu = seg.a, seg.b, seg.lam, seg.mu
    else:
        a, b, lam, mu = (float(v) for v in seg)
    if not (0 <= a <= b and lam <= mu):
        raise ValueError("need 0 <= a <= b and lam <= mu")
    rm = 0.5 * (a + b)
    theta = 0.5 * (lam + mu)
    radius = (math.sqrt(2.0) / 2.0) * (b * (mu - lam) + (b - a))
    return complex(rm * math.cos(theta), rm * math.sin(theta)), radius


def _chain(sep: Separator, region_id: int) -> tuple:
    parents = {rec["id"]: rec["parent"] for rec in sep.log}
    out = []
    cur = region_id
    while cur is not None:
        out.append(cur)
        cur = parents.get(cur)
    return tuple(reversed(out))


def localize(P: Polynomial, cfg: LocalizeConfig | None = None, *, ev: Evaluator | None = None) -> LocalizeResult:
    """Disjoint discs of radius ``<= epsilon``, each holding exactly one root of P.

    Raises :class:`NotSquareFree` when P has a repeated root and
    :class:`CertificationError` when a certified step fails.  Running out of
    evaluation budget is not an error: the result is marked incomplete and
    carries the discs found so far.
    """
    cfg = cfg or LocalizeConfig()
    if P.degree < 1:
        raise ValueError("constant polynomial has no roots to localise")
    ev = ev or Evaluator(cfg.mode, budget=cfg.budget, precision=cfg.precision_digits)

    if P.degree >= 2 and not is_square_free(P, cfg.square_free_tol):
        raise NotSquareFree("not square-free")

    Q, zeros = deflate_zero_roots(P)
    if zeros > 1:
        raise NotSquareFree("not square-free")
    bounds = global_bounds(Q) if Q.degree >= 1 else None
    eps_eff = cfg.epsilon
    if cfg.mode == "certified" and bounds is not None and math.isfinite(bounds.eps0):
        eps_eff = min(cfg.epsilon, bounds.eps0 / 4.0)

    discs: list[RootDisc] = []
    if zeros == 1:
        r = eps_eff if bounds is None else min(eps_eff, bounds.inner_radius)
        discs.append(RootDisc(0j, r, 1, ("zero",)))

    if bounds is None:
        return LocalizeResult(discs, None, True, True, cfg.mode, ev.evaluations, ev.max_N, eps_eff, math.nan)

    target = terminal_target(eps_eff, bounds.R0)
    split_bound = annulus_split_bound(eps_eff, bounds.R0, Q.degree) if Q.degree >= 1 else None
    sep = Separator(Q, ev, bounds, scan=cfg.scan)
    result = LocalizeResult(discs, bounds, True, True, cfg.mode, 0, 0, eps_eff, target,
                            split_bound=split_bound, regions=sep.log)

    def finish() -> LocalizeResult:
        result.evaluations = ev.evaluations
        result.max_N = ev.max_N
        result.discs.sort(key=lambda d: (d.center.real, d.center.imag))
        return result

    try:
        root = sep.initial_annulus()
        if root.counts.roots_P != Q.degree:
            raise CertificationError("count mismatch — internal error")
        stack: list[SafeAnnulus | SafeSegment] = [root]
        while stack:
            item = stack.pop()
            if isinstance(item, SafeAnnulus):
                if item.core_width <= target:
                    result.annulus_splits = max(result.annulus_splits, item.depth)
                    stack.append(sep.carve_segment(item))
                else:
                    stack.extend(reversed(sep.split_annulus(item)))
                continue
            if item.core_span <= target and item.counts.roots_P == 1:
                discs.append(_emit(sep, item, cfg))
                continue
            if item.core_span <= target and cfg.mode == "certified":
                raise CertificationError("region not terminal — internal error")
            stack.extend(reversed(sep.split_segment(item)))
    except BudgetExhausted as exc:
        result.complete = False
        result.message = str(exc)
    return finish()


def _emit(sep: Separator, seg: SafeSegment, cfg: LocalizeConfig) -> RootDisc:
    if cfg.mode == "adaptive":
        # a-posteriori check on a grid four times denser than the working one
        check = sep.ev.winding(sep.P, seg.core, None, start=4 * sep.ev.start)
        if check != 1:
            raise CertificationError("a-posteriori verification failed, raise precision")
    center, radius = enclosing_disc(seg)
    return RootDisc(center, radius, seg.counts.roots_P, _chain(sep, seg.id))
