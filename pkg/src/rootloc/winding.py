"""Winding numbers of sampled closed curves via axis crossings.

The normalised curve is linearly interpolated between nodes; every
crossing of the real or imaginary axis contributes one of the four axis
values ``1, i, -1, -i`` (encoded as the exponent ``0..3`` of ``i``).
Cancelling back-and-forth excursions leaves a monotone walk around the
origin whose length gives the index.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "SampledLoop",
    "AmbiguousCrossing",
    "ZeroOnContour",
    "normalize",
    "basic_points",
    "reduce",
    "index",
    "indicator_index",
    "max_step_angle",
    "Winder",
    "AXIS",
]

AXIS = (1 + 0j, 1j, -1 + 0j, -1j)
SNAP_TOL = 1e-9
PARAM_TOL = 1e-12


class ZeroOnContour(ValueError):
    """The sampled curve vanishes at a node."""


class AmbiguousCrossing(ValueError):
    """The interpolated curve passes (numerically) through the origin."""


@dataclass(frozen=True)
class SampledLoop:
    params: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.params, dtype=float)
        v = np.asarray(self.values, dtype=complex)
        if p.ndim != 1 or p.shape != v.shape or p.size < 2:
            raise ValueError("params and values must be 1-d arrays of equal length >= 2")
        if np.any(np.diff(p) <= 0):
            raise ValueError("params must be strictly increasing")
        if v[0] != v[-1]:
            raise ValueError("loop is not closed: first and last values differ")
        object.__setattr__(self, "params", p)
        object.__setattr__(self, "values", v)


def _unit(values: np.ndarray, ref: complex) -> np.ndarray:
    mod = np.abs(values)
    if np.any(mod == 0):
        raise ZeroOnContour("curve vanishes — contour invalid")
    rot = np.conj(ref) / abs(ref)
    return values / mod * rot


def normalize(loop: SampledLoop) -> SampledLoop:
    """Unit-modulus values rotated so the loop starts (and ends) exactly at 1."""
    v = loop.values
    if v[0] == 0:
        raise ZeroOnContour("curve vanishes — contour invalid")
    u = _unit(v, v[0])
    u[0] = 1.0
    u[-1] = 1.0
    return SampledLoop(loop.params, u)


def _crossings(u: np.ndarray, close_last: bool = True) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Axis crossings of the piecewise-linear interpolant of unit values ``u``.

    A coordinate crosses zero on a segment when its sign differs at the two
    ends, with zero counted as positive.  Every crossing therefore belongs
    to exactly one segment, and a node lying on an axis cannot be lost to
    rounding of the crossing parameter.  Returns segment index, local
    parameter in [0, 1] and axis code, sorted along the curve.
    ``close_last`` is kept for call-site symmetry; the rule needs no
    special treatment of the final node.
    """
    re, im = u.real, u.imag
    nseg = u.size - 1

    segs, ts, codes = [], [], []
    for a, b, pos_code, neg_code in (
        (re, im, 1, 3),  # Re = 0 -> value +-i, sign taken from Im
        (im, re, 0, 2),  # Im = 0 -> value +-1, sign taken from Re
    ):
        pos = a >= 0
        hit = pos[:-1] != pos[1:]
        if not np.any(hit):
            continue
        idx = np.nonzero(hit)[0]
        a0, a1 = a[idx], a[idx + 1]
        th = np.clip(-a0 / (a1 - a0), 0.0, 1.0)
        other = b[idx] + th * (b[idx + 1] - b[idx])
        if np.any(np.abs(other) < SNAP_TOL):
            raise AmbiguousCrossing("ambiguous crossing — resample denser")
        segs.append(idx)
        ts.append(th)
        codes.append(np.where(other > 0, pos_code, neg_code))

    if not segs or nseg < 1:
        empty = np.zeros(0, dtype=int)
        return empty, np.zeros(0), empty
    seg = np.concatenate(segs)
    t = np.concatenate(ts)
    code = np.concatenate(codes)
    order = np.lexsort((t, seg))
    seg, t, code = seg[order], t[order], code[order]
    # one crossing per axis per segment, so a coincident pair is a pass through the origin
    same = (seg[1:] == seg[:-1]) & (np.abs(t[1:] - t[:-1]) < PARAM_TOL) & (code[1:] != code[:-1])
    if np.any(same):
        raise AmbiguousCrossing("ambiguous crossing — resample denser")
    return seg, t, code


def _snap(z: complex) -> int:
    """Axis code of the quadrant representative of a unit value."""
    return int(np.argmax([z.real, z.imag, -z.real, -z.imag]))


def basic_points(loop: SampledLoop | np.ndarray) -> list[complex]:
    """Indicator vector of a normalised loop, as axis values in parameter order.

    The start value's quadrant representative comes first and the end
    value's last; repeated neighbours are merged.  ``loop`` may also be a
    bare array of unit values (an open arc).
    """
    u = loop.values if isinstance(loop, SampledLoop) else np.asarray(loop, dtype=complex)
    _, _, code = _crossings(u, close_last=True)
    seq = [_snap(u[0])] + [int(c) for c in code] + [_snap(u[-1])]
    merged = [seq[0]]
    for c in seq[1:]:
        if c != merged[-1]:
            merged.append(c)
    return [AXIS[c] for c in merged]


def _code(value) -> int:
    for k, ax in enumerate(AXIS):
        if value == ax:
            return k
    raise ValueError(f"{value!r} is not one of 1, i, -1, -i")


def _push(stack: list[int], c: int) -> None:
    if stack and stack[-1] == c:
        return
    stack.append(c)
    if len(stack) >= 3 and stack[-1] == stack[-3]:
        del stack[-2:]


def reduce(iv: Iterable) -> list[complex]:
    """Apply both reduction rules until neither applies.

    Rule 1 drops a repeated neighbour; rule 2 drops an excursion
    ``x, y, x -> x``.  A stack gives the fixed point in one pass because a
    reduced prefix stays reduced after either rule fires.
    """
    stack: list[int] = []
    for v in iv:
        _push(stack, _code(v))
    return [AXIS[c] for c in stack]


def indicator_index(iv: Sequence) -> int:
    """Index from an indicator vector (reduced or not)."""
    red = reduce(iv)
    return _index_from_codes([_code(v) for v in red])


def _index_from_codes(stack: list[int]) -> int:
    L = len(stack)
    if L < 5:
        return 0
    sign = 1 if (stack[1] - stack[0]) % 4 == 1 else -1
    return sign * ((L - 1) // 4)


def max_step_angle(u: np.ndarray) -> float:
    """Largest argument change between consecutive unit values."""
    if u.size < 2:
        return 0.0
    return float(np.max(np.abs(np.angle(u[1:] * np.conj(u[:-1])))))


class Winder:
    """Streaming index computation over chunks of raw curve values.

    Consecutive chunks must overlap in one node; the first node of the
    first chunk fixes the rotation and the last node of the last chunk
    must equal it.
    """

    def __init__(self):
        self._ref = None
        self._stack: list[int] = []
        self._last = None
        self.max_step = 0.0

    def feed(self, values: np.ndarray, last: bool = False) -> None:
        v = np.asarray(values, dtype=complex)
        if self._ref is None:
            if v[0] == 0:
                raise ZeroOnContour("curve vanishes — contour invalid")
            self._ref = complex(v[0])
            u = _unit(v, self._ref)
            u[0] = 1.0
            _push(self._stack, 0)
        else:
            u = _unit(v, self._ref)
            u[0] = self._last
        if last:
            u[-1] = 1.0
        self.max_step = max(self.max_step, max_step_angle(u))
        _, _, code = _crossings(u, close_last=last)
        for c in code:
            _push(self._stack, int(c))
        if last:
            _push(self._stack, 0)
        self._last = u[-1]

    def result(self) -> int:
        return _index_from_codes(self._stack)


def index(loop: SampledLoop) -> int:
    """Winding number of a closed sampled curve around the origin."""
    w = Winder()
    w.feed(loop.values, last=True)
    return w.result()
