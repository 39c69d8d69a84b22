"""Region and disc pictures for the command-line report.

The picture is advisory only: it shows the subdivision regions with their
root-free frames shaded, plus the output discs, on a fixed 1024 x 1024
canvas centred on the origin at ``400 / (R0 + 1)`` pixels per unit.
"""

from __future__ import annotations

import math

from matplotlib.figure import Figure
from matplotlib.patches import Circle as CirclePatch
from matplotlib.patches import Wedge

CANVAS_PX = 1024
DPI = 72
SAFE_COLOR = "#9ecae1"
OUTLINE_COLOR = "#3b3b3b"
DISC_COLOR = "#d62728"


def _deg(x: float) -> float:
    return math.degrees(x)


def _band(ax, r_out: float, width: float, t1: float, t2: float) -> None:
    if width <= 0 or t2 <= t1:
        return
    ax.add_patch(Wedge((0, 0), r_out, _deg(t1), _deg(t2), width=width,
                       facecolor=SAFE_COLOR, edgecolor="none", alpha=0.35))


def _outline(ax, a: float, b: float, t1: float, t2: float) -> None:
    ax.add_patch(Wedge((0, 0), b, _deg(t1), _deg(t2), width=b - a,
                       facecolor="none", edgecolor=OUTLINE_COLOR, linewidth=0.6))


def region_figure(regions: list[dict], discs: list, R0: float) -> Figure:
    """Build the figure; ``discs`` holds ``(center, radius)`` pairs."""
    size = CANVAS_PX / DPI
    fig = Figure(figsize=(size, size), dpi=DPI)
    ax = fig.add_axes([0, 0, 1, 1])
    half = (CANVAS_PX / 2) / (400.0 / (R0 + 1.0))
    ax.set_xlim(-half, half)
    ax.set_ylim(-half, half)
    ax.set_aspect("equal")
    ax.axis("off")

    for rec in regions:
        a, b, r1, r2 = rec["a"], rec["b"], rec["r1"], rec["r2"]
        if rec["kind"] == "annulus":
            lam, mu, al1, al2 = 0.0, 2 * math.pi, 0.0, 2 * math.pi
        else:
            lam, mu, al1, al2 = rec["lam"], rec["mu"], rec["al1"], rec["al2"]
        _band(ax, r1, r1 - a, lam, mu)
        _band(ax, b, b - r2, lam, mu)
        _band(ax, r2, r2 - r1, lam, al1)
        _band(ax, r2, r2 - r1, al2, mu)
        _outline(ax, a, b, lam, mu)

    for center, radius in discs:
        ax.add_patch(CirclePatch((center.real, center.imag), max(radius, half / 2000),
                                 facecolor=DISC_COLOR, edgecolor=DISC_COLOR, alpha=0.6))
    ax.plot([0], [0], marker="+", color=OUTLINE_COLOR)
    return fig


def save_region_svg(path: str, regions: list[dict], discs: list, R0: float) -> None:
    fig = region_figure(regions, discs, R0)
    fig.savefig(path, format="svg")
