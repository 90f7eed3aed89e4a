"""Plain SVG figures: grid, blocked cells, path and event markers.

Output is a pure function of its inputs (fixed 6-digit formatting, fixed
element order), so reruns are byte-identical.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .coverage_simulator import Trace, World
from .hilbert_core import Digits, ExactPoint, cell_of_digits, curve_nodes, map_standard_fast

SIZE = 480
MARGIN = 20

EVENT_COLORS = {
    "skip": "#e69500",
    "detour": "#d62728",
    "revisit": "#8e44ad",
    "ascend": "#2ca02c",
    "descend": "#17becf",
}


def _f(v: float) -> str:
    return f"{v:.6f}"


class SVG:
    def __init__(self, title: str = ""):
        self.title = title
        self.commands: list[str] = []

    @staticmethod
    def px(p: ExactPoint) -> tuple[float, float]:
        return MARGIN + float(p.x) * SIZE, MARGIN + (1 - float(p.y)) * SIZE

    def rect(self, x0: Fraction, y0: Fraction, side: Fraction, fill: str, stroke: str = "none",
             width: float = 0.0) -> None:
        x, y = self.px(ExactPoint(x0, y0 + side))
        s = float(side) * SIZE
        self.commands.append(
            f'<rect x="{_f(x)}" y="{_f(y)}" width="{_f(s)}" height="{_f(s)}" '
            f'fill="{fill}" stroke="{stroke}" stroke-width="{_f(width)}"/>')

    def line(self, a: ExactPoint, b: ExactPoint, stroke: str, width: float) -> None:
        (x1, y1), (x2, y2) = self.px(a), self.px(b)
        self.commands.append(
            f'<line x1="{_f(x1)}" y1="{_f(y1)}" x2="{_f(x2)}" y2="{_f(y2)}" '
            f'stroke="{stroke}" stroke-width="{_f(width)}"/>')

    def polyline(self, points: Sequence[ExactPoint], stroke: str = "#1f4e9c", width: float = 2.0) -> None:
        if len(points) < 2:
            return
        coords = " ".join(f"{_f(x)},{_f(y)}" for x, y in map(self.px, points))
        self.commands.append(
            f'<polyline points="{coords}" fill="none" stroke="{stroke}" '
            f'stroke-width="{_f(width)}" stroke-linejoin="round"/>')

    def circle(self, p: ExactPoint, r: float, fill: str) -> None:
        x, y = self.px(p)
        self.commands.append(f'<circle cx="{_f(x)}" cy="{_f(y)}" r="{_f(r)}" fill="{fill}"/>')

    def grid(self, order: int) -> None:
        n = 1 << order
        for k in range(n + 1):
            v = Fraction(k, n)
            self.line(ExactPoint(v, Fraction(0)), ExactPoint(v, Fraction(1)), "#cccccc", 0.5)
            self.line(ExactPoint(Fraction(0), v), ExactPoint(Fraction(1), v), "#cccccc", 0.5)

    def outline(self, prefix: Digits) -> None:
        cell = cell_of_digits(prefix)
        self.rect(cell.i * cell.side, cell.j * cell.side, cell.side, "none", "#888888", 1.0)

    def shade(self, prefix: Digits) -> None:
        cell = cell_of_digits(prefix)
        self.rect(cell.i * cell.side, cell.j * cell.side, cell.side, "#555555")

    def render(self) -> str:
        full = SIZE + 2 * MARGIN
        head = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{full}" height="{full + 16}" '
            f'viewBox="0 0 {full} {full + 16}">',
            f'<rect x="0" y="0" width="{full}" height="{full + 16}" fill="#ffffff"/>',
        ]
        body = list(self.commands)
        if self.title:
            x, y = MARGIN, full + 10
            t = self.title.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
            body.append(f'<text x="{x}" y="{y}" font-family="monospace" font-size="12">{t}</text>')
        return "\n".join(head + body + ["</svg>"]) + "\n"


def curve_svg(order: int, variant: str) -> str:
    """Approximating polygon of the standard (corner) or center map."""
    svg = SVG(f"order {order}, {variant} map")
    svg.grid(order)
    if variant == "standard":
        points = [map_standard_fast(k, order) for k in range(4 ** order)]
    elif variant == "center":
        points = [c.center for c in curve_nodes(order)]
    else:
        raise ValueError(f"unknown map variant {variant!r}")
    svg.polyline(points)
    for p in points:
        svg.circle(p, 2.5, "#1f4e9c")
    return svg.render()


def trace_svg(trace: Trace, world: World, leaves: Optional[Iterable[Digits]] = None,
              title: str = "") -> str:
    svg = SVG(title)
    if leaves is None:
        svg.grid(world.order)
    for prefix in sorted(world.blocked):
        svg.shade(prefix)
    if leaves is not None:
        for leaf in leaves:
            svg.outline(leaf)
    points = [s.cell.center for s in trace.steps]
    svg.polyline(points)
    for step in trace.steps:
        color = EVENT_COLORS.get(step.event)
        if color is not None:
            svg.circle(step.cell.center, 4.0, color)
    if points:
        svg.circle(points[0], 5.0, "#000000")
        svg.circle(points[-1], 5.0, "#ffffff")
        svg.circle(points[-1], 3.0, "#000000")
    return svg.render()

