"""
Deterministic SVG diagrams of bootstrap traces in the ``(n/p, s)`` plane.

Coordinates are computed with exact rationals and floored to integer
pixels, so the same trace always renders to the same bytes.
"""

from __future__ import annotations

import math
from fractions import Fraction
from xml.sax.saxutils import escape

from ordered_set import OrderedSet

from .constants import Problem, TraceRule
from .params import DomainCtx, SpaceParam
from .typing import List, Mapping, Tuple, Union
from .util import format_rational
from .wrappers import BootstrapTrace, trace_from_dict

#: pixels per unit on both axes
UNIT = 80
MARGIN = 48
MARKER = 5

Point = Tuple[Fraction, Fraction]


def sector_boundary(problem: Problem, ctx: DomainCtx) -> List[Point]:
    """
    Vertices of the lower boundary of the sector in the ``(n/p, s)``
    plane, from ``n/p = 0`` to ``n/p = n + 1``.

    For the Dirichlet problem this is ``s = max(1/2, n/p - 1 + kronecker/2)``
    and for the Neumann problem ``s = max(p^-1 + 1, n/p - 1 + kronecker/2)``.
    """
    n = ctx.n
    half = ctx.kronecker / 2
    right = Fraction(n + 1)
    if problem is Problem.DIRICHLET:
        kink = Fraction(3, 2) - half
        points = [
            (Fraction(0), Fraction(1, 2)),
            (kink, Fraction(1, 2)),
            (Fraction(n), n - 1 + half),
        ]
    else:
        # s = x/n + 1 meets s = x - 1 + kronecker/2
        kink = (2 - half) * Fraction(n, n - 1)
        points = [(Fraction(0), Fraction(1)), (kink, kink / n + 1)]
    if points[-1][0] < right:
        points.append((right, right - 1 + half))
    return points


class _Canvas:
    def __init__(self, ctx: DomainCtx, top: Fraction, bottom: Fraction) -> None:
        self.ctx = ctx
        self.left = Fraction(0)
        self.right = Fraction(ctx.n + 1)
        self.top = top
        self.bottom = bottom
        self.width = 2 * MARGIN + math.floor((self.right - self.left) * UNIT)
        self.height = 2 * MARGIN + math.floor((self.top - self.bottom) * UNIT)
        self.elements: List[str] = []

    def pixel(self, point: Point) -> Tuple[int, int]:
        x, s = point
        return (
            MARGIN + math.floor((x - self.left) * UNIT),
            MARGIN + math.floor((self.top - s) * UNIT),
        )

    def locate(self, space: SpaceParam) -> Tuple[int, int]:
        return self.pixel((space.n_over_p(self.ctx.n), space.s))

    def add(self, element: str) -> None:
        self.elements.append(element)

    def line(self, a: Tuple[int, int], b: Tuple[int, int], css: str, extra: str = "") -> None:
        self.add(
            f'<line class="{css}" x1="{a[0]}" y1="{a[1]}" x2="{b[0]}" y2="{b[1]}"{extra}/>'
        )

    def text(self, at: Tuple[int, int], label: str, css: str = "label") -> None:
        self.add(f'<text class="{css}" x="{at[0]}" y="{at[1]}">{escape(label)}</text>')


def _spaces(trace: BootstrapTrace) -> List[SpaceParam]:
    spaces = [trace.start, trace.target]
    for step in trace.steps:
        spaces.extend(step.inputs)
        spaces.append(step.output)
    return [x for x in spaces if not x.is_boundary]


def _axes(canvas: _Canvas) -> None:
    origin = canvas.pixel((Fraction(0), Fraction(0)))
    canvas.line(
        canvas.pixel((canvas.left, Fraction(0))),
        canvas.pixel((canvas.right, Fraction(0))),
        "axis",
    )
    canvas.line(
        canvas.pixel((Fraction(0), canvas.bottom)),
        canvas.pixel((Fraction(0), canvas.top)),
        "axis",
    )
    for tick in range(0, canvas.ctx.n + 2):
        at = canvas.pixel((Fraction(tick), Fraction(0)))
        canvas.text((at[0], at[1] + 16), str(tick), "tick")
    for tick in range(math.ceil(canvas.bottom), math.floor(canvas.top) + 1):
        at = canvas.pixel((Fraction(0), Fraction(tick)))
        canvas.text((at[0] - 16, at[1]), str(tick), "tick")
    right = canvas.pixel((canvas.right, Fraction(0)))
    canvas.text((right[0] - 24, origin[1] + 32), "n/p")
    top = canvas.pixel((Fraction(0), canvas.top))
    canvas.text((top[0] + 8, top[1] + 12), "s")


def _cross(canvas: _Canvas, at: Tuple[int, int], title: str) -> None:
    x, y = at
    canvas.add(
        f'<path class="cross" d="M{x - MARKER} {y - MARKER}L{x + MARKER} {y + MARKER}'
        f'M{x - MARKER} {y + MARKER}L{x + MARKER} {y - MARKER}">'
        f"<title>{escape(title)}</title></path>"
    )


def render_trace(trace: Union[BootstrapTrace, Mapping[str, object]]) -> str:
    """
    Draw a trace: the dashed sector boundary, a cross at the start and
    target spaces, a circle at every intermediate space, a dotted segment
    for every nonlinear gain and a solid arrow for every embedding and join.

    :param trace: a trace or its JSON form
    :raises TraceFormatError: for a malformed JSON trace
    """
    if not isinstance(trace, BootstrapTrace):
        trace = trace_from_dict(trace)
    ctx = trace.ctx
    sector = sector_boundary(trace.problem, ctx)
    heights = [x.s for x in _spaces(trace)] + [s for _, s in sector]
    canvas = _Canvas(ctx, max(heights) + 1, min(min(heights), Fraction(0)) - 1)

    _axes(canvas)
    polyline = " ".join("%d,%d" % canvas.pixel(point) for point in sector)
    canvas.add(
        f'<polyline class="sector" points="{polyline}" fill="none" '
        'stroke-dasharray="6,4"/>'
    )

    gain_origin = None
    for step in trace.steps:
        if step.rule in (
            TraceRule.NONLINEAR_GAIN_STANDARD,
            TraceRule.NONLINEAR_GAIN_SHARP,
        ):
            gain_origin = step.inputs[0]
        elif step.rule is TraceRule.PARAMETRIX_APPLY and gain_origin is not None:
            canvas.line(
                canvas.locate(gain_origin),
                canvas.locate(step.output),
                "gain",
                ' stroke-dasharray="2,3"',
            )
            gain_origin = None
        elif step.rule in (TraceRule.EMBED, TraceRule.JOIN):
            canvas.line(
                canvas.locate(step.inputs[-1]),
                canvas.locate(step.output),
                "embedding",
                ' marker-end="url(#arrow)"',
            )

    ends: OrderedSet[Tuple[int, int]] = OrderedSet(
        [canvas.locate(trace.start), canvas.locate(trace.target)]
    )
    reductions: OrderedSet[Tuple[int, int]] = OrderedSet()
    for step in trace.steps:
        if step.rule is TraceRule.PARAMETRIX_APPLY or step.rule is TraceRule.JOIN:
            at = canvas.locate(step.output)
            if at not in ends:
                reductions.add(at)
    for x, y in reductions:
        canvas.add(f'<circle class="reduction" cx="{x}" cy="{y}" r="{MARKER}"/>')
    for at in ends:
        _cross(canvas, at, "start" if at == canvas.locate(trace.start) else "target")

    title = (
        f"{trace.problem.value} bootstrap, n = {ctx.n}, "
        f"eps = {format_rational(trace.eps)}: {trace.start} -> {trace.target}"
    )
    header = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{canvas.width}" height="{canvas.height}" '
        f'viewBox="0 0 {canvas.width} {canvas.height}">',
        f"<title>{escape(title)}</title>",
        "<defs><marker id=\"arrow\" markerWidth=\"8\" markerHeight=\"8\" "
        'refX="7" refY="4" orient="auto"><path d="M0,0 L8,4 L0,8 z"/></marker></defs>',
        "<style>.axis,.embedding,.gain,.sector,.cross{stroke:black;fill:none}"
        ".reduction{stroke:black;fill:white}.label,.tick{font:12px sans-serif}</style>",
    ]
    return "\n".join(header + canvas.elements + ["</svg>", ""])


__all__ = ["render_trace", "sector_boundary"]
