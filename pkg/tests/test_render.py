import re
from fractions import Fraction

import pytest

from fscalc.constants import Problem
from fscalc.errors import TraceFormatError
from fscalc.params import DomainCtx
from fscalc.render import render_trace, sector_boundary
from fscalc.wrappers import trace_to_dict


@pytest.mark.parametrize(
    "problem, n, points",
    [
        (
            Problem.DIRICHLET,
            3,
            [(0, "1/2"), ("3/2", "1/2"), (3, 2), (4, 3)],
        ),
        (
            Problem.DIRICHLET,
            2,
            [(0, "1/2"), (1, "1/2"), (2, "3/2"), (3, "5/2")],
        ),
        (Problem.NEUMANN, 3, [(0, 1), (3, 2), (4, 3)]),
    ],
)
def test_sector_boundary(problem, n, points):
    expected = [(Fraction(x), Fraction(s)) for x, s in points]
    assert sector_boundary(problem, DomainCtx(n)) == expected


def test_document(dirichlet_trace):
    svg = render_trace(dirichlet_trace)
    assert svg.startswith('<?xml version="1.0" encoding="UTF-8"?>\n<svg ')
    assert svg.endswith("</svg>\n")
    assert "<title>dirichlet bootstrap, n = 3, eps = 1/64: F:1,2,2 -&gt; F:2,2,2</title>" in svg


def test_sector_polyline(dirichlet_trace):
    svg = render_trace(dirichlet_trace)
    assert (
        '<polyline class="sector" points="48,328 168,328 288,208 368,128" '
        'fill="none" stroke-dasharray="6,4"/>' in svg
    )


def test_markers(dirichlet_trace):
    svg = render_trace(dirichlet_trace)
    assert svg.count('<path class="cross"') == 2
    assert len(re.findall(r'<circle class="reduction"', svg)) == 2
    assert svg.count('class="gain"') == 2
    assert svg.count('class="embedding"') == 2


def test_deterministic(sharp_trace):
    assert render_trace(sharp_trace) == render_trace(sharp_trace)


def test_from_json(sharp_trace):
    assert render_trace(trace_to_dict(sharp_trace)) == render_trace(sharp_trace)


def test_integer_coordinates(sharp_trace):
    svg = render_trace(sharp_trace)
    for value in re.findall(r'(?:x1|y1|x2|y2|cx|cy)="([^"]*)"', svg):
        assert re.fullmatch(r"-?\d+", value)


def test_malformed():
    with pytest.raises(TraceFormatError):
        render_trace({"problem": "dirichlet"})


def test_trivial_trace_has_one_cross(trace_factory):
    trace = trace_factory(start="F:2,2,2", target="F:2,2,2")
    assert trace.certified
    assert render_trace(trace).count('<path class="cross"') == 1
