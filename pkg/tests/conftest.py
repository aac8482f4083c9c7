import os

import pytest

from fscalc import Calculator, DomainCtx, Problem, parse_space
from fscalc.bootstrap import bootstrap_dirichlet, bootstrap_neumann


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for key in list(os.environ):
        if key.startswith("FSCALC_"):
            monkeypatch.delenv(key)
    monkeypatch.setenv("NO_COLOR", "True")


@pytest.fixture
def space():
    return parse_space


@pytest.fixture
def ctx():
    def _(n=3, components=1, connected=True):
        return DomainCtx(n, components, connected)

    return _


@pytest.fixture
def calculator_factory():
    def _build_calculator(config={}, **calculator_args):
        return Calculator(config=dict(config), **calculator_args)

    return _build_calculator


@pytest.fixture
def trace_factory(space, ctx):
    def _(problem=Problem.DIRICHLET, start="F:1,2,2", target="F:2,2,2", n=3, **kwargs):
        runner = bootstrap_dirichlet if problem is Problem.DIRICHLET else bootstrap_neumann
        return runner(space(start), space(target), ctx(n), **kwargs)

    return _


@pytest.fixture
def dirichlet_trace(trace_factory):
    return trace_factory()


@pytest.fixture
def sharp_trace(trace_factory):
    """A Neumann bootstrap that has to take the sharp route twice"""
    return trace_factory(Problem.NEUMANN, "F:41/20,1,2", "F:3/2,4,2")
