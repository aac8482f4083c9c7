"""Parameter calculus for Besov and Triebel-Lizorkin spaces on smooth domains."""

import logging

from ._version import __version__
from .calculator import Calculator
from .constants import Problem, Scale, TraceRule, VerdictStatus
from .errors import FscalcError
from .params import DomainCtx, ExtExp, SpaceParam, format_space, parse_space
from .replay import ReplayReport
from .wrappers import BootstrapTrace, NSQuery, TraceStep, Verdict

logging.getLogger("fscalc").addHandler(logging.NullHandler())

__all__ = [
    "BootstrapTrace",
    "Calculator",
    "DomainCtx",
    "ExtExp",
    "FscalcError",
    "NSQuery",
    "Problem",
    "ReplayReport",
    "Scale",
    "SpaceParam",
    "TraceRule",
    "TraceStep",
    "Verdict",
    "VerdictStatus",
    "__version__",
    "format_space",
    "parse_space",
]
