from __future__ import annotations

import dataclasses
import json
from fractions import Fraction

from .constants import IterationCase, Problem, Reason, TraceRule, VerdictStatus
from .errors import FscalcError, TraceFormatError
from .green import ClassViolation
from .params import DomainCtx, SpaceParam, format_space, parse_space
from .products import Deficit
from .typing import Dict, List, Mapping, Optional, Tuple, TypedDict, cast
from .util import as_rational, format_rational


@dataclasses.dataclass(frozen=True)
class Verdict:
    """
    Outcome of a certification with machine readable reason codes
    """

    status: VerdictStatus
    reasons: Tuple[Reason, ...] = ()
    #: one line human readable explanation
    detail: str = ""
    #: which alternative of a theorem was satisfied, if any
    condition: Optional[int] = None
    #: spaces the data (or the solution) are required to lie in
    data_spaces: Mapping[str, SpaceParam] = dataclasses.field(default_factory=dict)

    @property
    def accepted(self) -> bool:
        return self.status in (VerdictStatus.CERTIFIED, VerdictStatus.ACCEPTED)

    @property
    def reason(self) -> str:
        """The one line reason printed for rejected runs"""
        codes = ", ".join(reason.value for reason in self.reasons)
        if self.detail:
            return f"{codes}: {self.detail}" if codes else self.detail
        return codes or self.status.value


@dataclasses.dataclass(frozen=True)
class TraceStep:
    """
    One justified step of a bootstrap: a rule, the spaces it was applied
    to and the space it produced.
    """

    index: int
    rule: TraceRule
    inputs: Tuple[SpaceParam, ...]
    output: SpaceParam
    #: what justifies the step
    anchor: str
    case: Optional[IterationCase] = None
    #: standard route failure that forced a sharp gain
    violation: Optional[ClassViolation] = None
    deficit: Optional[Deficit] = None


@dataclasses.dataclass(frozen=True)
class BootstrapTrace:
    """
    Certificate of a regularity bootstrap from ``start`` to ``target``
    """

    problem: Problem
    ctx: DomainCtx
    eps: Fraction
    start: SpaceParam
    target: SpaceParam
    steps: Tuple[TraceStep, ...]
    verdict: Verdict

    @property
    def certified(self) -> bool:
        return self.verdict.status is VerdictStatus.CERTIFIED

    @property
    def gain_count(self) -> int:
        """Number of nonlinear gains, the iteration count of the bootstrap"""
        return sum(
            1
            for step in self.steps
            if step.rule
            in (TraceRule.NONLINEAR_GAIN_STANDARD, TraceRule.NONLINEAR_GAIN_SHARP)
        )

    @property
    def deficits(self) -> List[Deficit]:
        return [step.deficit for step in self.steps if step.deficit is not None]


@dataclasses.dataclass(frozen=True)
class NSQuery:
    """
    Parameters of the stationary Navier-Stokes problem with Dirichlet
    condition.
    """

    ctx: DomainCtx
    param: SpaceParam
    #: the divergence datum ``g`` vanishes
    g_zero: bool = True
    #: the flux of the boundary datum through each boundary component vanishes
    flux_zero_per_component: bool = True


class ViolationDict(TypedDict):
    operator: str
    space: str
    threshold: str
    class_: int


class _StepRequired(TypedDict):
    index: int
    rule: str
    input: List[str]
    output: str
    anchor: str


class StepDict(_StepRequired, total=False):
    case: str
    deficit: str
    at_critical: bool
    violation: ViolationDict


class VerdictDict(TypedDict, total=False):
    status: str
    reasons: List[str]
    detail: str
    condition: int
    data_spaces: Dict[str, str]


class TraceDict(TypedDict):
    problem: str
    n: int
    boundary_components: int
    connected: bool
    eps: str
    start: str
    target: str
    steps: List[StepDict]
    verdict: VerdictDict
    gain_count: int


def verdict_to_dict(verdict: Verdict) -> VerdictDict:
    payload: VerdictDict = {
        "status": verdict.status.value,
        "reasons": [reason.value for reason in verdict.reasons],
        "detail": verdict.detail,
        "data_spaces": {
            name: format_space(space) for name, space in verdict.data_spaces.items()
        },
    }
    if verdict.condition is not None:
        payload["condition"] = verdict.condition
    return payload


def _step_to_dict(step: TraceStep) -> StepDict:
    payload: StepDict = {
        "index": step.index,
        "rule": step.rule.value,
        "input": [format_space(x) for x in step.inputs],
        "output": format_space(step.output),
        "anchor": step.anchor,
    }
    if step.case is not None:
        payload["case"] = step.case.value
    if step.deficit is not None:
        payload["deficit"] = format_rational(step.deficit.value)
        payload["at_critical"] = step.deficit.at_critical
    if step.violation is not None:
        payload["violation"] = {
            "operator": step.violation.operator,
            "space": format_space(step.violation.space),
            "threshold": format_rational(step.violation.threshold),
            "class_": step.violation.class_,
        }
    return payload


def trace_to_dict(trace: BootstrapTrace) -> TraceDict:
    return {
        "problem": trace.problem.value,
        "n": trace.ctx.n,
        "boundary_components": trace.ctx.boundary_components,
        "connected": trace.ctx.connected,
        "eps": format_rational(trace.eps),
        "start": format_space(trace.start),
        "target": format_space(trace.target),
        "steps": [_step_to_dict(step) for step in trace.steps],
        "verdict": verdict_to_dict(trace.verdict),
        "gain_count": trace.gain_count,
    }


def dumps(trace: BootstrapTrace) -> str:
    """Serialize a trace; identical traces give identical text"""
    return json.dumps(trace_to_dict(trace), indent=2, sort_keys=True, ensure_ascii=False)


def _verdict_from_dict(payload: VerdictDict) -> Verdict:
    return Verdict(
        VerdictStatus(payload["status"]),
        tuple(Reason(reason) for reason in payload.get("reasons", [])),
        payload.get("detail", ""),
        payload.get("condition"),
        {
            name: parse_space(literal)
            for name, literal in payload.get("data_spaces", {}).items()
        },
    )


def _step_from_dict(payload: StepDict) -> TraceStep:
    deficit = None
    if "deficit" in payload:
        deficit = Deficit(
            as_rational(payload["deficit"]), bool(payload.get("at_critical", False))
        )
    violation = None
    if "violation" in payload:
        record = payload["violation"]
        violation = ClassViolation(
            record["operator"],
            parse_space(record["space"]),
            as_rational(record["threshold"]),
            int(record["class_"]),
        )
    return TraceStep(
        int(payload["index"]),
        TraceRule(payload["rule"]),
        tuple(parse_space(literal) for literal in payload["input"]),
        parse_space(payload["output"]),
        payload["anchor"],
        IterationCase(payload["case"]) if "case" in payload else None,
        violation,
        deficit,
    )


def trace_from_dict(payload: Mapping[str, object]) -> BootstrapTrace:
    """
    :raises TraceFormatError: when a field is missing or malformed
    """
    data = cast(TraceDict, payload)
    try:
        return BootstrapTrace(
            Problem(data["problem"]),
            DomainCtx(
                int(data["n"]),
                int(data.get("boundary_components", 1)),
                bool(data.get("connected", True)),
            ),
            as_rational(data["eps"]),
            parse_space(data["start"]),
            parse_space(data["target"]),
            tuple(_step_from_dict(step) for step in data["steps"]),
            _verdict_from_dict(data["verdict"]),
        )
    except (KeyError, TypeError, ValueError, FscalcError) as e:
        raise TraceFormatError(f"malformed trace: {e}") from e


def loads(text: str) -> BootstrapTrace:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise TraceFormatError(f"trace is not valid JSON: {e}") from e
    if not isinstance(payload, dict):
        raise TraceFormatError("trace must be a JSON object")
    return trace_from_dict(payload)
