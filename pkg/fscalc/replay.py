"""
Independent validation of bootstrap traces: every step is recomputed from
its inputs and the chain of steps is checked to start at the start space
and, for certified traces, to end at the target.
"""

from __future__ import annotations

import dataclasses
import logging

from .constants import Problem, TraceRule, VerdictStatus
from .errors import FscalcError
from .green import REGULARIZING, SOLUTION_OPERATOR, ClassViolation, apply_operator
from .lattice import embeds, join
from .params import SpaceParam, neumann_safe_subsector
from .products import delta, map_b_sharp, map_b_standard
from .typing import List, Optional, Tuple
from .wrappers import BootstrapTrace, TraceStep

logger = logging.getLogger("fscalc")

_GAINS = (TraceRule.NONLINEAR_GAIN_STANDARD, TraceRule.NONLINEAR_GAIN_SHARP)


@dataclasses.dataclass(frozen=True)
class ReplayReport:
    #: every step and the chain itself check out
    valid: bool
    #: one message per failed check
    errors: Tuple[str, ...] = ()
    #: number of steps recomputed
    checked: int = 0

    def __bool__(self) -> bool:
        return self.valid


class _Replayer:
    def __init__(self, trace: BootstrapTrace) -> None:
        self.trace = trace
        self.ctx = trace.ctx
        self.errors: List[str] = []

    def fail(self, step: TraceStep, message: str) -> None:
        self.errors.append(f"step {step.index} ({step.rule.value}): {message}")

    def expect(self, step: TraceStep, expected: object) -> None:
        if isinstance(expected, ClassViolation):
            self.fail(step, str(expected))
        elif step.output != expected:
            self.fail(step, f"output {step.output} should be {expected}")

    def single_input(self, step: TraceStep) -> Optional[SpaceParam]:
        if len(step.inputs) != 1:
            self.fail(step, f"expected one input, got {len(step.inputs)}")
            return None
        return step.inputs[0]

    def check_gain(self, step: TraceStep, x: SpaceParam) -> None:
        trace = self.trace
        deficit = delta(x, self.ctx, trace.eps)
        if step.deficit is not None and step.deficit != deficit:
            self.fail(step, f"deficit {step.deficit.value} should be {deficit.value}")
        if step.rule is TraceRule.NONLINEAR_GAIN_STANDARD:
            self.expect(step, map_b_standard(x, self.ctx, trace.eps))
            return
        if trace.problem is not Problem.NEUMANN:
            self.fail(step, "the sharp route is only used for the Neumann problem")
        if not neumann_safe_subsector(x, self.ctx):
            self.fail(step, f"{x} is outside the safe subsector")
        standard = apply_operator(
            SOLUTION_OPERATOR[trace.problem],
            map_b_standard(x, self.ctx, trace.eps),
            self.ctx,
        )
        if not isinstance(standard, ClassViolation):
            self.fail(step, "the standard route was available")
        elif step.violation is not None and step.violation != standard:
            self.fail(step, f"recorded violation differs from {standard}")
        self.expect(step, map_b_sharp(x, self.ctx))

    def check_step(self, step: TraceStep) -> None:
        trace = self.trace
        if step.rule in _GAINS:
            x = self.single_input(step)
            if x is not None:
                self.check_gain(step, x)
        elif step.rule is TraceRule.PARAMETRIX_APPLY:
            x = self.single_input(step)
            if x is not None:
                self.expect(
                    step, apply_operator(SOLUTION_OPERATOR[trace.problem], x, self.ctx)
                )
        elif step.rule is TraceRule.JOIN:
            if len(step.inputs) != 2 or step.inputs[0] != trace.target:
                self.fail(step, "a join combines the target with the gained space")
            else:
                self.expect(step, join(*step.inputs, self.ctx))
        elif step.rule is TraceRule.EMBED:
            x = self.single_input(step)
            if x is not None and not embeds(x, step.output, self.ctx):
                self.fail(step, f"{x} does not embed into {step.output}")
        elif step.rule is TraceRule.DEFECT_ABSORB:
            x = self.single_input(step)
            if trace.problem is not Problem.NEUMANN:
                self.fail(step, "only the Neumann parametrix has a defect")
            elif x is not None:
                self.expect(
                    step, apply_operator(REGULARIZING, x, self.ctx, target=trace.target)
                )
        elif step.rule is TraceRule.DONE:
            if step.inputs != (trace.target,) or step.output != trace.target:
                self.fail(step, "the final step must conclude with the target")

    def run(self) -> ReplayReport:
        trace = self.trace
        current = trace.start
        for position, step in enumerate(trace.steps):
            if step.index != position:
                self.fail(step, f"index should be {position}")
            if step.rule is TraceRule.DEFECT_ABSORB:
                if step.inputs != (trace.start,):
                    self.fail(step, "the defect is absorbed from the start space")
            elif current not in step.inputs:
                self.fail(step, f"does not continue from {current}")
            try:
                self.check_step(step)
            except FscalcError as e:
                self.fail(step, str(e))
            if step.rule is not TraceRule.DEFECT_ABSORB:
                current = step.output
        if trace.verdict.status is VerdictStatus.CERTIFIED:
            if not trace.steps or trace.steps[-1].rule is not TraceRule.DONE:
                self.errors.append("a certified trace must end with a done step")
            elif current != trace.target:
                self.errors.append(f"certified trace ends at {current}")
        elif any(step.rule is TraceRule.DONE for step in trace.steps):
            self.errors.append(
                f"{trace.verdict.status.value} trace contains a done step"
            )
        for error in self.errors:
            logger.debug("replay: %s", error)
        return ReplayReport(not self.errors, tuple(self.errors), len(trace.steps))


def replay_trace(trace: BootstrapTrace) -> ReplayReport:
    """
    Recompute every step of ``trace`` with the lattice, product and
    operator rules and check that the steps chain together.
    """
    return _Replayer(trace).run()


__all__ = ["ReplayReport", "replay_trace"]
