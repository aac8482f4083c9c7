import logging
import math
import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, assume, given, settings

from fscalc.bootstrap import (
    ANCHORS,
    bootstrap_dirichlet,
    bootstrap_neumann,
    data_spaces,
    iteration_case,
    nonlinear_gain,
    regularity_theorem,
)
from fscalc.constants import IterationCase, Problem, Reason, TraceRule, VerdictStatus
from fscalc.errors import BoundarySpaceError, InvalidEpsilonError
from fscalc.lattice import embeds
from fscalc.params import (
    DomainCtx,
    SpaceParam,
    dirichlet_sector,
    neumann_sector,
    sobolev_index,
)
from fscalc.replay import replay_trace

from tests.strategies import dimensions, f_spaces


def rules(trace):
    return [step.rule for step in trace.steps]


class TestNonlinearGain:
    def test_standard(self, space, ctx):
        steps, verdict = nonlinear_gain(Problem.DIRICHLET, space("F:1,2,2"), ctx())
        assert verdict is None
        assert [step.rule for step in steps] == [
            TraceRule.NONLINEAR_GAIN_STANDARD,
            TraceRule.PARAMETRIX_APPLY,
        ]
        assert steps[0].output == space("F:-1/2,2,2")
        assert steps[0].deficit.value == Fraction(1, 2)
        assert steps[1].output == space("F:3/2,2,2")

    def test_neumann_obstruction(self, space, ctx):
        x = space("F:3/2,5/4,2")
        steps, verdict = nonlinear_gain(Problem.NEUMANN, x, ctx())
        assert verdict is None
        assert [step.rule for step in steps] == [
            TraceRule.NONLINEAR_GAIN_SHARP,
            TraceRule.PARAMETRIX_APPLY,
            TraceRule.EMBED,
        ]
        sharp = steps[0]
        assert sharp.violation.operator == "R_N"
        assert sharp.violation.space == space("F:-2/5,5/4,2")
        assert sharp.violation.threshold == Fraction(-1, 5)
        assert sharp.deficit.value == Fraction(1, 10)
        assert sharp.output == space("F:1/2,10/11,2")
        assert steps[1].output == space("F:5/2,10/11,2")
        assert steps[2].output == space("F:8/5,5/4,2")

    def test_dirichlet_takes_standard_route(self, space, ctx):
        steps, verdict = nonlinear_gain(Problem.DIRICHLET, space("F:3/2,5/4,2"), ctx())
        assert verdict is None
        assert steps[-1].output == space("F:8/5,5/4,2")
        assert all(step.violation is None for step in steps)

    def test_outside_safe_subsector(self, space, ctx):
        steps, verdict = nonlinear_gain(Problem.NEUMANN, space("F:1,2,2"), ctx())
        assert steps == ()
        assert verdict.status is VerdictStatus.REJECTED
        assert verdict.reasons == (Reason.SAFE_SUBSECTOR_VIOLATION,)

    def test_obstruction_region(self, ctx):
        rng = random.Random(3)
        n = ctx()
        for _ in range(200):
            x = Fraction(rng.randint(151, 299), 100)
            low = max(Fraction(1), x - 1)
            s = low + (Fraction(2, 3) * x - low) * Fraction(rng.randint(1, 99), 100)
            point = SpaceParam.of("F", s, 1, 2).with_np(x, n.n)
            steps, verdict = nonlinear_gain(Problem.NEUMANN, point, n)
            assert verdict is None, point
            assert steps[0].rule is TraceRule.NONLINEAR_GAIN_SHARP, point
            assert steps[-1].output.s == point.s + steps[0].deficit.value


class TestIterationCase:
    @pytest.mark.parametrize(
        "gained, case",
        [
            ("F:3,2,2", IterationCase.TRIVIAL),
            ("F:3/2,2,2", IterationCase.SAWTOOTH),
            ("F:5/2,1,2", IterationCase.STAIRCASE),
            ("F:3/2,6,2", IterationCase.MIXED),
        ],
    )
    def test_cases(self, space, ctx, gained, case):
        assert iteration_case(space(gained), space("F:2,2,2"), ctx()) is case


class TestDirichlet:
    def test_sawtooth(self, dirichlet_trace, space):
        trace = dirichlet_trace
        assert trace.certified
        assert trace.gain_count == 2
        assert rules(trace) == [
            TraceRule.NONLINEAR_GAIN_STANDARD,
            TraceRule.PARAMETRIX_APPLY,
            TraceRule.JOIN,
            TraceRule.NONLINEAR_GAIN_STANDARD,
            TraceRule.PARAMETRIX_APPLY,
            TraceRule.EMBED,
            TraceRule.DONE,
        ]
        assert trace.steps[2].output == space("F:3/2,2,2")
        assert trace.steps[2].case is IterationCase.SAWTOOTH
        assert trace.steps[4].output == space("F:159/64,2,2")
        assert trace.steps[5].case is IterationCase.TRIVIAL
        assert [d.at_critical for d in trace.deficits] == [False, True]

    @pytest.mark.parametrize(
        "start, target, n, gains",
        [
            ("F:1,2,2", "F:5/2,3,2", 3, 3),
            ("F:1,2,2", "F:1,4,2", 3, 2),
            ("B:1,2,2", "B:3/2,inf,inf", 2, 2),
            ("B:1,2,2", "B:3/2,inf,inf", 3, 3),
        ],
    )
    def test_certified(self, trace_factory, start, target, n, gains):
        trace = trace_factory(Problem.DIRICHLET, start, target, n)
        assert trace.certified, trace.verdict.reason
        assert trace.gain_count == gains
        smallest = min(deficit.value for deficit in trace.deficits)
        distance = abs(trace.target.s - trace.start.s)
        assert gains <= math.ceil(distance / smallest) + 4
        assert trace.steps[-1].rule is TraceRule.DONE
        assert replay_trace(trace)

    def test_staircase(self, trace_factory, space):
        trace = trace_factory(Problem.DIRICHLET, "F:1,2,2", "F:1,4,2")
        joins = [step for step in trace.steps if step.rule is TraceRule.JOIN]
        assert joins[0].case is IterationCase.STAIRCASE
        assert joins[0].output.s == 1

    def test_deterministic(self, trace_factory):
        assert trace_factory() == trace_factory()

    def test_every_step_anchored(self, dirichlet_trace):
        for position, step in enumerate(dirichlet_trace.steps):
            assert step.index == position
            assert step.anchor == ANCHORS[step.rule]

    def test_start_on_sector_boundary(self, trace_factory):
        trace = trace_factory(Problem.DIRICHLET, "F:1/2,2,2", "F:2,2,2")
        assert trace.verdict.status is VerdictStatus.REJECTED
        assert trace.verdict.reasons == (Reason.SECTOR_BOUNDARY,)
        assert trace.steps == ()

    def test_target_outside(self, trace_factory):
        trace = trace_factory(Problem.DIRICHLET, "F:1,2,2", "F:1,1,2")
        assert trace.verdict.reasons == (Reason.SECTOR_VIOLATION,)
        assert "target" in trace.verdict.detail

    def test_scale_mismatch(self, trace_factory):
        trace = trace_factory(Problem.DIRICHLET, "F:1,2,2", "B:2,2,2")
        assert trace.verdict.reasons == (Reason.SCALE_MISMATCH,)

    def test_boundary_spaces(self, space, ctx):
        with pytest.raises(BoundarySpaceError):
            bootstrap_dirichlet(space("B:1,2,2@boundary"), space("B:2,2,2"), ctx())

    def test_epsilon(self, space, ctx):
        with pytest.raises(InvalidEpsilonError):
            bootstrap_dirichlet(space("F:1,2,2"), space("F:2,2,2"), ctx(), eps=Fraction(1))

    def test_guard(self, trace_factory):
        trace = trace_factory(Problem.DIRICHLET, "F:1,2,2", "F:5/2,3,2", max_steps=1)
        assert trace.verdict.status is VerdictStatus.ABORTED
        assert trace.verdict.reasons == (Reason.NON_TERMINATION_GUARD,)
        assert trace.gain_count == 1
        assert not any(step.rule is TraceRule.DONE for step in trace.steps)

    def test_smaller_epsilon_same_route(self, trace_factory):
        coarse = trace_factory(eps=Fraction(1, 4))
        fine = trace_factory(eps=Fraction(1, 1024))
        assert coarse.certified and fine.certified
        assert coarse.gain_count == fine.gain_count

    def test_logging(self, trace_factory, caplog):
        with caplog.at_level(logging.DEBUG, logger="fscalc"):
            trace_factory()
        assert "step 0 nonlinear-gain-standard" in caplog.text
        assert "certified" in caplog.text

    @pytest.mark.property
    @settings(
        max_examples=100,
        deadline=None,
        suppress_health_check=[HealthCheck.filter_too_much],
    )
    @given(f_spaces(low=0, high=4), f_spaces(low=0, high=4), dimensions())
    def test_gain_bound(self, start, target, n):
        ctx = DomainCtx(n)
        assume(dirichlet_sector(start, ctx) and dirichlet_sector(target, ctx))
        trace = bootstrap_dirichlet(start, target, ctx)
        assume(trace.certified and trace.deficits)
        smallest = min(deficit.value for deficit in trace.deficits)
        rise = target.s - start.s
        index_rise = sobolev_index(target, ctx) - sobolev_index(start, ctx)
        # a staircase run also has to climb the index
        assert trace.gain_count <= math.ceil(max(rise, index_rise, 0) / smallest) + 4
        if index_rise <= rise:
            assert trace.gain_count <= math.ceil(abs(rise) / smallest) + 4


class TestNeumann:
    def test_subcritical(self, trace_factory, space):
        trace = trace_factory(Problem.NEUMANN, "F:2,2,2", "F:3,2,2")
        assert trace.certified
        assert rules(trace) == [
            TraceRule.DEFECT_ABSORB,
            TraceRule.NONLINEAR_GAIN_STANDARD,
            TraceRule.PARAMETRIX_APPLY,
            TraceRule.EMBED,
            TraceRule.DONE,
        ]
        assert trace.steps[0].output == space("F:3,2,2")

    def test_sharp_route(self, sharp_trace, space):
        trace = sharp_trace
        assert trace.certified, trace.verdict.reason
        sharp = [s for s in trace.steps if s.rule is TraceRule.NONLINEAR_GAIN_SHARP]
        assert [step.inputs[0] for step in sharp] == [
            space("F:3/2,5/4,2"),
            space("F:3/2,30/23,2"),
        ]
        joins = [s.output.n_over_p(3) for s in trace.steps if s.rule is TraceRule.JOIN]
        assert joins[:3] == [Fraction(12, 5), Fraction(23, 10), Fraction(21, 10)]
        assert replay_trace(trace)

    def test_monotone(self, sharp_trace, dirichlet_trace):
        for trace in (sharp_trace, dirichlet_trace):
            joins = [s for s in trace.steps if s.rule is TraceRule.JOIN]
            for before, after in zip(joins, joins[1:]):
                assert embeds(after.output, before.output, trace.ctx)
                assert after.output != before.output

    def test_start_not_in_d2(self, space, ctx):
        start = space("F:15/4,1/2,2")
        assert neumann_sector(start, ctx(2))
        trace = bootstrap_neumann(start, space("F:3,2,2"), ctx(2))
        assert trace.verdict.status is VerdictStatus.REJECTED
        assert trace.verdict.reasons == (Reason.CLASS_VIOLATION,)

    def test_outside_sector(self, trace_factory):
        trace = trace_factory(Problem.NEUMANN, "F:3/2,2,2", "F:3,2,2")
        assert trace.verdict.reasons == (Reason.SECTOR_BOUNDARY,)


class TestRegularityTheorem:
    def test_data_spaces(self, space, ctx):
        spaces = data_spaces(Problem.DIRICHLET, space("F:5/2,3,2"), ctx())
        assert spaces == {
            "f": space("F:1/2,3,2"),
            "phi": space("B:13/6,3,3@boundary"),
        }
        spaces = data_spaces(Problem.NEUMANN, space("B:3,2,1"), ctx())
        assert spaces["phi"] == space("B:3/2,2,1@boundary")

    def test_attached(self, space, ctx):
        trace = regularity_theorem(
            Problem.DIRICHLET, space("F:1,2,2"), space("F:2,2,2"), ctx()
        )
        assert trace.certified
        assert trace.verdict.data_spaces["f"] == space("F:0,2,2")

    def test_target_not_in_d1(self, space, ctx, caplog):
        with caplog.at_level(logging.WARNING, logger="fscalc"):
            trace = regularity_theorem(
                Problem.DIRICHLET, space("F:1,2,2"), space("F:1/4,2,2"), ctx()
            )
        assert "not in D_1" in caplog.text
        assert not trace.certified
        assert "phi" in trace.verdict.data_spaces
