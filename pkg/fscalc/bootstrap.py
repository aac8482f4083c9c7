"""
Certified regularity bootstraps for the semilinear model problems

.. math:: -\\Delta u + u \\partial_1 u = f, \\quad \\gamma u = \\varphi

with Dirichlet (``γ = γ₀``) or Neumann (``γ = γ₁``) boundary condition, and
the existence conditions for the stationary Navier-Stokes equations.

Every iteration alternates a nonlinear gain (the solution operator applied
to ``u d_1 u``) with a join against the target; each step is recorded with
the rule that justifies it so that the trace can be replayed.
"""

from __future__ import annotations

import dataclasses
import logging
from fractions import Fraction

from ordered_set import OrderedSet

from .constants import (
    DEFAULT_EPS,
    MAX_BOOTSTRAP_STEPS,
    IterationCase,
    Location,
    Problem,
    Reason,
    Scale,
    SectorPosition,
    TraceRule,
    VerdictStatus,
)
from .errors import BoundarySpaceError
from .green import (
    REGULARIZING,
    SOLUTION_OPERATOR,
    ClassViolation,
    apply_operator,
)
from .lattice import embeds, join
from .params import (
    DomainCtx,
    ExtExp,
    SpaceParam,
    dirichlet_threshold,
    dk_threshold,
    in_dk,
    neumann_safe_subsector,
    neumann_safe_threshold,
    neumann_threshold,
    sector_position,
    sobolev_index,
)
from .products import delta, map_b_sharp, map_b_standard, validate_epsilon
from .typing import Callable, Dict, List, Optional, Tuple
from .wrappers import BootstrapTrace, NSQuery, TraceStep, Verdict

logger = logging.getLogger("fscalc")

ANCHORS: Dict[TraceRule, str] = {
    TraceRule.NONLINEAR_GAIN_STANDARD: (
        "product estimate: u d_1 u lies in X^{s-2+delta}_{p,q}"
    ),
    TraceRule.NONLINEAR_GAIN_SHARP: (
        "product estimate through smoothness s-1: u d_1 u lies in X^{s-1}_{p*,q}"
    ),
    TraceRule.PARAMETRIX_APPLY: (
        "solution operator of order -2 applied above its class threshold"
    ),
    TraceRule.JOIN: "u = (data part in the target) + (gained part); least upper bound",
    TraceRule.EMBED: "Sobolev embedding on a bounded domain",
    TraceRule.DEFECT_ABSORB: (
        "parametrix defect ℛu = |Ω|⁻¹∫_Ω u has order -inf and lies in the target"
    ),
    TraceRule.DONE: "u lies in the target space",
}

_SECTORS: Dict[Problem, Callable[[SpaceParam, DomainCtx], Fraction]] = {
    Problem.DIRICHLET: dirichlet_threshold,
    Problem.NEUMANN: neumann_threshold,
}


class _Recorder:
    """Accumulates the steps of a trace"""

    def __init__(self) -> None:
        self.steps: List[TraceStep] = []

    def add(
        self,
        rule: TraceRule,
        inputs: Tuple[SpaceParam, ...],
        output: SpaceParam,
        **extra: object,
    ) -> TraceStep:
        step = TraceStep(
            len(self.steps), rule, inputs, output, ANCHORS[rule], **extra  # type: ignore[arg-type]
        )
        logger.debug(
            "step %d %s: %s -> %s",
            step.index,
            rule.value,
            ", ".join(map(str, inputs)),
            output,
        )
        self.steps.append(step)
        return step


def iteration_case(
    gained: SpaceParam, target: SpaceParam, ctx: DomainCtx
) -> IterationCase:
    """
    Which of the four shapes an iteration takes relative to the target:
    the gain already embeds (trivial), smoothness is still below the
    target at no worse index (sawtooth), smoothness is above the target
    but the index is not (staircase), or both are on opposite sides
    (mixed).
    """
    if embeds(gained, target, ctx):
        return IterationCase.TRIVIAL
    gained_index = sobolev_index(gained, ctx)
    target_index = sobolev_index(target, ctx)
    if gained.s < target.s and gained_index <= target_index:
        return IterationCase.SAWTOOTH
    if gained.s >= target.s:
        return IterationCase.STAIRCASE
    return IterationCase.MIXED


def _sector_verdict(
    problem: Problem, x: SpaceParam, role: str, ctx: DomainCtx
) -> Optional[Verdict]:
    threshold = _SECTORS[problem](x, ctx)
    position = sector_position(x.s, threshold)
    if position is SectorPosition.INSIDE:
        return None
    reason = (
        Reason.SECTOR_BOUNDARY
        if position is SectorPosition.BOUNDARY
        else Reason.SECTOR_VIOLATION
    )
    relation = "on the boundary of" if reason is Reason.SECTOR_BOUNDARY else "outside"
    return Verdict(
        VerdictStatus.REJECTED,
        (reason,),
        f"{role} {x} is {relation} the {problem.value} sector "
        f"(s must exceed {threshold})",
    )


def _precheck(
    problem: Problem, start: SpaceParam, target: SpaceParam, ctx: DomainCtx
) -> Optional[Verdict]:
    if start.is_boundary or target.is_boundary:
        raise BoundarySpaceError("bootstraps run on spaces over the domain")
    if start.scale is not target.scale:
        return Verdict(
            VerdictStatus.REJECTED,
            (Reason.SCALE_MISMATCH,),
            f"start {start} and target {target} are on different scales",
        )
    for role, x in (("start", start), ("target", target)):
        verdict = _sector_verdict(problem, x, role, ctx)
        if verdict:
            return verdict
    if problem is Problem.NEUMANN and not in_dk(start, 2, ctx):
        return Verdict(
            VerdictStatus.REJECTED,
            (Reason.CLASS_VIOLATION,),
            f"γ₁ is undefined on start {start} "
            f"(s must exceed {dk_threshold(2, start, ctx)})",
        )
    return None


def _standard_gain(
    problem: Problem,
    x: SpaceParam,
    ctx: DomainCtx,
    eps: Fraction,
    recorder: _Recorder,
) -> Optional[ClassViolation]:
    operator = SOLUTION_OPERATOR[problem]
    deficit = delta(x, ctx, eps)
    nonlinear = map_b_standard(x, ctx, eps)
    image = apply_operator(operator, nonlinear, ctx)
    if isinstance(image, ClassViolation):
        return image
    recorder.add(
        TraceRule.NONLINEAR_GAIN_STANDARD, (x,), nonlinear, deficit=deficit
    )
    recorder.add(TraceRule.PARAMETRIX_APPLY, (nonlinear,), image)
    return None


def _sharp_gain(
    problem: Problem,
    x: SpaceParam,
    ctx: DomainCtx,
    eps: Fraction,
    violation: ClassViolation,
    recorder: _Recorder,
) -> Optional[Verdict]:
    if not neumann_safe_subsector(x, ctx):
        return Verdict(
            VerdictStatus.REJECTED,
            (Reason.SAFE_SUBSECTOR_VIOLATION,),
            f"{violation}; the sharp route needs s > "
            f"{neumann_safe_threshold(x, ctx)} at {x}",
        )
    deficit = delta(x, ctx, eps)
    nonlinear = map_b_sharp(x, ctx)
    image = apply_operator(SOLUTION_OPERATOR[problem], nonlinear, ctx)
    if isinstance(image, ClassViolation):
        return Verdict(VerdictStatus.REJECTED, (Reason.CLASS_VIOLATION,), str(image))
    recorder.add(
        TraceRule.NONLINEAR_GAIN_SHARP,
        (x,),
        nonlinear,
        violation=violation,
        deficit=deficit,
    )
    recorder.add(TraceRule.PARAMETRIX_APPLY, (nonlinear,), image)
    gained = dataclasses.replace(x, s=x.s + deficit.value)
    recorder.add(TraceRule.EMBED, (image,), gained)
    return None


def nonlinear_gain(
    problem: Problem,
    x: SpaceParam,
    ctx: DomainCtx,
    eps: Fraction = DEFAULT_EPS,
) -> Tuple[Tuple[TraceStep, ...], Optional[Verdict]]:
    """
    One gain of regularity at ``x``: ``u`` in ``x`` implies the solution
    operator applied to ``u d_1 u`` lies in ``X^{s+delta}_{p,q}``.

    The standard route applies the solution operator to
    ``X^{s-2+delta}_{p,q}``. For the Neumann problem that space can fall
    below the class of the parametrix; the gain is then routed through
    ``X^{s-1}_{p*,q}`` and embedded back, which needs ``x`` in the safe
    subsector.

    :return: the steps taken and, when the gain is impossible, the
     rejecting verdict
    """
    recorder = _Recorder()
    violation = _standard_gain(problem, x, ctx, eps, recorder)
    if violation is None:
        return tuple(recorder.steps), None
    if problem is Problem.DIRICHLET:
        return (), Verdict(
            VerdictStatus.REJECTED, (Reason.CLASS_VIOLATION,), str(violation)
        )
    logger.info("standard route blocked at %s: %s", x, violation)
    verdict = _sharp_gain(problem, x, ctx, eps, violation, recorder)
    return tuple(recorder.steps), verdict


def _bootstrap(
    problem: Problem,
    start: SpaceParam,
    target: SpaceParam,
    ctx: DomainCtx,
    eps: Fraction,
    max_steps: int,
) -> BootstrapTrace:
    validate_epsilon(eps)
    recorder = _Recorder()

    def finish(verdict: Verdict) -> BootstrapTrace:
        logger.info(
            "%s bootstrap %s -> %s: %s",
            problem.value,
            start,
            target,
            verdict.reason if not verdict.accepted else verdict.status.value,
        )
        return BootstrapTrace(
            problem, ctx, eps, start, target, tuple(recorder.steps), verdict
        )

    rejected = _precheck(problem, start, target, ctx)
    if rejected:
        return finish(rejected)
    if problem is Problem.NEUMANN:
        recorder.add(
            TraceRule.DEFECT_ABSORB,
            (start,),
            apply_operator(REGULARIZING, start, ctx, target=target),  # type: ignore[arg-type]
        )
    current = start
    gains = 0
    while True:
        if gains >= max_steps:
            return finish(
                Verdict(
                    VerdictStatus.ABORTED,
                    (Reason.NON_TERMINATION_GUARD,),
                    f"no certificate after {max_steps} gains",
                )
            )
        steps, rejected = nonlinear_gain(problem, current, ctx, eps)
        for step in steps:
            recorder.add(
                step.rule,
                step.inputs,
                step.output,
                violation=step.violation,
                deficit=step.deficit,
            )
        if rejected:
            return finish(rejected)
        gains += 1
        gained = recorder.steps[-1].output
        case = iteration_case(gained, target, ctx)
        if case is IterationCase.TRIVIAL:
            recorder.add(TraceRule.EMBED, (gained,), target, case=case)
            recorder.add(TraceRule.DONE, (target,), target)
            return finish(Verdict(VerdictStatus.CERTIFIED))
        joined = join(target, gained, ctx)
        recorder.add(TraceRule.JOIN, (target, gained), joined, case=case)
        if joined == current:
            return finish(
                Verdict(
                    VerdictStatus.ABORTED,
                    (Reason.NO_PROGRESS,),
                    f"the iteration is stuck at {current}",
                )
            )
        current = joined


def bootstrap_dirichlet(
    start: SpaceParam,
    target: SpaceParam,
    ctx: DomainCtx,
    eps: Fraction = DEFAULT_EPS,
    max_steps: int = MAX_BOOTSTRAP_STEPS,
) -> BootstrapTrace:
    """
    Certify that a solution in ``start`` of the Dirichlet problem with
    data in the columns of ``target`` lies in ``target``.

    :param eps: deficit loss on the critical line ``s = n/p``
    :param max_steps: cap on the number of gains
    """
    return _bootstrap(Problem.DIRICHLET, start, target, ctx, eps, max_steps)


def bootstrap_neumann(
    start: SpaceParam,
    target: SpaceParam,
    ctx: DomainCtx,
    eps: Fraction = DEFAULT_EPS,
    max_steps: int = MAX_BOOTSTRAP_STEPS,
) -> BootstrapTrace:
    """
    As :func:`bootstrap_dirichlet` for the Neumann problem, whose
    parametrix leaves the defect ``ℛ`` and is only of class 0.
    """
    return _bootstrap(Problem.NEUMANN, start, target, ctx, eps, max_steps)


def data_spaces(
    problem: Problem, target: SpaceParam, ctx: DomainCtx
) -> Dict[str, SpaceParam]:
    """
    The data columns that correspond to a solution in ``target``:
    ``f`` in ``X^{t-2}_{r,o}`` and the boundary datum in
    ``B^{t-1/r}`` (Dirichlet) or ``B^{t-1-1/r}`` (Neumann), with sum
    exponent ``r`` for the F-scale and ``o`` for the B-scale.
    """
    order = 0 if problem is Problem.DIRICHLET else 1
    q = target.p if target.scale is Scale.F else target.q
    boundary = SpaceParam(
        Scale.B,
        target.s - order - target.p.recip,
        target.p,
        q,
        Location.BOUNDARY,
    )
    return {"f": dataclasses.replace(target, s=target.s - 2), "phi": boundary}


def regularity_theorem(
    problem: Problem,
    solution: SpaceParam,
    data_target: SpaceParam,
    ctx: DomainCtx,
    eps: Fraction = DEFAULT_EPS,
    max_steps: int = MAX_BOOTSTRAP_STEPS,
) -> BootstrapTrace:
    """
    The regularity statement for either problem: a solution in
    ``solution`` with data in the columns of ``data_target`` lies in
    ``data_target``. The data spaces are attached to the verdict; they are
    advisory and not enforced.
    """
    runner = bootstrap_dirichlet if problem is Problem.DIRICHLET else bootstrap_neumann
    trace = runner(solution, data_target, ctx, eps, max_steps)
    if data_target.is_boundary:
        return trace
    spaces = data_spaces(problem, data_target, ctx)
    required = 1 if problem is Problem.DIRICHLET else 2
    if not in_dk(data_target, required, ctx):
        logger.warning(
            "%s is not in D_%d; the boundary datum %s is not reached by the trace",
            data_target,
            required,
            spaces["phi"],
        )
    return dataclasses.replace(
        trace, verdict=dataclasses.replace(trace.verdict, data_spaces=spaces)
    )


def _ns_condition(x: SpaceParam, ctx: DomainCtx) -> Optional[int]:
    line = x.n_over_p(ctx.n) + 1 - Fraction(ctx.n, 2)
    two = ExtExp.of(2)
    if x.s > max(Fraction(1), line):
        return 1
    if x.s > 1 and x.s == line and (x.scale is Scale.F or x.q <= two):
        return 2
    if x.s == 1 and x.p >= two >= x.q:
        return 3
    return None


def ns_existence(query: NSQuery) -> Verdict:
    """
    Existence of a solution ``(u, pressure)`` of the stationary
    Navier-Stokes equations with ``u`` in ``X^s_{p,q}``, for ``n = 2, 3``,
    a connected domain, divergence free data and zero flux through every
    boundary component. One of

    1. ``s > max(1, n/p + 1 - n/2)``
    2. ``s > 1``, ``s = n/p + 1 - n/2`` and ``q <= 2`` (any ``q`` for the
       F-scale)
    3. ``s = 1`` and ``p >= 2 >= q``

    must hold. Every unmet hypothesis is reported.
    """
    ctx, x = query.ctx, query.param
    if x.is_boundary:
        raise BoundarySpaceError("the solution space lives on the domain")
    reasons: OrderedSet[Reason] = OrderedSet()
    details: List[str] = []
    if ctx.n not in (2, 3):
        reasons.add(Reason.DIMENSION_UNSUPPORTED)
        details.append(f"n = {ctx.n} is not 2 or 3")
    if not ctx.connected:
        reasons.add(Reason.NOT_CONNECTED)
        details.append("the domain is not connected")
    if not query.g_zero:
        reasons.add(Reason.DIVERGENCE_NONZERO)
        details.append("g is not zero")
    if not query.flux_zero_per_component:
        reasons.add(Reason.FLUX_CONDITION_UNMET)
        details.append(
            f"flux through the {ctx.boundary_components} boundary component(s) "
            "is not zero"
        )
    condition = _ns_condition(x, ctx)
    if condition is None:
        reasons.add(Reason.NO_EXISTENCE_CONDITION)
        details.append("no condition (1)-(3) satisfied")
    q = x.p if x.scale is Scale.F else x.q
    spaces = {
        "f": dataclasses.replace(x, s=x.s - 2),
        "g": dataclasses.replace(x, s=x.s - 1),
        "phi": SpaceParam(
            Scale.B, x.s - x.p.recip, x.p, q, Location.BOUNDARY
        ),
        "pressure": dataclasses.replace(x, s=x.s - 1),
        "u": x,
    }
    if reasons:
        return Verdict(
            VerdictStatus.REJECTED,
            tuple(reasons),
            "; ".join(details),
            data_spaces=spaces,
        )
    return Verdict(
        VerdictStatus.ACCEPTED,
        detail=f"condition ({condition}) holds",
        condition=condition,
        data_spaces=spaces,
    )


__all__ = [
    "ANCHORS",
    "bootstrap_dirichlet",
    "bootstrap_neumann",
    "data_spaces",
    "iteration_case",
    "nonlinear_gain",
    "ns_existence",
    "regularity_theorem",
]
