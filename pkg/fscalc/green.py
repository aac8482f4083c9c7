"""
Order and class bookkeeping for operators of the Boutet de Monvel calculus
acting on the B- and F-scales, with the catalog of operators used by the
Dirichlet and Neumann problems.
"""

from __future__ import annotations

import dataclasses
import logging
from fractions import Fraction
from types import MappingProxyType

from .constants import Location, OperatorKind, Problem, Scale
from .errors import BoundarySpaceError, UnknownOperatorError
from .params import DomainCtx, SpaceParam, dk_threshold
from .typing import Mapping, Optional, Tuple, Union

logger = logging.getLogger("fscalc")


@dataclasses.dataclass(frozen=True)
class OperatorSpec:
    """
    An entry of the catalog.
    """

    name: str
    #: order ``d``; ``None`` stands for order ``-inf``
    order: Optional[int]
    #: smallest ``k`` such that the operator is bounded on ``D_k``
    class_: int
    kind: OperatorKind
    maps_to_boundary: bool = False
    description: str = ""

    @property
    def takes_boundary_input(self) -> bool:
        return self.kind is OperatorKind.POISSON

    def __str__(self) -> str:
        return self.name


@dataclasses.dataclass(frozen=True)
class SystemSpec:
    """A column of operators applied to the same interior space"""

    name: str
    entries: Tuple[OperatorSpec, ...]
    description: str = ""

    @property
    def class_(self) -> int:
        return max(entry.class_ for entry in self.entries)


@dataclasses.dataclass(frozen=True)
class ClassViolation:
    """
    An operator applied below its class. This is a result, not an error:
    the operator is not even defined on the space.
    """

    operator: str
    space: SpaceParam
    #: the value ``s`` must strictly exceed
    threshold: Fraction
    class_: int

    @property
    def on_boundary(self) -> bool:
        return self.space.s == self.threshold

    def __str__(self) -> str:
        return (
            f"{self.operator} (class {self.class_}) is undefined on {self.space}: "
            f"s must exceed {self.threshold}"
        )


@dataclasses.dataclass(frozen=True)
class SystemImage:
    system: str
    interior: SpaceParam
    boundary: SpaceParam


@dataclasses.dataclass(frozen=True)
class ParametrixDefect:
    problem: Problem
    #: ``None`` when the parametrix is an exact inverse
    operator: Optional[OperatorSpec]
    description: str

    @property
    def is_zero(self) -> bool:
        return self.operator is None


LAPLACIAN = OperatorSpec("-Delta", 2, 0, OperatorKind.INTERIOR, description="-Δ_Ω")
GAMMA0 = OperatorSpec(
    "gamma0", 0, 1, OperatorKind.TRACE, True, "γ₀, restriction to the boundary"
)
GAMMA1 = OperatorSpec(
    "gamma1", 1, 2, OperatorKind.TRACE, True, "γ₁, normal derivative at the boundary"
)
R_D = OperatorSpec(
    "R_D", -2, -1, OperatorKind.INTERIOR, description="Dirichlet solution operator"
)
K_D = OperatorSpec(
    "K_D", 0, -1, OperatorKind.POISSON, description="Dirichlet Poisson operator"
)
R_N = OperatorSpec(
    "R_N", -2, 0, OperatorKind.INTERIOR, description="Neumann parametrix, interior part"
)
K_N = OperatorSpec(
    "K_N", -1, 0, OperatorKind.POISSON, description="Neumann parametrix, Poisson part"
)
REGULARIZING = OperatorSpec(
    "R",
    None,
    2,
    OperatorKind.REGULARIZING,
    description="ℛu = |Ω|⁻¹∫_Ω u, the defect of the Neumann parametrix",
)

CATALOG: Mapping[str, OperatorSpec] = MappingProxyType(
    {
        op.name: op
        for op in (LAPLACIAN, GAMMA0, GAMMA1, R_D, K_D, R_N, K_N, REGULARIZING)
    }
)

A_D = SystemSpec("A_D", (LAPLACIAN, GAMMA0), "(-Δ, γ₀), the Dirichlet problem")
A_N = SystemSpec("A_N", (LAPLACIAN, GAMMA1), "(-Δ, γ₁), the Neumann problem")

SYSTEMS: Mapping[str, SystemSpec] = MappingProxyType({A_D.name: A_D, A_N.name: A_N})

#: the solution operator of each problem, applied to the nonlinearity
SOLUTION_OPERATOR: Mapping[Problem, OperatorSpec] = MappingProxyType(
    {Problem.DIRICHLET: R_D, Problem.NEUMANN: R_N}
)


def get_operator(name: str) -> OperatorSpec:
    """
    :raises UnknownOperatorError: if ``name`` is not in :data:`CATALOG`
    """
    try:
        return CATALOG[name]
    except KeyError:
        raise UnknownOperatorError(
            f"unknown operator {name!r}; known: {', '.join(CATALOG)}"
        ) from None


def get_system(name: str) -> SystemSpec:
    try:
        return SYSTEMS[name]
    except KeyError:
        raise UnknownOperatorError(
            f"unknown system {name!r}; known: {', '.join(SYSTEMS)}"
        ) from None


def _interior_equivalent(op: OperatorSpec, x: SpaceParam) -> Fraction:
    """
    Smoothness of the column entry the operator acts on: boundary data in
    ``B^{s-1/p}`` counts as ``s``.
    """
    if op.takes_boundary_input:
        return x.s + x.p.recip
    return x.s


def _check_location(op: OperatorSpec, x: SpaceParam) -> None:
    if op.takes_boundary_input and not x.is_boundary:
        raise BoundarySpaceError(f"{op} acts on boundary data, got {x}")
    if not op.takes_boundary_input and x.is_boundary:
        raise BoundarySpaceError(f"{op} acts on interior spaces, got {x}")


def class_threshold(op: OperatorSpec, x: SpaceParam, ctx: DomainCtx) -> Fraction:
    """``class + max(1/p - 1, n/p - n)``"""
    return dk_threshold(op.class_, x, ctx)


def image_of(
    op: OperatorSpec,
    x: SpaceParam,
    ctx: DomainCtx,
    scale: Optional[Scale] = None,
) -> SpaceParam:
    """
    The order arithmetic of an operator, without the class check.

    Interior outputs keep the scale and exponents of the input. Boundary
    outputs are ``B^{s-d-1/p}_{p,p}`` for F-scale input and
    ``B^{s-d-1/p}_{p,q}`` for B-scale input. Poisson operators return the
    interior ``scale`` (Besov by default) with the boundary sum exponent.

    :raises BoundarySpaceError: when ``x`` lives in the wrong place for ``op``
    :raises ValueError: for the regularizing operator, whose image is the
     requested target
    """
    _check_location(op, x)
    if op.order is None:
        raise ValueError(f"{op} has order -inf; its image is any requested space")
    if op.takes_boundary_input:
        s = _interior_equivalent(op, x) - op.order
        return SpaceParam(scale or Scale.B, s, x.p, x.q, Location.INTERIOR)
    s = x.s - op.order
    if op.maps_to_boundary:
        q = x.p if x.scale is Scale.F else x.q
        return SpaceParam(Scale.B, s - x.p.recip, x.p, q, Location.BOUNDARY)
    return dataclasses.replace(x, s=s)


def apply_operator(
    op: OperatorSpec,
    x: SpaceParam,
    ctx: DomainCtx,
    target: Optional[SpaceParam] = None,
    scale: Optional[Scale] = None,
) -> Union[SpaceParam, ClassViolation]:
    """
    Apply ``op`` to ``x``: the image space when the smoothness is strictly
    above ``class + max(1/p - 1, n/p - n)``, a :class:`ClassViolation`
    carrying that threshold otherwise.

    :param target: the space the regularizing operator is requested to
     land in (required for it, ignored otherwise)
    :param scale: interior scale of the output of Poisson operators
    """
    _check_location(op, x)
    threshold = class_threshold(op, x, ctx)
    if _interior_equivalent(op, x) <= threshold:
        violation = ClassViolation(op.name, x, threshold, op.class_)
        logger.debug("%s", violation)
        return violation
    if op.kind is OperatorKind.REGULARIZING:
        if target is None:
            raise ValueError(f"{op} needs a target space")
        return target
    return image_of(op, x, ctx, scale)


def apply_system(
    system: SystemSpec, x: SpaceParam, ctx: DomainCtx
) -> Union[SystemImage, ClassViolation]:
    """
    Apply a column such as ``(-Δ, γ₀)``. Its class is the largest class of
    its entries, so ``A_D`` needs ``D_1`` and ``A_N`` needs ``D_2``.
    """
    if x.is_boundary:
        raise BoundarySpaceError(f"{system.name} acts on interior spaces, got {x}")
    threshold = dk_threshold(system.class_, x, ctx)
    if x.s <= threshold:
        return ClassViolation(system.name, x, threshold, system.class_)
    interior, boundary = (image_of(entry, x, ctx) for entry in system.entries)
    return SystemImage(system.name, interior, boundary)


def trace_gamma1_bound(
    x: SpaceParam, ctx: DomainCtx
) -> Union[SpaceParam, ClassViolation]:
    """``γ₁: X^s_{p,q} -> B^{s-1-1/p}`` on the boundary, defined on ``D_2``"""
    return apply_operator(GAMMA1, x, ctx)


def parametrix_defect(problem: Problem) -> ParametrixDefect:
    """
    What is left over when the parametrix is composed with the problem's
    system: nothing for the Dirichlet problem, the mean value operator for
    the Neumann problem.
    """
    if problem is Problem.DIRICHLET:
        return ParametrixDefect(
            problem, None, "zero: (R_D, K_D) is the exact inverse of A_D"
        )
    return ParametrixDefect(
        problem,
        REGULARIZING,
        "ℛu = |Ω|⁻¹∫_Ω u, order -inf; it lands in every admissible target",
    )


__all__ = [
    "A_D",
    "A_N",
    "CATALOG",
    "ClassViolation",
    "OperatorSpec",
    "ParametrixDefect",
    "SYSTEMS",
    "SystemImage",
    "SystemSpec",
    "apply_operator",
    "apply_system",
    "class_threshold",
    "get_operator",
    "get_system",
    "image_of",
    "parametrix_defect",
    "trace_gamma1_bound",
]
