"""
Boundedness of pointwise multiplication and the mapping properties of the
nonlinearity ``B(v) = v d_1 v`` derived from it.
"""

from __future__ import annotations

import dataclasses
import logging
from fractions import Fraction

from ordered_set import OrderedSet

from .constants import ProductCondition, Scale
from .errors import (
    BoundarySpaceError,
    InvalidEpsilonError,
    ProductUndefinedError,
    ScaleMismatchError,
    SectorViolation,
)
from .params import (
    DomainCtx,
    ExtExp,
    SpaceParam,
    dirichlet_sector,
    dirichlet_threshold,
    sobolev_index,
)
from .typing import Tuple
from .util import negative_part, positive_part

logger = logging.getLogger("fscalc")


@dataclasses.dataclass(frozen=True)
class Deficit:
    """
    How much better than the Laplacian the nonlinearity is, in orders of
    smoothness.
    """

    value: Fraction
    #: ``s = n/p`` and the epsilon convention was applied
    at_critical: bool = False


@dataclasses.dataclass(frozen=True)
class ProductVerdict:
    defined: bool
    bounded: bool
    failed_conditions: Tuple[ProductCondition, ...] = ()
    notes: Tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.bounded


def validate_epsilon(eps: Fraction) -> Fraction:
    if not 0 < eps < 1:
        raise InvalidEpsilonError(f"epsilon must lie in (0, 1), got {eps}")
    return eps


def _validate_factors(*spaces: SpaceParam) -> None:
    if any(x.is_boundary for x in spaces):
        raise BoundarySpaceError("products are only defined for interior spaces")
    if len({x.scale for x in spaces}) > 1:
        raise ScaleMismatchError(
            "products of Besov and Triebel-Lizorkin spaces are not supported"
        )


def delta(x: SpaceParam, ctx: DomainCtx, eps: Fraction) -> Deficit:
    """
    The deficit ``1 + min(0, s - n/p)``, replaced by ``1 - eps`` on the
    critical line ``s = n/p``.

    :raises InvalidEpsilonError: unless ``0 < eps < 1``
    """
    validate_epsilon(eps)
    index = sobolev_index(x, ctx)
    if index > 0:
        return Deficit(Fraction(1))
    if index == 0:
        logger.info("%s lies on the critical line; deficit 1 - %s", x, eps)
        return Deficit(1 - eps, at_critical=True)
    return Deficit(1 + index)


def product_defined(a: SpaceParam, b: SpaceParam, ctx: DomainCtx) -> bool:
    """``s0 + s1 > max(0, n/p0 + n/p1 - n)``"""
    _validate_factors(a, b)
    if a.scale is Scale.B:
        logger.warning("B-scale product of %s and %s uses the F-scale test", a, b)
    return a.s + b.s > max(
        Fraction(0), a.n_over_p(ctx.n) + b.n_over_p(ctx.n) - ctx.n
    )


def product_bounded(
    a: SpaceParam, b: SpaceParam, target: SpaceParam, ctx: DomainCtx
) -> ProductVerdict:
    """
    Check every condition under which multiplication maps ``a x b`` into
    ``target``. All conditions are evaluated and every failed one is
    reported.
    """
    _validate_factors(a, b, target)
    notes: OrderedSet[str] = OrderedSet()
    if a.scale is Scale.B:
        notes.add("conservative: F-scale conditions reused for the B-scale")
    if not product_defined(a, b, ctx):
        return ProductVerdict(
            False, False, (ProductCondition.DEFINED,), tuple(notes)
        )
    failed: OrderedSet[ProductCondition] = OrderedSet()
    s_min = min(a.s, b.s)
    if target.s > s_min:
        failed.add(ProductCondition.SMOOTHNESS)
    elif target.s == s_min:
        notes.add("smoothness bound attained; sum exponent must not decrease")
        if any(target.q < x.q for x in (a, b) if x.s == s_min):
            failed.add(ProductCondition.Q_CLAUSE)
    index_a, index_b = sobolev_index(a, ctx), sobolev_index(b, ctx)
    index = sobolev_index(target, ctx)
    if index > min(index_a, index_b, index_a + index_b):
        failed.add(ProductCondition.SOBOLEV_INDEX)
    if index == index_a and b.s == b.n_over_p(ctx.n) and b.p.recip < 1:
        failed.add(ProductCondition.ENDPOINT_FIRST)
    if index == index_b and a.s == a.n_over_p(ctx.n) and a.p.recip < 1:
        failed.add(ProductCondition.ENDPOINT_SECOND)
    return ProductVerdict(True, not failed, tuple(failed), tuple(notes))


def _ordered(a: SpaceParam, b: SpaceParam) -> Tuple[SpaceParam, SpaceParam]:
    return (a, b) if a.s >= b.s else (b, a)


def p_star(a: SpaceParam, b: SpaceParam, ctx: DomainCtx) -> ExtExp:
    """
    The smallest receiving integrability exponent at the lower smoothness:
    with ``s0 >= s1``,
    ``n/p* = n/p1 + (s0 - n/p0)- + (s1 - n/p1 - (s0 - n/p0)+)+``.

    :raises ProductUndefinedError: when the product is not defined
    """
    if not product_defined(a, b, ctx):
        raise ProductUndefinedError(f"the product of {a} and {b} is not defined")
    first, second = _ordered(a, b)
    index_first = sobolev_index(first, ctx)
    n_over_p = (
        second.n_over_p(ctx.n)
        + negative_part(index_first)
        + positive_part(sobolev_index(second, ctx) - positive_part(index_first))
    )
    return ExtExp(n_over_p / ctx.n)


def optimal_target(a: SpaceParam, b: SpaceParam, ctx: DomainCtx) -> SpaceParam:
    """
    The optimal receiving space ``(s1, p*, q)`` with ``q = q1`` when
    ``s0 > s1`` and ``q = max(q0, q1)`` when the smoothness is equal.
    """
    exponent = p_star(a, b, ctx)
    first, second = _ordered(a, b)
    q = second.q if first.s > second.s else max(first.q, second.q)
    return dataclasses.replace(second, p=exponent, q=q)


def _require_dirichlet_sector(x: SpaceParam, ctx: DomainCtx) -> None:
    if not dirichlet_sector(x, ctx):
        raise SectorViolation(x, "dirichlet", dirichlet_threshold(x, ctx))


def map_b_standard(x: SpaceParam, ctx: DomainCtx, eps: Fraction) -> SpaceParam:
    """
    ``X^s_{p,q} -> X^{s-2+delta}_{p,q}``: the space that receives
    ``u d_1 u`` for ``u`` in ``x``.

    :raises SectorViolation: outside the Dirichlet sector
    """
    _require_dirichlet_sector(x, ctx)
    return dataclasses.replace(x, s=x.s - 2 + delta(x, ctx, eps).value)


def map_b_sharp(x: SpaceParam, ctx: DomainCtx) -> SpaceParam:
    """
    ``X^s_{p,q} -> X^{s-1}_{p*,q}`` with ``n/p* = n/p + (n/p - s)+``,
    factoring the product through smoothness ``s - 1``.

    :raises SectorViolation: outside the Dirichlet sector
    """
    _require_dirichlet_sector(x, ctx)
    n_over_p = x.n_over_p(ctx.n)
    sharp = n_over_p + positive_part(n_over_p - x.s)
    return dataclasses.replace(x, s=x.s - 1, p=ExtExp(sharp / ctx.n))


__all__ = [
    "Deficit",
    "ProductVerdict",
    "delta",
    "map_b_sharp",
    "map_b_standard",
    "optimal_target",
    "p_star",
    "product_bounded",
    "product_defined",
]
