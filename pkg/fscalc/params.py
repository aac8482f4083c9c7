"""
Exact parameter representation of Besov and Triebel-Lizorkin spaces over a
bounded smooth domain, the admissibility sectors and classical names.
"""

from __future__ import annotations

import dataclasses
import functools
import re
from fractions import Fraction

from .constants import Location, Scale, SectorPosition
from .errors import BoundarySpaceError, InvalidSpaceError, SpaceLiteralError
from .typing import Optional, RatLike, Union
from .util import as_rational, format_rational, kronecker_n2

INFINITY = "inf"

_LITERAL = re.compile(
    r"^\s*(?P<scale>[BbFf])\s*:\s*(?P<s>[^,]+),(?P<p>[^,]+),(?P<q>[^,@]+)"
    r"(?:@(?P<location>interior|boundary))?\s*$"
)


@functools.total_ordering
@dataclasses.dataclass(frozen=True)
class ExtExp:
    """
    An integrability or sum exponent in ``(0, inf]`` stored by its
    reciprocal, so that ``inf`` is the ordinary value ``0``.

    Ordering is by the exponent itself: ``ExtExp.of(2) < ExtExp.of("inf")``.
    """

    recip: Fraction

    def __post_init__(self) -> None:
        if not isinstance(self.recip, Fraction):
            object.__setattr__(self, "recip", as_rational(self.recip))
        if self.recip < 0:
            raise InvalidSpaceError(f"negative reciprocal exponent {self.recip}")

    @classmethod
    def of(cls, value: Union[RatLike, float]) -> ExtExp:
        """
        :param value: a positive rational, or ``"inf"``
        """
        if isinstance(value, str) and value.strip().lower() in (INFINITY, "∞"):
            return cls(Fraction(0))
        if isinstance(value, float):
            raise InvalidSpaceError(f"floating point exponent {value!r} is not exact")
        try:
            exponent = as_rational(value)
        except ValueError as e:
            raise InvalidSpaceError(str(e)) from e
        if exponent <= 0:
            raise InvalidSpaceError(f"exponent must lie in (0, inf], got {exponent}")
        return cls(1 / exponent)

    @classmethod
    def infinity(cls) -> ExtExp:
        return cls(Fraction(0))

    @property
    def is_infinite(self) -> bool:
        return self.recip == 0

    @property
    def value(self) -> Optional[Fraction]:
        """The exponent, or ``None`` for ``inf``"""
        return None if self.is_infinite else 1 / self.recip

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, ExtExp):
            return NotImplemented
        return self.recip > other.recip

    def __str__(self) -> str:
        value = self.value
        return INFINITY if value is None else format_rational(value)


@dataclasses.dataclass(frozen=True)
class SpaceParam:
    """
    A point ``(scale, s, p, q)`` naming :math:`B^s_{p,q}` or
    :math:`F^s_{p,q}` over the domain or over its boundary.
    """

    scale: Scale
    s: Fraction
    p: ExtExp
    q: ExtExp
    location: Location = Location.INTERIOR

    def __post_init__(self) -> None:
        if not isinstance(self.s, Fraction):
            object.__setattr__(self, "s", as_rational(self.s))
        if self.scale is Scale.F and self.p.is_infinite:
            raise InvalidSpaceError("F-scale requires p<∞")
        if self.location is Location.BOUNDARY and self.scale is not Scale.B:
            raise InvalidSpaceError("boundary spaces are always of B-scale")

    @classmethod
    def of(
        cls,
        scale: Union[Scale, str],
        s: RatLike,
        p: RatLike,
        q: RatLike,
        location: Location = Location.INTERIOR,
    ) -> SpaceParam:
        return cls(
            Scale(scale.upper()) if isinstance(scale, str) else scale,
            as_rational(s),
            ExtExp.of(p),
            ExtExp.of(q),
            location,
        )

    @property
    def is_boundary(self) -> bool:
        return self.location is Location.BOUNDARY

    def replace(self, **changes: object) -> SpaceParam:
        return dataclasses.replace(self, **changes)  # type: ignore[arg-type]

    def with_np(self, n_over_p: Fraction, n: int) -> SpaceParam:
        """Copy with ``n/p`` set (``n`` the ambient dimension)"""
        return self.replace(p=ExtExp(n_over_p / n))

    def n_over_p(self, n: int) -> Fraction:
        return n * self.p.recip

    def __str__(self) -> str:
        return format_space(self)


@dataclasses.dataclass(frozen=True)
class DomainCtx:
    """
    Geometry of the bounded smooth domain: dimension, number of boundary
    components and connectedness. Nothing else about the domain is used.
    """

    n: int
    boundary_components: int = 1
    connected: bool = True

    def __post_init__(self) -> None:
        if self.n < 2:
            raise InvalidSpaceError(f"dimension must be at least 2, got {self.n}")
        if self.boundary_components < 1:
            raise InvalidSpaceError(
                f"need at least one boundary component, got {self.boundary_components}"
            )

    @property
    def kronecker(self) -> Fraction:
        """1 in the plane, 0 otherwise"""
        return kronecker_n2(self.n)


def parse_space(text: str) -> SpaceParam:
    """
    Parse a space literal ``<scale>:<s>,<p>,<q>`` such as ``F:5/2,3,2`` or
    ``B:3/2,inf,inf``. An optional ``@boundary`` suffix marks a space on the
    boundary.

    :raises SpaceLiteralError: for anything that does not follow the grammar
     or does not name a space of its scale
    """
    match = _LITERAL.match(text)
    if not match:
        raise SpaceLiteralError(
            f"malformed space literal {text!r}; expected <scale>:<s>,<p>,<q>"
        )
    try:
        return SpaceParam.of(
            match.group("scale"),
            match.group("s").strip(),
            match.group("p").strip(),
            match.group("q").strip(),
            Location(match.group("location") or Location.INTERIOR.value),
        )
    except (InvalidSpaceError, ValueError) as e:
        raise SpaceLiteralError(f"{text!r}: {e}") from e


def format_space(x: SpaceParam) -> str:
    literal = f"{x.scale.value}:{format_rational(x.s)},{x.p},{x.q}"
    if x.is_boundary:
        literal += "@boundary"
    return literal


def _require_interior(x: SpaceParam) -> None:
    if x.is_boundary:
        raise BoundarySpaceError(
            f"{x} is a boundary space; its index uses dimension n-1"
        )


def sobolev_index(
    x: SpaceParam, ctx: DomainCtx, allow_boundary: bool = False
) -> Fraction:
    """
    The Sobolev index ``s - n/p``.

    :param allow_boundary: compute the index of a boundary space with the
     boundary dimension ``n - 1`` instead of refusing it
    :raises BoundarySpaceError: for boundary spaces unless ``allow_boundary``
    """
    if x.is_boundary:
        if not allow_boundary:
            raise BoundarySpaceError(
                "boundary space has dimension n−1 index; pass allow_boundary=True"
            )
        return x.s - (ctx.n - 1) * x.p.recip
    return x.s - ctx.n * x.p.recip


def dk_threshold(k: int, x: SpaceParam, ctx: DomainCtx) -> Fraction:
    """``k + max(1/p - 1, n/p - n)``"""
    recip = x.p.recip
    return k + max(recip - 1, ctx.n * recip - ctx.n)


def in_dk(x: SpaceParam, k: int, ctx: DomainCtx) -> bool:
    """Whether ``x`` is admissible for an operator of class ``k``"""
    _require_interior(x)
    return x.s > dk_threshold(k, x, ctx)


def dirichlet_threshold(x: SpaceParam, ctx: DomainCtx) -> Fraction:
    """``max(1/2, n/p - 1 + kronecker/2)``"""
    return max(
        Fraction(1, 2), ctx.n * x.p.recip - 1 + ctx.kronecker / 2
    )


def neumann_threshold(x: SpaceParam, ctx: DomainCtx) -> Fraction:
    """``max(1/p + 1, n/p - 1 + kronecker/2)``"""
    return max(x.p.recip + 1, ctx.n * x.p.recip - 1 + ctx.kronecker / 2)


def neumann_safe_threshold(x: SpaceParam, ctx: DomainCtx) -> Fraction:
    """``max(1, n/p - 1 + kronecker/2)``"""
    return max(Fraction(1), ctx.n * x.p.recip - 1 + ctx.kronecker / 2)


def dirichlet_sector(x: SpaceParam, ctx: DomainCtx) -> bool:
    _require_interior(x)
    return x.s > dirichlet_threshold(x, ctx)


def neumann_sector(x: SpaceParam, ctx: DomainCtx) -> bool:
    _require_interior(x)
    return x.s > neumann_threshold(x, ctx)


def neumann_safe_subsector(x: SpaceParam, ctx: DomainCtx) -> bool:
    """
    The part of the Dirichlet sector with ``s > 1``; it is stable under
    joins and the sharp nonlinear route is available everywhere in it.
    """
    _require_interior(x)
    return x.s > neumann_safe_threshold(x, ctx)


def sector_position(value: Fraction, threshold: Fraction) -> SectorPosition:
    if value > threshold:
        return SectorPosition.INSIDE
    if value == threshold:
        return SectorPosition.BOUNDARY
    return SectorPosition.OUTSIDE


def _token(value: Union[Fraction, ExtExp]) -> str:
    text = format_rational(value) if isinstance(value, Fraction) else str(value)
    return text if len(text) == 1 else f"{{{text}}}"


def identify_classical(x: SpaceParam) -> Optional[str]:
    """
    Classical name of the space, when one of the standard identifications
    applies:

    - ``B^s_{2,2} = F^s_{2,2} = H^s`` for all ``s`` (``H^0 = L_2``)
    - ``B^s_{inf,inf} = C^s_*`` (Hoelder-Zygmund) for ``s > 0``
    - ``F^s_{p,2} = H^s_p`` (Bessel potentials) for ``1 < p < inf``
    - ``F^0_{p,2} = h_p`` (local Hardy space) for ``0 < p <= 1``
    - ``B^s_{p,p} = W^s_p`` (Sobolev-Slobodetskii) for non-integer
      ``s > 0`` and ``1 < p < inf``
    """
    if x.is_boundary:
        return None
    two = ExtExp.of(2)
    if x.p == two and x.q == two:
        if x.s == 0:
            return "H^0 = L_2"
        return f"H^{_token(x.s)}"
    if x.scale is Scale.B and x.p.is_infinite and x.q.is_infinite and x.s > 0:
        return f"C^{_token(x.s)}_*"
    between = not x.p.is_infinite and 0 < x.p.recip < 1
    if x.scale is Scale.F and x.q == two:
        if between:
            if x.s == 0:
                return f"H^0_{_token(x.p)} = L_{_token(x.p)}"
            return f"H^{_token(x.s)}_{_token(x.p)}"
        if x.s == 0:
            return f"h_{_token(x.p)}"
    if (
        x.scale is Scale.B
        and x.p == x.q
        and between
        and x.s > 0
        and x.s.denominator != 1
    ):
        return f"W^{_token(x.s)}_{_token(x.p)}"
    return None


__all__ = [
    "DomainCtx",
    "ExtExp",
    "SpaceParam",
    "dirichlet_sector",
    "dirichlet_threshold",
    "dk_threshold",
    "format_space",
    "identify_classical",
    "in_dk",
    "neumann_safe_subsector",
    "neumann_safe_threshold",
    "neumann_sector",
    "neumann_threshold",
    "parse_space",
    "sector_position",
    "sobolev_index",
]
