from fractions import Fraction
from typing import (
    Any,
    Callable,
    Dict,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    TypeVar,
    Union,
    cast,
)

from typing_extensions import TypedDict

#: Anything :func:`fscalc.util.as_rational` accepts.
RatLike = Union[Fraction, int, str]


__all__ = [
    "Any",
    "RatLike",
    "Callable",
    "Dict",
    "List",
    "Mapping",
    "Optional",
    "Union",
    "cast",
    "Sequence",
    "Tuple",
    "TypeVar",
    "TypedDict",
]
