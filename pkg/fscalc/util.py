from __future__ import annotations

import re
from fractions import Fraction

from .typing import RatLike

_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def as_rational(value: RatLike) -> Fraction:
    """
    Convert ``value`` to an exact :class:`~fractions.Fraction`.

    Strings are restricted to integers and ``a/b`` quotients so that no
    decimal (and therefore no binary floating point) ever enters a
    computation.

    :raises ValueError: for floats, decimals and malformed text
    """
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        match = _RATIONAL.match(value)
        if not match:
            raise ValueError(f"not a rational literal: {value!r}")
        numerator, denominator = match.groups()
        if denominator is not None and int(denominator) == 0:
            raise ValueError(f"zero denominator in {value!r}")
        return Fraction(int(numerator), int(denominator or 1))
    raise ValueError(f"not a rational: {value!r}")


def format_rational(value: Fraction) -> str:
    """``a/b`` in lowest terms, or a bare integer"""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def positive_part(value: Fraction) -> Fraction:
    """``x+ = max(x, 0)``"""
    return max(value, Fraction(0))


def negative_part(value: Fraction) -> Fraction:
    """``x- = max(-x, 0)``"""
    return max(-value, Fraction(0))


def kronecker_n2(n: int) -> Fraction:
    return Fraction(1) if n == 2 else Fraction(0)
