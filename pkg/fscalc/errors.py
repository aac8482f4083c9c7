"""errors and exceptions."""

from __future__ import annotations

import typing
from fractions import Fraction

if typing.TYPE_CHECKING:
    from .params import SpaceParam


class FscalcError(Exception):
    """Base class for all errors raised by fscalc"""


class ConfigurationError(FscalcError):
    """Raised when a configuration value (argument or environment) is invalid"""


class SpaceLiteralError(FscalcError, ValueError):
    """Raised when a space literal such as ``F:5/2,3,2`` cannot be parsed"""


class InvalidSpaceError(FscalcError, ValueError):
    """Raised when a parameter triple does not name a space of its scale"""


class InvalidEpsilonError(FscalcError, ValueError):
    """Raised when the critical-line epsilon is outside ``(0, 1)``"""


class BoundarySpaceError(FscalcError):
    """Raised when an operation defined on the domain receives a boundary space"""


class ScaleMismatchError(FscalcError):
    """Raised when Besov and Triebel-Lizorkin spaces are mixed"""


class ProductUndefinedError(FscalcError):
    """Raised when the pointwise product is not defined on a pair of spaces"""


class UnknownOperatorError(FscalcError, KeyError):
    """Raised when an operator name is not in the catalog"""


class TraceFormatError(FscalcError, ValueError):
    """Raised when a serialized trace does not follow the trace schema"""


class InvalidQueryError(FscalcError, ValueError):
    """Raised when a query names no command or carries a field of the wrong kind"""


class SectorViolation(FscalcError):
    """Exception raised when a space is not inside a required sector."""

    def __init__(self, space: SpaceParam, sector: str, threshold: Fraction) -> None:
        """
        :param space: the offending space
        :param sector: name of the sector that was required
        :param threshold: the exact value ``s`` must strictly exceed
        """
        self.space = space
        self.sector = sector
        self.threshold = threshold
        relation = "on the boundary of" if space.s == threshold else "outside"
        super().__init__(
            f"{space} is {relation} the {sector} sector (s must exceed {threshold})"
        )
