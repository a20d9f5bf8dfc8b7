"""
Exception types raised by the geometry library.
All of them are ValueErrors so callers can keep catching ValueError.
"""

from typing import Optional


class GeophaseError(ValueError):
    """Base class for every library error."""


class NotHermitian(GeophaseError):
    """Matrix is not hermitian within tolerance."""


class ConvergenceFailure(GeophaseError):
    """The eigensolver did not converge."""


class DomainError(GeophaseError):
    """Argument lies outside the domain of a function or manifold."""


class ZeroArgument(GeophaseError):
    """Phase of a (numerically) zero complex number was requested."""


class ChartOverflow(GeophaseError):
    """Tangent parameter leaves the chart where tan is bijective."""


class ChartEscape(GeophaseError):
    """Group action sends a point out of the chart (singular CZ + D)."""


class PairInvalid(GeophaseError):
    """Two points cannot be combined inside one chart."""


class ShapeMismatch(GeophaseError):
    """Operands belong to different manifolds or have incompatible shapes."""


class SingularQ(GeophaseError):
    """Lower-right block of a section product is singular."""


class SingularBlock(GeophaseError):
    """A block needed by a cocycle or automorphy factor is singular."""


class ValidationError(GeophaseError):
    """Job or configuration input failed validation."""


class ParseError(GeophaseError):
    """Malformed matrix JSON."""

    def __init__(self, message: str, row: Optional[int] = None, col: Optional[int] = None):
        location = []
        if row is not None:
            location.append(f"row {row}")
        if col is not None:
            location.append(f"col {col}")
        if location:
            message = f"{message} (at {', '.join(location)})"
        super().__init__(message)
        self.row = row
        self.col = col
