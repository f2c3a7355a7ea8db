"""Exception types shared across the toolkit.

Every input problem derives from InvalidInputError (and therefore from
ValueError), which the CLI maps to exit code 2. Solvers never raise on
non-convergence; they report the achieved residual instead.
"""

from typing import Optional


class TensorToolkitError(Exception):
    """Base class for all toolkit errors."""
    pass


class InvalidInputError(TensorToolkitError, ValueError):
    """Raised when an input violates a documented precondition.

    Attributes:
        field: Name of the offending field or argument, if known.
    """

    def __init__(self, message: str, field: Optional[str] = None):
        super().__init__(message)
        self.field = field

    def __str__(self) -> str:
        message = super().__str__()
        if self.field:
            return f"{self.field}: {message}"
        return message


class InvalidTensorError(InvalidInputError):
    """Raised for malformed tensors (shape, finiteness, symmetry)."""
    pass


class DimensionMismatchError(InvalidInputError):
    """Raised when operands have incompatible dimensions."""
    pass


class NotAnEigenpairError(InvalidInputError):
    """Raised when certification is requested for a point that is not a solution."""
    pass


class SpecError(InvalidInputError):
    """Raised when an orthogonally decomposable spec violates its invariants."""
    pass


class ConfigError(InvalidInputError):
    """Raised for invalid configuration values."""
    pass


class UnsupportedCensusError(InvalidInputError):
    """Raised for census (kind, size) combinations without an oracle or solver."""
    pass
