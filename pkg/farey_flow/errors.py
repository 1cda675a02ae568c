"""Exception hierarchy; every class carries the exit code the CLI reports for it."""


class FareyFlowError(Exception):
    """Base class for all library errors."""

    exit_code: int = 1


class ValueParseError(FareyFlowError, ValueError):
    """Input text does not match the value, CF or sequence grammar."""

    exit_code = 2


class DomainError(FareyFlowError, ValueError):
    """An operation was called outside its domain."""

    exit_code = 3


class DegenerateGeodesicError(DomainError):
    """Feet coincide, or the geodesic runs along a Farey edge."""


class NotInAError(DomainError):
    """The geodesic is not in the reduced set A."""


class CuspError(DomainError):
    """A rational foot reached the cusp before reduction finished."""


class CuspExitError(DomainError):
    """The future expansion is exhausted: the geodesic exits into the cusp."""


class ExpansionExhaustedError(DomainError):
    """A finite expansion has fewer digits than requested."""


class UnsupportedValueError(DomainError):
    """The value kind has no exact representation for this operation."""


class NoCrossingError(DomainError):
    """The geodesic does not cross the requested vertical line."""


class FieldMismatchError(DomainError):
    """Field operation between surds with different radicands."""


class PrecisionExhaustedError(FareyFlowError, ArithmeticError):
    """Directed-rounding intervals could not decide a sign at the working precision."""

    exit_code = 4
