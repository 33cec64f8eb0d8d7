"""Exception types shared across the package."""


class TempoError(Exception):
    """Base class for all package errors."""


class SelfLoopError(TempoError):
    """A temporal or static edge joins a vertex to itself."""


class UnknownVertexError(TempoError):
    """An edge endpoint or query vertex is not in the graph."""


class TimeOutOfRangeError(TempoError):
    """A time label lies outside [1, lifetime]."""


class TooLargeError(TempoError):
    """Input exceeds the hard ceiling of an exhaustive search."""


class InvalidInputError(TempoError):
    """A decomposition or structure failed validation on entry."""


class ValidationFailureError(TempoError):
    """A construction that must validate did not; indicates a bug."""


class UnsupportedCombinationError(TempoError):
    """A formula builder does not support the requested encoding/variant."""


class BudgetExceededError(TempoError):
    """Estimated evaluation cost exceeds the configured budget."""


class InfeasibleError(TempoError):
    """An optimization query has no satisfying evaluation."""


class UnboundVariableError(TempoError):
    """A free variable was not bound in the assignment."""


class SignatureMismatchError(TempoError):
    """A relation name or arity does not match the structure."""


class FormulaSyntaxError(TempoError):
    """Formula text failed to parse."""

    def __init__(self, message, line=None, col=None):
        if line is not None:
            message = f"{message} (line {line}, column {col})"
        super().__init__(message)
        self.line = line
        self.col = col


class UnknownSortError(TempoError):
    """A sort name in a formula is not one of V, TE, L, B."""
