"""Exception types shared across the package."""


class QuiverInvError(Exception):
    """Base class for all errors raised by quiverinv."""


class DimensionMismatchError(QuiverInvError):
    """Shapes of matrices or vectors do not line up."""


class AlgebraParseError(QuiverInvError):
    """Syntax or semantic error in an algebra or representation file."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class NotAdmissibleError(QuiverInvError):
    """Operation requires a verified admissible ideal."""


class ResolutionNotTerminatedError(QuiverInvError):
    """A projective resolution did not terminate within the requested bound."""


class DegreeCapExceededError(QuiverInvError):
    """A weight-space computation would need monomials beyond the degree cap."""


class CannotSampleError(QuiverInvError):
    """No sampling strategy is available for this algebra's relations."""


class DecompositionUndecidedError(QuiverInvError):
    """The direct-sum decomposition search exhausted its budget."""


class TransportError(QuiverInvError):
    """Tilting transport refused or failed an instance check."""
