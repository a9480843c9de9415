"""Exception hierarchy.

Every error carries a short ``code`` used by the command line front-end
as a diagnostic tag, and an ``exit_status`` for the process.
"""


class CredalError(Exception):
    code = "E_GENERIC"
    exit_status = 1


class EmptyInput(CredalError, ValueError):
    code = "E_EMPTY_INPUT"
    exit_status = 10


class DimensionMismatch(CredalError, ValueError):
    code = "E_DIMENSION"
    exit_status = 11


class FrameTooLarge(CredalError, ValueError):
    code = "E_FRAME_TOO_LARGE"
    exit_status = 12


class ContextMismatch(CredalError):
    code = "E_CONTEXT"
    exit_status = 13


class EmptySet(CredalError):
    code = "E_EMPTY_SET"
    exit_status = 14


class InvalidBounds(CredalError, ValueError):
    code = "E_INVALID_BOUNDS"
    exit_status = 15


class InvalidInput(CredalError, ValueError):
    code = "E_INVALID_INPUT"
    exit_status = 16


class TotalConflict(CredalError):
    """Every admissible combination gives the observation probability zero."""

    code = "E_TOTAL_CONFLICT"
    exit_status = 17


class ModelError(CredalError):
    """A problem found while reading a model file."""

    code = "E_MODEL"
    exit_status = 2

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class ModelSyntaxError(ModelError):
    code = "E_SYNTAX"
    exit_status = 3


class SchemaError(ModelError):
    code = "E_SCHEMA"
    exit_status = 4


class UnknownReference(ModelError):
    code = "E_UNKNOWN_REF"
    exit_status = 5


class VectorLengthMismatch(ModelError, DimensionMismatch):
    code = "E_VECTOR_LENGTH"
    exit_status = 6


class ModelBoundsError(ModelError, InvalidBounds):
    code = "E_INVALID_BOUNDS"
    exit_status = 7


class TinyWeightWarning(UserWarning):
    """The best combination explains the observation only very weakly."""
