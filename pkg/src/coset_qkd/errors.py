"""Error hierarchy shared by the library and the CLI.

Each class carries the process exit code the CLI reports for it.
"""
from typing import Optional


class CosetQkdError(Exception):
    """Base class for all coset-qkd errors."""
    exit_code = 1


class ValidationError(CosetQkdError, ValueError):
    """Argument outside the domain of an operation."""
    exit_code = 2


class UnsupportedStructureError(ValidationError):
    """Group structure outside the supported irrep families."""


class PreconditionError(CosetQkdError, ValueError):
    """A theorem's hypothesis does not hold for the given parameters."""
    exit_code = 3

    def __init__(self, message: str, constraint: Optional[str] = None):
        super().__init__(message)
        self.constraint = constraint


class ResourceError(CosetQkdError, RuntimeError):
    """Request exceeds a configured size or retry budget."""
    exit_code = 4


class UnsupportedParametersError(ResourceError):
    """Parameters too large for exhaustive tables or enumeration."""


class InternalError(CosetQkdError, RuntimeError):
    """An internal consistency check failed."""
    exit_code = 1
