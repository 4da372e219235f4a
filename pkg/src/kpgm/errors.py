"""Exception types shared across the package."""


class KpgmError(Exception):
    """Base class for all package-specific errors."""


class DomainError(KpgmError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ValidationError(KpgmError, ValueError):
    """A configuration value is structurally valid but semantically wrong."""


class ParseError(KpgmError, ValueError):
    """A configuration file could not be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class QuadratureError(KpgmError, RuntimeError):
    """Adaptive integration failed to reach the requested tolerance."""


class ConvergenceError(KpgmError, RuntimeError):
    """Grid refinement failed to converge to the requested tolerance."""
