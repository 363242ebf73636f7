"""Exception taxonomy shared across the package."""


class CovertnetError(Exception):
    """Base class for all package errors."""


class ParameterError(CovertnetError, ValueError):
    """An argument violates a documented precondition."""


class SingularityError(CovertnetError, ZeroDivisionError):
    """Evaluation at a singular point (zero distance, zero beamwidth)."""


class DivergenceError(CovertnetError, ValueError):
    """A moment or integral does not exist for the given exponents."""


class DomainError(CovertnetError, ValueError):
    """Input outside the mathematical domain of the operation."""


class NumericError(CovertnetError, RuntimeError):
    """A numeric procedure failed to converge or degenerated."""


class ConfigError(CovertnetError, ValueError):
    """Configuration file problem; message carries file, line and key."""


class UsageError(CovertnetError, ValueError):
    """Bad command-line usage (maps to exit code 2)."""
