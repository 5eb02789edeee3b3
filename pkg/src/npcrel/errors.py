"""Exception types shared across the package."""


class NpcrelError(Exception):
    """Base class for all package errors."""


class DomainError(NpcrelError, ValueError):
    """An argument lies outside the physical or model domain."""


class UnsupportedStrategyError(DomainError):
    """The requested strategy has no implementation for this operation."""


class StressOverrangeError(DomainError):
    """An electrical stress ratio exceeds the ceiling the model is rated for."""


class ConfigError(NpcrelError):
    """Configuration is missing, malformed or inconsistent."""


class NumericError(NpcrelError):
    """A numeric routine failed to produce a trustworthy result."""


class FitError(NumericError):
    """Curve fitting did not converge."""


class ModelValidityError(NumericError):
    """A fitted model was evaluated outside its range of validity."""
