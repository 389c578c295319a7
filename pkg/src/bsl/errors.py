"""Exception types shared across the package.

The split mirrors the CLI exit codes: configuration problems (exit 2),
numerical failures (exit 3) and observed instability where stability was
asserted (exit 4).
"""


class BslError(Exception):
    """Base class for all package errors."""


class ConfigError(BslError, ValueError):
    """Invalid configuration value (cutoff, coefficient, profile format, ...)."""


class DomainError(BslError, ValueError):
    """Operation evaluated outside its mathematical domain (k = 0, zero data, ...)."""


class IntegrationFailure(BslError, RuntimeError):
    """Adaptive time integration could not proceed (step-size underflow)."""


class BracketError(BslError, ValueError):
    """Bisection endpoints do not bracket a stability transition."""
