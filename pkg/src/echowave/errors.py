"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Invalid configuration: bad key, bad value, or violated precondition."""


class InstabilityError(RuntimeError):
    """A time integration produced non-finite values."""

    def __init__(self, message, time=None, step=None):
        super().__init__(message)
        self.time = time
        self.step = step


class DiagnosticsError(RuntimeError):
    """A diagnostic cannot be computed from the given trajectory."""
