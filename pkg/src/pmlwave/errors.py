"""Exception types shared across the package."""


class ConfigError(ValueError):
    """A scenario configuration is malformed or violates an invariant."""


class UnknownKeyError(ConfigError):
    """A config block contains a key that is not part of the schema."""


class MissingFieldError(ConfigError):
    """A required config field is absent."""


class InvariantError(ConfigError):
    """Config values are individually valid but mutually inconsistent."""


class InstabilityError(RuntimeError):
    """A field became non-finite during time stepping."""

    def __init__(self, step, message=None):
        self.step = step
        super().__init__(message or f"non-finite field detected at step {step}")


class MeasurementError(RuntimeError):
    """A measurement protocol could not produce a valid result."""
