"""Exception hierarchy for the attitude estimation toolkit."""


class AttitudeToolkitError(Exception):
    """Base class for all toolkit errors."""


class SO3DomainError(AttitudeToolkitError, ValueError):
    """Input outside the domain of an SO(3) operation."""


class ObservabilityGuardError(AttitudeToolkitError, ValueError):
    """Magnetometer and accelerometer directions are (nearly) collinear."""


class AssumptionViolationError(AttitudeToolkitError):
    """A trajectory violates the observability or boundedness assumptions."""

    def __init__(self, message: str, violations=None):
        super().__init__(message)
        self.violations = list(violations or [])


class HybridLivelockError(AttitudeToolkitError, RuntimeError):
    """Too many consecutive jumps without any flow in between."""


class ConfigError(AttitudeToolkitError, ValueError):
    """Scenario configuration or telemetry file could not be interpreted."""
