"""Velocity-aided attitude observers with gyro-bias estimation - Core Module."""

from .exceptions import (
    AttitudeToolkitError, SO3DomainError, ObservabilityGuardError,
    AssumptionViolationError, HybridLivelockError, ConfigError,
)

from .models import (
    ObserverLaw, ScenarioMode, CandidateSurrogate,
    NoiseConfig, SensorConfig, GainConfig, HybridConfig,
    InitialEstimate, SimulationSettings, CertificateSettings, ScenarioConfig,
    TrajectoryConstants, Certificate, RunSummary,
)

from .observers import (
    ObserverState, HybridObserverState,
    observer_step, hybrid_step, phi0, phi,
    run_continuous, run_hybrid,
)

from .harness import (
    extract_constants, evaluate_certificate,
    load_config, run_scenario, run_batch,
)

__version__ = "0.2.0"

__all__ = [
    # Errors
    'AttitudeToolkitError', 'SO3DomainError', 'ObservabilityGuardError',
    'AssumptionViolationError', 'HybridLivelockError', 'ConfigError',
    # Models
    'ObserverLaw', 'ScenarioMode', 'CandidateSurrogate',
    'NoiseConfig', 'SensorConfig', 'GainConfig', 'HybridConfig',
    'InitialEstimate', 'SimulationSettings', 'CertificateSettings', 'ScenarioConfig',
    'TrajectoryConstants', 'Certificate', 'RunSummary',
    # Observers
    'ObserverState', 'HybridObserverState',
    'observer_step', 'hybrid_step', 'phi0', 'phi',
    'run_continuous', 'run_hybrid',
    # Harness
    'extract_constants', 'evaluate_certificate',
    'load_config', 'run_scenario', 'run_batch',
]
