"""Scenario configuration, trajectory constants, gain certificate and telemetry output."""

from src.harness.certificate import accel_entry_time, evaluate_certificate, lyapunov_matrices
from src.harness.config import CONFIG_KEYS, HarnessSettings, build_config, load_config, parse_config_text
from src.harness.constants import accel_error_envelope, check_assumptions, extract_constants
from src.harness.scenario import (
    build_scenario,
    certify_scenario,
    convergence_times,
    initial_accel_error,
    run_batch,
    run_scenario,
    scenario_constants,
    simulate,
)

__all__ = [
    'evaluate_certificate', 'lyapunov_matrices', 'accel_entry_time',
    'CONFIG_KEYS', 'HarnessSettings', 'build_config', 'load_config', 'parse_config_text',
    'extract_constants', 'check_assumptions', 'accel_error_envelope',
    'build_scenario', 'certify_scenario', 'convergence_times', 'initial_accel_error',
    'run_batch', 'run_scenario', 'scenario_constants', 'simulate',
]
