"""Continuous and hybrid attitude observers."""

from src.observers.continuous import (
    ErrorState,
    LyapunovValue,
    ObserverState,
    a_bar,
    attitude_error_rate_unexpanded,
    error_rates,
    error_state,
    gain_matrix,
    lyapunov_bounds,
    lyapunov_v,
    observer_rates,
    observer_step,
)
from src.observers.corrections import (
    acceleration_estimate,
    clamp_to_ball,
    hua_corrections,
    proj,
    roberts_corrections,
    sigma_r,
    sigma_v,
)
from src.observers.hybrid import (
    HybridObserverState,
    JumpEvent,
    candidate_phis,
    hybrid_step,
    jump,
    jump_decrease_bound,
    lyapunov_jump_bound,
    max_mu_for_jump,
    phi,
    phi0,
    phi_sandwich_width,
    select_jump_axis,
)
from src.observers.runner import ArcSample, HybridArc, Scenario, run_continuous, run_hybrid

__all__ = [
    # Continuous observers
    'ObserverState', 'ErrorState', 'LyapunovValue',
    'observer_rates', 'observer_step', 'error_state', 'error_rates',
    'attitude_error_rate_unexpanded', 'gain_matrix', 'a_bar',
    'lyapunov_v', 'lyapunov_bounds',
    # Corrections
    'proj', 'clamp_to_ball', 'acceleration_estimate', 'sigma_r', 'sigma_v',
    'roberts_corrections', 'hua_corrections',
    # Hybrid observer
    'HybridObserverState', 'JumpEvent', 'phi0', 'phi', 'candidate_phis',
    'select_jump_axis', 'jump', 'hybrid_step', 'jump_decrease_bound',
    'lyapunov_jump_bound', 'max_mu_for_jump', 'phi_sandwich_width',
    # Execution
    'Scenario', 'ArcSample', 'HybridArc', 'run_hybrid', 'run_continuous',
]
