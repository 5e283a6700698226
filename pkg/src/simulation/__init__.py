"""Ground-truth rigid-body motion and sensor models."""

from .integrators import check_step, rk4_step
from .rigid_body import RigidBodyState, advance, rigid_body_rates, step, truth_at
from .sensors import SensorFrame, sample
from .trajectories import (
    GRAVITY,
    TRAJECTORIES,
    TrajectorySpec,
    apparent_accel,
    build_trajectory,
    constant_rate_trajectory,
    free_fall_trajectory,
    hover_trajectory,
    reference_trajectory,
)

__all__ = [
    'check_step', 'rk4_step',
    'RigidBodyState', 'advance', 'rigid_body_rates', 'step', 'truth_at',
    'SensorFrame', 'sample',
    'GRAVITY', 'TRAJECTORIES', 'TrajectorySpec', 'apparent_accel', 'build_trajectory',
    'constant_rate_trajectory', 'free_fall_trajectory', 'hover_trajectory',
    'reference_trajectory',
]
