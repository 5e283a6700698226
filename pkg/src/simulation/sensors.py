"""Body-frame measurements generated from the true state.

Gyro, accelerometer and magnetometer follow b_m = R^T r_m, b_a = R^T r_a and
omega_y = omega + b_omega; the velocity sensor reports the inertial velocity.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.geometry.so3 import Vec3
from src.models import SensorConfig
from src.simulation.rigid_body import RigidBodyState


@dataclass(frozen=True)
class SensorFrame:
    """One time sample of every sensor."""
    omega_y: Vec3
    b_a: Vec3
    b_m: Vec3
    v: Vec3
    t: float


def sample(cfg: SensorConfig, truth: RigidBodyState, omega: Vec3, r_a: Vec3, t: float,
           rng: Optional[np.random.Generator] = None) -> SensorFrame:
    """Measure the true state at time ``t``.

    Args:
        cfg: Sensor geometry, bias and noise levels.
        truth: True attitude and velocity.
        omega: True body angular velocity (rad/s).
        r_a: True apparent acceleration in the inertial frame.
        t: Sample time.
        rng: Noise stream for this run. Without it, or with all noise levels
            at zero, the frame is exact.

    Returns:
        The SensorFrame at ``t``.
    """
    r_t = truth.r.T
    omega_y = np.asarray(omega, dtype=float) + cfg.b_omega_vec
    b_a = r_t @ np.asarray(r_a, dtype=float)
    b_m = r_t @ cfg.r_m_vec
    v = np.array(truth.v, dtype=float)

    noise = cfg.noise
    if rng is not None and noise.any_active:
        if noise.gyro > 0.0:
            omega_y = omega_y + rng.normal(0.0, noise.gyro, 3)
        if noise.accel > 0.0:
            b_a = b_a + rng.normal(0.0, noise.accel, 3)
        if noise.mag > 0.0:
            b_m = b_m + rng.normal(0.0, noise.mag, 3)
        if noise.velocity > 0.0:
            v = v + rng.normal(0.0, noise.velocity, 3)

    return SensorFrame(omega_y=omega_y, b_a=b_a, b_m=b_m, v=v, t=float(t))
