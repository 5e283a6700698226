"""Sampled bounds of a trajectory: observability margin, apparent-acceleration
range and rate, angular-rate bound and the spectrum of A_bar."""

import logging
import math
from typing import Optional

import numpy as np

from src.exceptions import AssumptionViolationError
from src.models import AssumptionViolation, GainConfig, TrajectoryConstants
from src.observers.continuous import a_bar
from src.simulation.trajectories import GRAVITY, TrajectorySpec, apparent_accel

logger = logging.getLogger(__name__)

# Margins at or below these count as violations of the assumptions
OBSERVABILITY_MARGIN = 1e-9
ACCELERATION_FLOOR = 1e-9


def constant_grid(grid_dt: float, t_end: float) -> np.ndarray:
    """Uniform grid on [0, t_end] with spacing at most grid_dt."""
    if t_end <= 0.0:
        raise ValueError(f"t_end must be positive, got {t_end}")
    if grid_dt <= 0.0 or grid_dt > 1e-3 * t_end:
        raise ValueError(f"grid_dt must lie in (0, 1e-3 * t_end] = (0, {1e-3 * t_end}], got {grid_dt}")
    n = int(math.ceil(t_end / grid_dt - 1e-9))
    return np.linspace(0.0, t_end, n + 1)


def extract_constants(spec: TrajectorySpec, r_m, c5: float, grid_dt: float, t_end: float,
                      gains: Optional[GainConfig] = None,
                      g: float = GRAVITY) -> TrajectoryConstants:
    """Evaluate c0..c4, c_a, c_b and the A_bar eigenvalue range on a grid.

    Args:
        spec: Trajectory to sample.
        r_m: Inertial magnetic field.
        c5: Gyro bias bound.
        grid_dt: Grid spacing; at most 1e-3 * t_end.
        t_end: End of the sampled interval.
        gains: Supplies rho1, rho2 for A_bar and eps_proj for c_b. Defaults apply if omitted.
        g: Gravity magnitude.

    Returns:
        TrajectoryConstants with one AssumptionViolation per broken assumption,
        stamped with the first grid time it fails.
    """
    gains = gains or GainConfig()
    r_m = np.asarray(r_m, dtype=float)
    nr_m = float(np.linalg.norm(r_m))
    if nr_m == 0.0:
        raise ValueError("r_m must be nonzero")

    times = constant_grid(grid_dt, t_end)
    margins = np.empty(len(times))
    accel_norms = np.empty(len(times))
    rate_norms = np.empty(len(times))
    omega_norms = np.empty(len(times))
    lam_min = np.empty(len(times))
    lam_max = np.empty(len(times))

    for i, t in enumerate(times):
        r_a = apparent_accel(spec, t, g)
        na = float(np.linalg.norm(r_a))
        accel_norms[i] = na
        margins[i] = float(np.linalg.norm(np.cross(r_m, r_a))) / (nr_m * na) if na > 0.0 else 0.0
        rate_norms[i] = float(np.linalg.norm(spec.apparent_accel_rate(t)))
        omega_norms[i] = float(np.linalg.norm(spec.omega_fn(t)))
        eig = np.linalg.eigvalsh(a_bar(r_m, r_a, gains))
        lam_min[i], lam_max[i] = eig[0], eig[-1]

    violations = []
    bad = np.flatnonzero(margins <= OBSERVABILITY_MARGIN)
    if bad.size:
        t_bad = float(times[bad[0]])
        violations.append(AssumptionViolation(
            assumption="observability",
            time=t_bad,
            value=float(margins[bad[0]]),
            message=f"r_m and r_a are collinear (or r_a vanishes) at t={t_bad:.4f} s",
        ))
    bad = np.flatnonzero(accel_norms <= ACCELERATION_FLOOR)
    if bad.size:
        t_bad = float(times[bad[0]])
        violations.append(AssumptionViolation(
            assumption="acceleration_bounds",
            time=t_bad,
            value=float(accel_norms[bad[0]]),
            message=f"Apparent acceleration vanishes at t={t_bad:.4f} s (free fall)",
        ))
    for v in violations:
        logger.warning("Trajectory '%s': %s", spec.name, v.message)

    c2 = float(accel_norms.max())
    c3 = float(rate_norms.max())
    c_b = 2.0 * c5 + gains.eps_proj
    return TrajectoryConstants(
        c0=float(margins.min()),
        c1=float(accel_norms.min()),
        c2=c2,
        c3=c3,
        c4=float(omega_norms.max()),
        c5=c5,
        c_a=math.sqrt(8.0) * c3 + c2 * c_b,
        c_b=c_b,
        lambda_min_Abar=float(lam_min.min()),
        lambda_max_Abar=float(lam_max.max()),
        violations=violations,
    )


def accel_error_envelope(t, r_a0_norm: float, c_a: float, k_v: float):
    """Upper bound e^{-k_v t} |r_a~(0)| + (c_a / k_v)(1 - e^{-k_v t}) on |r_a~(t)|."""
    decay = np.exp(-k_v * np.asarray(t, dtype=float))
    return decay * r_a0_norm + (c_a / k_v) * (1.0 - decay)


def check_assumptions(tc: TrajectoryConstants) -> None:
    """Raise if the sampled trajectory breaks the observability or acceleration assumptions.

    Raises:
        AssumptionViolationError: Carrying every recorded AssumptionViolation.
    """
    if tc.violations:
        names = ", ".join(v.assumption for v in tc.violations)
        raise AssumptionViolationError(f"Trajectory violates the assumptions: {names}", tc.violations)
