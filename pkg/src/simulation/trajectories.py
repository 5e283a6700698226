"""Closed-form motion profiles used as ground truth.

A trajectory gives the inertial velocity, its first two derivatives and the
body angular velocity as functions of time, plus the initial attitude. The
attitude itself is integrated by :mod:`src.simulation.rigid_body`.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Optional

import numpy as np

from src.geometry.so3 import E2, IDENTITY, RotationMatrix, Vec3, angle_axis, as_vec3, is_rotation

GRAVITY = 9.81
E3 = np.array([0.0, 0.0, 1.0])

TimeFunction = Callable[[float], Vec3]

# Finite-difference check of the analytic derivatives
DERIVATIVE_CHECK_STEP = 1e-5
DERIVATIVE_CHECK_TOL = 1e-6
DERIVATIVE_CHECK_TIMES = (0.0, 0.37, 1.0, 2.5, 7.3, 19.0)


def _zero(_: float) -> Vec3:
    return np.zeros(3)


@dataclass(frozen=True)
class TrajectorySpec:
    """Analytically defined motion of the rigid body."""
    v_fn: TimeFunction
    vdot_fn: TimeFunction
    omega_fn: TimeFunction
    r0: RotationMatrix = field(default_factory=lambda: IDENTITY.copy())
    vddot_fn: Optional[TimeFunction] = None
    name: str = "custom"

    def __post_init__(self):
        if not is_rotation(self.r0):
            raise ValueError(f"Trajectory '{self.name}': r0 is not a rotation matrix")

    def apparent_accel_rate(self, t: float, h: float = DERIVATIVE_CHECK_STEP) -> Vec3:
        """d/dt r_a(t), analytic when vddot_fn is available."""
        if self.vddot_fn is not None:
            return np.asarray(self.vddot_fn(t), dtype=float)
        return (np.asarray(self.vdot_fn(t + h)) - np.asarray(self.vdot_fn(t - h))) / (2.0 * h)

    def validate(self, times: Iterable[float] = DERIVATIVE_CHECK_TIMES) -> None:
        """Spot-check that vdot_fn (and vddot_fn) differentiate v_fn (and vdot_fn).

        Raises:
            ValueError: If a central difference disagrees by more than 1e-6.
        """
        h = DERIVATIVE_CHECK_STEP
        pairs = [("vdot_fn", self.v_fn, self.vdot_fn)]
        if self.vddot_fn is not None:
            pairs.append(("vddot_fn", self.vdot_fn, self.vddot_fn))
        for t in times:
            for label, fn, dfn in pairs:
                fd = (np.asarray(fn(t + h)) - np.asarray(fn(t - h))) / (2.0 * h)
                gap = float(np.max(np.abs(fd - np.asarray(dfn(t)))))
                if gap > DERIVATIVE_CHECK_TOL:
                    raise ValueError(
                        f"Trajectory '{self.name}': {label} is not the derivative at t={t} (gap {gap:.2e})"
                    )


def apparent_accel(spec: TrajectorySpec, t: float, g: float = GRAVITY) -> Vec3:
    """Non-gravitational specific force in the inertial frame, r_a = v_dot - g e3."""
    return np.asarray(spec.vdot_fn(t), dtype=float) - g * E3


def reference_trajectory() -> TrajectorySpec:
    """Oscillating velocity and slowly varying body rate, starting upside down about y."""

    def v_fn(t: float) -> Vec3:
        return np.array([
            2.0 * math.cos(0.5 * t + 0.5),
            3.75 * math.cos(1.25 * t + 0.5),
            0.5 * math.cos(0.5 * t + 0.5),
        ])

    def vdot_fn(t: float) -> Vec3:
        return np.array([
            -2.0 * 0.5 * math.sin(0.5 * t + 0.5),
            -3.75 * 1.25 * math.sin(1.25 * t + 0.5),
            -0.5 * 0.5 * math.sin(0.5 * t + 0.5),
        ])

    def vddot_fn(t: float) -> Vec3:
        return np.array([
            -2.0 * 0.25 * math.cos(0.5 * t + 0.5),
            -3.75 * 1.5625 * math.cos(1.25 * t + 0.5),
            -0.5 * 0.25 * math.cos(0.5 * t + 0.5),
        ])

    def omega_fn(t: float) -> Vec3:
        return np.array([
            math.sin(0.1 * t + math.pi),
            0.5 * math.sin(0.2 * t),
            0.1 * math.sin(0.3 * t + math.pi / 3.0),
        ])

    return TrajectorySpec(
        v_fn=v_fn,
        vdot_fn=vdot_fn,
        vddot_fn=vddot_fn,
        omega_fn=omega_fn,
        r0=angle_axis(math.pi, E2),
        name="reference",
    )


def constant_rate_trajectory(omega=(0.0, 0.0, 0.0), accel=(0.0, 0.0, 0.0),
                             v0=(0.0, 0.0, 0.0), r0: Optional[RotationMatrix] = None,
                             name: str = "constant_rate") -> TrajectorySpec:
    """Constant body rate with constant inertial acceleration ``accel`` (v_dot)."""
    w = as_vec3(omega)
    a = as_vec3(accel)
    v_start = as_vec3(v0)
    return TrajectorySpec(
        v_fn=lambda t: v_start + a * t,
        vdot_fn=lambda t: a.copy(),
        vddot_fn=_zero,
        omega_fn=lambda t: w.copy(),
        r0=IDENTITY.copy() if r0 is None else np.asarray(r0, dtype=float),
        name=name,
    )


def hover_trajectory() -> TrajectorySpec:
    """Body at rest: r_a = -g e3 for all t."""
    return constant_rate_trajectory(name="hover")


def free_fall_trajectory(g: float = GRAVITY) -> TrajectorySpec:
    """Ballistic motion: v_dot = g e3, so the accelerometer reads zero."""
    return constant_rate_trajectory(accel=g * E3, name="free_fall")


TRAJECTORIES: Dict[str, Callable[..., TrajectorySpec]] = {
    "reference": reference_trajectory,
    "hover": hover_trajectory,
    "constant_rate": constant_rate_trajectory,
    "free_fall": free_fall_trajectory,
}


def build_trajectory(name: str, **params) -> TrajectorySpec:
    """Instantiate a registered trajectory and check its derivatives.

    Raises:
        KeyError: If ``name`` is not registered.
    """
    if name not in TRAJECTORIES:
        raise KeyError(f"Unknown trajectory '{name}'. Known: {sorted(TRAJECTORIES)}")
    spec = TRAJECTORIES[name](**params)
    spec.validate()
    return spec
