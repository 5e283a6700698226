"""Ground-truth rigid-body kinematics: v_dot = g e3 + R b_a, R_dot = R [omega]_x."""

import math
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from src.geometry.so3 import RotationMatrix, Vec3, renormalize, skew
from src.simulation.integrators import check_step, rk4_step
from src.simulation.trajectories import E3, GRAVITY, TrajectorySpec, apparent_accel

# Longest substep truth_at() takes between two grid points
TRUTH_MAX_SUBSTEP = 1e-3


@dataclass(frozen=True)
class RigidBodyState:
    """True attitude (body to inertial) and inertial velocity."""
    r: RotationMatrix
    v: Vec3


def rigid_body_rates(r: RotationMatrix, v: Vec3, omega: Vec3, b_a: Vec3, g: float = GRAVITY):
    """Right-hand side of the kinematics for fixed inputs."""
    return r @ skew(omega), g * E3 + r @ b_a


def step(state: RigidBodyState, omega: Vec3, b_a: Vec3, dt: float, g: float = GRAVITY) -> RigidBodyState:
    """One RK4 step with ``omega`` and ``b_a`` held constant, then renormalize R."""
    check_step(dt)
    omega = np.asarray(omega, dtype=float)
    b_a = np.asarray(b_a, dtype=float)
    r_next, v_next = rk4_step(
        lambda s: rigid_body_rates(s[0], s[1], omega, b_a, g),
        (state.r, state.v),
        dt,
    )
    return RigidBodyState(r=renormalize(r_next), v=v_next)


def advance(spec: TrajectorySpec, state: RigidBodyState, t: float, dt: float,
            g: float = GRAVITY) -> RigidBodyState:
    """Propagate the truth from ``t`` to ``t + dt``.

    The attitude is integrated with the body rate sampled at the step
    midpoint; the velocity is taken from the closed-form profile.
    """
    b_a = state.r.T @ apparent_accel(spec, t, g)
    stepped = step(state, spec.omega_fn(t + 0.5 * dt), b_a, dt, g)
    return RigidBodyState(r=stepped.r, v=np.asarray(spec.v_fn(t + dt), dtype=float))


def truth_at(spec: TrajectorySpec, t_grid: Sequence[float], g: float = GRAVITY,
             max_substep: float = TRUTH_MAX_SUBSTEP) -> List[RigidBodyState]:
    """True states on ``t_grid``.

    Args:
        spec: Trajectory to follow.
        t_grid: Strictly increasing sample times starting at 0.
        g: Gravity magnitude.
        max_substep: Grid intervals longer than this are split into equal substeps.

    Returns:
        One RigidBodyState per grid time, with v equal to spec.v_fn(t).
    """
    times = [float(t) for t in t_grid]
    if not times or times[0] != 0.0:
        raise ValueError("t_grid must start at 0")
    if any(b <= a for a, b in zip(times, times[1:])):
        raise ValueError("t_grid must be strictly increasing")

    state = RigidBodyState(r=spec.r0.copy(), v=np.asarray(spec.v_fn(0.0), dtype=float))
    states = [state]
    for t_start, t_stop in zip(times, times[1:]):
        n_sub = max(1, math.ceil((t_stop - t_start) / max_substep - 1e-9))
        h = (t_stop - t_start) / n_sub
        t = t_start
        for _ in range(n_sub):
            state = advance(spec, state, t, h, g)
            t += h
        state = RigidBodyState(r=state.r, v=np.asarray(spec.v_fn(t_stop), dtype=float))
        states.append(state)
    return states
