"""Continuous-time attitude, velocity and gyro-bias observers.

Three laws share one integrator:

* ``proposed``    - acceleration-estimating corrections plus projected bias adaptation
* ``roberts2011`` - the same corrections, no bias estimate
* ``hua2010``     - corrections built from the raw velocity error, no bias estimate

Sensor samples are held constant over each step; long steps are split into
RK4 substeps.
"""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from src.geometry.so3 import (
    IDENTITY, Mat3, RotationMatrix, Vec3, psi, renormalize, skew, so3_distance_sq,
)
from src.models import GainConfig, ObserverLaw
from src.observers.corrections import (
    acceleration_estimate, clamp_to_ball, hua_corrections, proj, roberts_corrections,
)
from src.simulation.integrators import check_step, rk4_step
from src.simulation.trajectories import E3, GRAVITY

# Longest RK4 substep observer_step() takes; k_R |A| reaches a few hundred 1/s
OBSERVER_MAX_SUBSTEP = 1e-3


@dataclass(frozen=True)
class ObserverState:
    """Estimated velocity, attitude and gyro bias."""
    v_hat: Vec3
    r_hat: RotationMatrix
    b_hat: Vec3


@dataclass(frozen=True)
class ErrorState:
    """Estimation errors; b_tilde = b_hat - b_omega."""
    r_tilde: RotationMatrix
    b_tilde: Vec3
    r_a_tilde: Vec3
    v_tilde: Vec3


@dataclass(frozen=True)
class LyapunovValue:
    """Lyapunov function value with its quadratic lower and upper bounds."""
    value: float
    lower: float
    upper: float


def observer_rates(frame, st: ObserverState, g: GainConfig, r_m: Vec3,
                   law: ObserverLaw = ObserverLaw.PROPOSED,
                   gravity: float = GRAVITY) -> Tuple[Vec3, Mat3, Vec3]:
    """Time derivatives (v_hat_dot, R_hat_dot, b_hat_dot) of the selected law."""
    law = ObserverLaw(law)
    if law is ObserverLaw.HUA2010:
        s_v, s_r = hua_corrections(frame, st, g, r_m)
    else:
        s_v, s_r = roberts_corrections(frame, st, g, r_m)

    v_dot = gravity * E3 + st.r_hat @ frame.b_a + g.k_v * s_v
    if law is ObserverLaw.PROPOSED:
        rate = frame.omega_y - st.b_hat + g.k_R * s_r
        b_dot = proj(st.b_hat, -g.k_b * s_r, g.c5, g.eps_proj)
    else:
        rate = frame.omega_y + g.k_R * s_r
        b_dot = np.zeros(3)
    return v_dot, st.r_hat @ skew(rate), b_dot


def observer_step(frame, st: ObserverState, g: GainConfig, r_m: Vec3, dt: float,
                  law: ObserverLaw = ObserverLaw.PROPOSED,
                  gravity: float = GRAVITY,
                  max_substep: float = OBSERVER_MAX_SUBSTEP) -> ObserverState:
    """Advance the observer by ``dt`` with ``frame`` held, in RK4 substeps of at
    most ``max_substep``, renormalizing R_hat after each one.

    For the proposed law the bias estimate is also pulled back into the ball
    of radius c5 + eps_proj, so the bound holds for the discrete iteration.
    """
    check_step(dt)
    r_m = np.asarray(r_m, dtype=float)
    law = ObserverLaw(law)

    def rates(s):
        return observer_rates(frame, ObserverState(*s), g, r_m, law, gravity)

    n_sub = max(1, math.ceil(dt / max_substep - 1e-9))
    h = dt / n_sub
    v_hat, r_hat, b_hat = st.v_hat, st.r_hat, st.b_hat
    for _ in range(n_sub):
        v_hat, r_hat, b_hat = rk4_step(rates, (v_hat, r_hat, b_hat), h)
        if law is ObserverLaw.PROPOSED:
            b_hat = clamp_to_ball(b_hat, g.c5 + g.eps_proj)
        r_hat = renormalize(r_hat)
    return ObserverState(v_hat=v_hat, r_hat=r_hat, b_hat=b_hat)


def error_state(truth, st: ObserverState, b_omega: Vec3, frame, g: GainConfig,
                r_a: Optional[Vec3] = None) -> ErrorState:
    """Errors of ``st`` against the true state.

    Args:
        truth: True RigidBodyState.
        st: Observer state.
        b_omega: True gyro bias.
        frame: Sensor frame at the same time.
        g: Gains (k_v enters the acceleration estimate).
        r_a: True apparent acceleration; recovered as R b_a when omitted,
            which is exact for noise-free frames.
    """
    if r_a is None:
        r_a = truth.r @ frame.b_a
    return ErrorState(
        r_tilde=truth.r @ st.r_hat.T,
        b_tilde=st.b_hat - np.asarray(b_omega, dtype=float),
        r_a_tilde=np.asarray(r_a, dtype=float) - acceleration_estimate(frame, st, g),
        v_tilde=truth.v - st.v_hat,
    )


def gain_matrix(r_m: Vec3, r_a: Vec3, g: GainConfig) -> Mat3:
    """A = rho1 r_m r_m^T + rho2 r_a r_a^T."""
    return g.rho1 * np.outer(r_m, r_m) + g.rho2 * np.outer(r_a, r_a)


def a_bar(r_m: Vec3, r_a: Vec3, g: GainConfig) -> Mat3:
    """A_bar = (tr(A) I - A) / 2; positive definite iff r_m and r_a are not collinear."""
    a = gain_matrix(r_m, r_a, g)
    return 0.5 * (np.trace(a) * IDENTITY - a)


def error_rates(err: ErrorState, st: ObserverState, frame, g: GainConfig, r_m: Vec3,
                r_a: Vec3, r_a_dot: Vec3) -> Tuple[Mat3, Vec3, Vec3]:
    """Closed-loop error dynamics of the proposed observer.

    Written for b_tilde = b_hat - b_omega and noise-free frames:

        R~' = R~ [-2 k_R psi(A R~) + R^ b~ + k_R rho2 (R~^T r_a x r~_a)]_x
        b~' = Proj(b^, -k_b sigma_R)
        r~_a' = -k_v r~_a + (I - R~^T) r_a' - R^ [b_a]_x b~

    Returns:
        (R_tilde_dot, b_tilde_dot, r_a_tilde_dot)
    """
    r_m = np.asarray(r_m, dtype=float)
    r_a = np.asarray(r_a, dtype=float)
    a = gain_matrix(r_m, r_a, g)
    r_t = err.r_tilde
    w = (-2.0 * g.k_R * psi(a @ r_t)
         + st.r_hat @ err.b_tilde
         + g.k_R * g.rho2 * np.cross(r_t.T @ r_a, err.r_a_tilde))
    r_tilde_dot = r_t @ skew(w)

    _, s_r = roberts_corrections(frame, st, g, r_m)
    b_tilde_dot = proj(st.b_hat, -g.k_b * s_r, g.c5, g.eps_proj)

    r_a_tilde_dot = (-g.k_v * err.r_a_tilde
                     + (IDENTITY - r_t.T) @ np.asarray(r_a_dot, dtype=float)
                     - st.r_hat @ np.cross(frame.b_a, err.b_tilde))
    return r_tilde_dot, b_tilde_dot, r_a_tilde_dot


def attitude_error_rate_unexpanded(err: ErrorState, st: ObserverState, frame,
                                   g: GainConfig, r_m: Vec3) -> Mat3:
    """R~' = R~ [R^ (b~ - k_R sigma_R)]_x, before substituting sigma_R."""
    _, s_r = roberts_corrections(frame, st, g, np.asarray(r_m, dtype=float))
    return err.r_tilde @ skew(st.r_hat @ (err.b_tilde - g.k_R * s_r))


def lyapunov_bounds(mu: float, g: GainConfig) -> Tuple[Mat3, Mat3]:
    """P1, P2 with z^T P1 z <= V <= z^T P2 z for z = [|R~|_I, |b~|, |r~_a|]."""
    diag = mu * g.k_R / (2.0 * g.k_b)
    p1 = np.array([[1.0, -mu, 0.0], [-mu, diag, 0.0], [0.0, 0.0, 0.5]])
    p2 = np.array([[1.0, mu, 0.0], [mu, diag, 0.0], [0.0, 0.0, 0.5]])
    return p1, p2


def lyapunov_v(err: ErrorState, st: ObserverState, g: GainConfig, mu: float) -> LyapunovValue:
    """V = |R~|_I^2 + (mu k_R / 2 k_b)|b~|^2 + mu (b - b^)^T R^^T psi(R~) + |r~_a|^2 / 2.

    The cross term is written with b_omega - b_hat, the error whose sign
    makes V decrease along the printed observer.
    """
    if mu <= 0.0:
        raise ValueError(f"mu must be positive, got {mu}")
    if g.k_b <= 0.0:
        raise ValueError("The Lyapunov function needs a positive bias gain k_b")
    dist_sq = so3_distance_sq(err.r_tilde)
    b_norm = float(np.linalg.norm(err.b_tilde))
    ra_norm = float(np.linalg.norm(err.r_a_tilde))
    cross = mu * float(-err.b_tilde @ (st.r_hat.T @ psi(err.r_tilde)))
    value = (dist_sq + (mu * g.k_R / (2.0 * g.k_b)) * b_norm ** 2
             + cross + 0.5 * ra_norm ** 2)
    z = np.array([np.sqrt(dist_sq), b_norm, ra_norm])
    p1, p2 = lyapunov_bounds(mu, g)
    return LyapunovValue(value=value, lower=float(z @ p1 @ z), upper=float(z @ p2 @ z))
