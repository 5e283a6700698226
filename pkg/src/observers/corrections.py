"""Innovation terms of the velocity-aided observers and the bias projection."""

from typing import Tuple

import numpy as np

from src.geometry.so3 import Vec3
from src.models import GainConfig


def proj(b_hat: Vec3, mu: Vec3, c5: float, eps: float) -> Vec3:
    """Smooth projection of the bias update ``mu`` onto the ball of radius c5.

    Inside the ball, or when ``mu`` points inward, ``mu`` is returned
    unchanged. In the boundary layer c5 < |b_hat| <= c5 + eps the outward
    radial component is scaled by 1 - theta, with theta ramping linearly
    from 0 to 1; beyond the layer theta stays at 1.

    Args:
        b_hat: Current bias estimate.
        mu: Unconstrained update direction.
        c5: Radius of the ball that contains the true bias.
        eps: Width of the boundary layer.

    Returns:
        The projected update.
    """
    b_hat = np.asarray(b_hat, dtype=float)
    mu = np.asarray(mu, dtype=float)
    norm_sq = float(b_hat @ b_hat)
    norm = np.sqrt(norm_sq)
    radial = float(b_hat @ mu)
    if norm <= c5 or radial <= 0.0:
        return mu.copy()
    theta = min((norm - c5) / eps, 1.0)
    return mu - theta * (radial / norm_sq) * b_hat


def clamp_to_ball(b_hat: Vec3, radius: float) -> Vec3:
    """Radially pull ``b_hat`` back inside the ball of the given radius."""
    norm = float(np.linalg.norm(b_hat))
    if norm <= radius:
        return b_hat
    return b_hat * (radius / norm)


def acceleration_estimate(frame, st, g: GainConfig) -> Vec3:
    """Inertial apparent-acceleration estimate r_hat_a = k_v (v - v_hat) + R_hat b_a."""
    return g.k_v * (frame.v - st.v_hat) + st.r_hat @ frame.b_a


def sigma_r(frame, st, g: GainConfig, r_m: Vec3) -> Vec3:
    """Attitude innovation rho1 (b_m x R_hat^T r_m) + rho2 (b_a x R_hat^T r_hat_a)."""
    r_hat_t = st.r_hat.T
    r_a_hat = acceleration_estimate(frame, st, g)
    return (g.rho1 * np.cross(frame.b_m, r_hat_t @ r_m)
            + g.rho2 * np.cross(frame.b_a, r_hat_t @ r_a_hat))


def sigma_v(frame, st, g: GainConfig, sr: Vec3) -> Vec3:
    """Velocity innovation v - v_hat + (k_R / k_v^2) R_hat (sigma_R x b_a)."""
    return (frame.v - st.v_hat
            + (g.k_R / g.k_v ** 2) * (st.r_hat @ np.cross(sr, frame.b_a)))


def roberts_corrections(frame, st, g: GainConfig, r_m: Vec3) -> Tuple[Vec3, Vec3]:
    """(sigma_v, sigma_R) of the acceleration-estimating law, also used by the proposed observer."""
    sr = sigma_r(frame, st, g, r_m)
    return sigma_v(frame, st, g, sr), sr


def hua_corrections(frame, st, g: GainConfig, r_m: Vec3) -> Tuple[Vec3, Vec3]:
    """(sigma_v, sigma_R) of the plain velocity-aided law: the accelerometer is
    compared with the raw velocity error instead of an acceleration estimate."""
    v_err = frame.v - st.v_hat
    sr = (g.rho1 * np.cross(frame.b_m, st.r_hat.T @ r_m)
          + g.rho2 * np.cross(frame.b_a, st.r_hat.T @ v_err))
    return v_err, sr
