"""Hybrid attitude observer: flow with the continuous law while Phi < delta,
otherwise jump R_hat by the half-turn that minimizes Phi.

Phi is a measurable stand-in for 4 |R_tilde|_I^2 built from the body-frame
magnetometer and accelerometer readings together with an inertial estimate of
the apparent acceleration.
"""

import logging
from dataclasses import dataclass, replace
from typing import Optional, Tuple

import numpy as np

from src.exceptions import ObservabilityGuardError
from src.geometry.so3 import RotationMatrix, Vec3, half_turn
from src.models import CandidateSurrogate, GainConfig, HybridConfig, ObserverLaw
from src.observers.continuous import ObserverState, observer_step
from src.observers.corrections import acceleration_estimate
from src.simulation.trajectories import GRAVITY

logger = logging.getLogger(__name__)

# |b_m x b_a| below this fraction of |b_m| |b_a| makes Phi undefined
OBSERVABILITY_GUARD = 1e-6


@dataclass(frozen=True)
class HybridObserverState:
    """Observer state together with its hybrid time (t, j)."""
    base: ObserverState
    j: int = 0
    t: float = 0.0
    guard_hits: int = 0


@dataclass(frozen=True)
class JumpEvent:
    """One applied jump. phi_after is scored with the candidate surrogate in use."""
    t: float
    j_before: int
    phi_before: float
    phi_after: float
    axis: Vec3


def phi0(r_hat: RotationMatrix, b_m: Vec3, b_a: Vec3, r_a: Vec3, r_m: Vec3) -> float:
    """Phi0 = 3 - sum over the frames (r_m, r_m x r_a, r_m x (r_m x r_a)) of
    w_i^T R_hat c_i / |c_i|^2, with c_i the matching body-frame vectors.

    Noise-free and with the true r_a this equals tr(I - R R_hat^T).

    Raises:
        ObservabilityGuardError: b_m is zero or b_m and b_a are nearly collinear.
    """
    b_m = np.asarray(b_m, dtype=float)
    b_a = np.asarray(b_a, dtype=float)
    r_m = np.asarray(r_m, dtype=float)
    r_a = np.asarray(r_a, dtype=float)

    nb_m = float(np.linalg.norm(b_m))
    if nb_m == 0.0:
        raise ObservabilityGuardError("Magnetometer reading is zero")
    c_ma = np.cross(b_m, b_a)
    nc_ma = float(np.linalg.norm(c_ma))
    if nc_ma == 0.0 or nc_ma < OBSERVABILITY_GUARD * nb_m * float(np.linalg.norm(b_a)):
        raise ObservabilityGuardError(
            f"|b_m x b_a| = {nc_ma:.3e} is below the observability guard"
        )
    c_nested = np.cross(b_m, c_ma)
    w_ma = np.cross(r_m, r_a)
    w_nested = np.cross(r_m, w_ma)

    return (3.0
            - float(r_m @ (r_hat @ b_m)) / nb_m ** 2
            - float(w_ma @ (r_hat @ c_ma)) / nc_ma ** 2
            - float(w_nested @ (r_hat @ c_nested)) / float(c_nested @ c_nested))


def phi(frame, st: ObserverState, g: GainConfig, r_m: Vec3) -> float:
    """Phi0 evaluated with the surrogate r_a estimate R_hat b_a + k_v (v - v_hat)."""
    return phi0(st.r_hat, frame.b_m, frame.b_a, acceleration_estimate(frame, st, g), r_m)


def candidate_phis(frame, st: ObserverState, g: GainConfig, r_m: Vec3,
                   cfg: HybridConfig) -> np.ndarray:
    """Phi after a half-turn of R_hat about each candidate axis."""
    held = acceleration_estimate(frame, st, g)
    values = np.empty(3)
    for i, u in enumerate(cfg.basis_matrix):
        candidate = replace(st, r_hat=half_turn(u) @ st.r_hat)
        if cfg.candidate_surrogate is CandidateSurrogate.HELD:
            surrogate = held
        else:
            surrogate = acceleration_estimate(frame, candidate, g)
        values[i] = phi0(candidate.r_hat, frame.b_m, frame.b_a, surrogate, r_m)
    return values


def select_jump_axis(frame, st: ObserverState, g: GainConfig, r_m: Vec3,
                     cfg: HybridConfig) -> Vec3:
    """Candidate axis with the smallest post-jump Phi; ties go to the lowest index."""
    values = candidate_phis(frame, st, g, r_m, cfg)
    return cfg.basis_matrix[int(np.argmin(values))]


def jump(frame, st: ObserverState, g: GainConfig, axis: Vec3,
         preserve_acceleration_estimate: bool = False) -> ObserverState:
    """Jump map: R_hat+ = R_a(pi, axis) R_hat with v_hat and b_hat kept.

    With ``preserve_acceleration_estimate`` v_hat is shifted so that
    R_hat b_a + k_v (v - v_hat) is the same before and after the jump.
    """
    r_plus = half_turn(axis) @ st.r_hat
    v_plus = st.v_hat
    if preserve_acceleration_estimate:
        v_plus = st.v_hat + (r_plus - st.r_hat) @ frame.b_a / g.k_v
    return ObserverState(v_hat=v_plus, r_hat=r_plus, b_hat=st.b_hat)


def hybrid_step(hst: HybridObserverState, frame, g: GainConfig, r_m: Vec3,
                cfg: HybridConfig, dt: float,
                gravity: float = GRAVITY) -> Tuple[HybridObserverState, Optional[JumpEvent]]:
    """Advance the hybrid observer by one jump or one flow step.

    Phi >= delta jumps (t frozen, j incremented); otherwise the proposed law
    flows for ``dt``. A sample that fails the observability guard flows and
    is counted in ``guard_hits``.
    """
    st = hst.base
    try:
        value = phi(frame, st, g, r_m)
    except ObservabilityGuardError as exc:
        log = logger.warning if hst.guard_hits == 0 else logger.debug
        log("Phi undefined at t=%.4f (%s); flowing", hst.t, exc)
        value = None
        hst = replace(hst, guard_hits=hst.guard_hits + 1)

    if value is not None and value >= cfg.delta:
        values = candidate_phis(frame, st, g, r_m, cfg)
        index = int(np.argmin(values))
        axis = cfg.basis_matrix[index]
        event = JumpEvent(t=hst.t, j_before=hst.j, phi_before=value,
                          phi_after=float(values[index]), axis=axis.copy())
        logger.info("Jump %d at t=%.4f: Phi %.4f -> %.4f about %s",
                    hst.j + 1, hst.t, value, event.phi_after, np.round(axis, 6).tolist())
        if event.phi_after >= event.phi_before:
            logger.warning("Jump at t=%.4f did not decrease Phi (%.4f -> %.4f)",
                           hst.t, event.phi_before, event.phi_after)
        new_base = jump(frame, st, g, axis, cfg.preserve_acceleration_estimate)
        return replace(hst, base=new_base, j=hst.j + 1), event

    new_base = observer_step(frame, st, g, r_m, dt, ObserverLaw.PROPOSED, gravity)
    return replace(hst, base=new_base, t=hst.t + dt), None


def jump_decrease_bound(delta: float, alpha: float) -> float:
    """Upper bound (3 + 5 alpha / 2 - delta) / 3 on the change of |R_tilde|_I^2 at a jump."""
    return (3.0 + 2.5 * alpha - delta) / 3.0


def lyapunov_jump_bound(delta: float, alpha: float) -> float:
    """Upper bound on the change of V at a jump, valid for mu <= max_mu_for_jump."""
    return (3.0 + 2.5 * alpha - delta) / 6.0


def max_mu_for_jump(delta: float, alpha: float, c_b: float) -> float:
    """Largest cross-term weight for which lyapunov_jump_bound applies."""
    if c_b <= 0.0:
        return float("inf")
    return (delta - 2.5 * alpha - 3.0) / (24.0 * c_b)


def phi_sandwich_width(r_a_tilde_norm: float, c0: float, c1: float) -> float:
    """Half-width 2 |r_a_tilde| / (c1 c0^2) of the band around Phi0 that holds Phi."""
    if c0 <= 0.0 or c1 <= 0.0:
        return float("inf")
    return 2.0 * r_a_tilde_norm / (c1 * c0 ** 2)
