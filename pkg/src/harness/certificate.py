"""Sufficient gain conditions for exponential stability of the continuous
observer, plus the extra budget the hybrid observer needs.

Every bound is reported next to the gain it constrains; the positive
definiteness of the Lyapunov matrices is checked directly through their
leading principal minors.
"""

import logging
import math
from typing import Dict, Optional

import numpy as np
from scipy.optimize import brentq

from src.models import Certificate, ConditionCheck, GainConfig, HybridConfig, TrajectoryConstants
from src.observers.hybrid import max_mu_for_jump

logger = logging.getLogger(__name__)


def _ratio(num: float, den: float) -> float:
    return num / den if den > 0.0 else math.inf


def _leading_minors(m: np.ndarray):
    return [float(np.linalg.det(m[:k, :k])) for k in range(1, m.shape[0] + 1)]


def _definiteness(name: str, m: np.ndarray) -> ConditionCheck:
    minors = _leading_minors(m)
    margin = min(minors)
    return ConditionCheck(
        satisfied=margin > 0.0,
        margin=margin,
        detail=f"{name} leading minors {', '.join(f'{x:.4g}' for x in minors)}",
    )


def _bound(gain_name: str, value: float, bound: float) -> ConditionCheck:
    return ConditionCheck(
        satisfied=value > bound,
        margin=value - bound,
        detail=f"{gain_name}={value:.4g} vs bound {bound:.4g}",
    )


def lyapunov_matrices(tc: TrajectoryConstants, g: GainConfig, eps_R: float, mu: float,
                      c_omega: Optional[float] = None) -> Dict[str, np.ndarray]:
    """P1, P2 and the decrease matrices P12, P13, P23 for the given gains."""
    c_omega = tc.c4 if c_omega is None else c_omega
    lam = tc.lambda_min_Abar
    alphas = _alphas(tc, g)
    shrink = 1.0 - eps_R ** 2
    diag = _ratio(mu * g.k_R, 2.0 * g.k_b)

    p12_top = g.k_R * (2.0 * lam * shrink - mu * alphas[1]) - mu * alphas[0]
    p12_off = -(0.5 + c_omega * mu)
    p13_off = -0.5 * (g.k_R * g.rho2 * tc.c2 + math.sqrt(8.0) * tc.c3
                      + mu * (alphas[2] + g.k_R * alphas[3]))
    return {
        "P1": np.array([[1.0, -mu, 0.0], [-mu, diag, 0.0], [0.0, 0.0, 0.5]]),
        "P2": np.array([[1.0, mu, 0.0], [mu, diag, 0.0], [0.0, 0.0, 0.5]]),
        "P12": np.array([[p12_top, p12_off], [p12_off, 0.5 * mu]]),
        "P13": np.array([[2.0 * g.k_R * lam * shrink, p13_off], [p13_off, 0.5 * g.k_v]]),
        "P23": np.array([[0.5 * mu, -0.5 * tc.c2], [-0.5 * tc.c2, 0.5 * g.k_v]]),
    }


def _alphas(tc: TrajectoryConstants, g: GainConfig):
    root = 4.0 + math.sqrt(2.0)
    lam_max = tc.lambda_max_Abar
    return (
        2.0 * tc.c_b ** 2 + 8.0 * lam_max * g.k_b,
        4.0 * lam_max * tc.c_b * root,
        2.0 * g.rho2 * tc.c2 * g.k_b,
        g.rho2 * tc.c2 * tc.c_b * root,
    )


def accel_entry_time(k_v: float, r_a0_norm: float, c_a: float, target: float) -> float:
    """Upper bound on the time |r_a~| needs to enter the ball of radius ``target``."""
    if k_v <= 0.0 or target <= 0.0:
        return math.inf
    floor = c_a / k_v
    if r_a0_norm <= target or r_a0_norm <= floor:
        return 0.0
    if floor >= target:
        return math.inf
    return math.log((r_a0_norm - floor) / (target - floor)) / k_v


def _k_v_star(tc: TrajectoryConstants, g: GainConfig, B_a: float, r_a0_norm: float,
              t_R_lower: float) -> float:
    target = _ratio(B_a, g.k_R)
    lower = tc.c_a / target if math.isfinite(target) else 0.0
    if r_a0_norm <= target:
        return lower
    if t_R_lower <= 0.0:
        return math.inf

    def gap(k: float) -> float:
        return accel_entry_time(k, r_a0_norm, tc.c_a, target) - t_R_lower

    lo = max(lower * (1.0 + 1e-9), 1e-12)
    hi = max(2.0 * lo, 1.0)
    for _ in range(200):
        if gap(hi) <= 0.0:
            break
        lo, hi = hi, 2.0 * hi
    else:
        return math.inf
    if gap(lo) <= 0.0:
        return lo
    return float(brentq(gap, lo, hi, xtol=1e-12, rtol=1e-12))


def evaluate_certificate(tc: TrajectoryConstants, g: GainConfig, eps_R: float, B_a: float,
                         eps_a: float, mu: float, r_a0_norm: float,
                         c_omega: Optional[float] = None, r0_dist: float = 0.0,
                         hybrid: Optional[HybridConfig] = None) -> Certificate:
    """Evaluate every gain condition of the stability argument.

    Args:
        tc: Trajectory constants.
        g: Gains to check.
        eps_R: Radius of the attitude error ball, 0 < eps_R < 1.
        B_a: Ultimate bound on k_R |r_a~|.
        eps_a: Slack on the initial acceleration error.
        mu: Cross-term weight of the Lyapunov function.
        r_a0_norm: Initial acceleration error |r_a~(0)|.
        c_omega: Angular-rate bound in the cross term; c4 if omitted.
        r0_dist: Initial attitude error |R~(0)|_I.
        hybrid: Adds the jump budget conditions when given.

    Returns:
        The Certificate; always produced, with infinite bounds where a
        requirement cannot be met.
    """
    if not (0.0 < eps_R < 1.0):
        raise ValueError(f"eps_R must lie in (0, 1), got {eps_R}")
    if mu <= 0.0 or B_a <= 0.0 or eps_a <= 0.0:
        raise ValueError("mu, B_a and eps_a must be positive")
    if not (0.0 <= r0_dist <= eps_R):
        raise ValueError(f"r0_dist must lie in [0, eps_R], got {r0_dist}")

    c_omega = tc.c4 if c_omega is None else c_omega
    lam = tc.lambda_min_Abar
    shrink = 1.0 - eps_R ** 2
    a1, a2, a3, a4 = _alphas(tc, g)

    mu_max = _ratio(lam * shrink, a2)
    k_R_attitude = _ratio(tc.c_b + g.rho2 * tc.c2 * B_a, 4.0 * lam * eps_R ** 2 * shrink)
    k_R_lyapunov = max(2.0 * mu * g.k_b,
                       _ratio(2.0 * a1 * mu ** 2 + (1.0 + 2.0 * c_omega * mu) ** 2,
                              2.0 * mu * lam * shrink))
    k_R_min = max(k_R_attitude, k_R_lyapunov)

    t_R_lower = _ratio(eps_R ** 2 - r0_dist ** 2,
                       tc.c_b + g.k_R * g.rho2 * tc.c2 * (r_a0_norm + eps_a))
    k_v_transient = _ratio(tc.c_a, r_a0_norm + eps_a)
    k_v_star = _k_v_star(tc, g, B_a, r_a0_norm, t_R_lower)
    cross = g.k_R * g.rho2 * tc.c2 + math.sqrt(8.0) * tc.c3 + mu * (a3 + g.k_R * a4)
    k_v_cross = _ratio(cross ** 2, 4.0 * g.k_R * lam * shrink)
    k_v_bias = tc.c2 ** 2 / mu
    k_v_hybrid = None
    k_v_terms = [k_v_transient, k_v_star, k_v_cross, k_v_bias]
    if hybrid is not None:
        k_v_hybrid = _ratio(2.0 * tc.c_a, hybrid.alpha * tc.c1 * tc.c0 ** 2)
        k_v_terms.append(k_v_hybrid)
    k_v_min = max(k_v_terms)

    conditions = {
        "observability": ConditionCheck(
            satisfied=lam > 0.0, margin=lam, detail=f"lambda_min(A_bar)={lam:.4g}"),
        "mu": ConditionCheck(
            satisfied=mu < mu_max, margin=mu_max - mu, detail=f"mu={mu:.4g} vs bound {mu_max:.4g}"),
        "k_R_attitude": _bound("k_R", g.k_R, k_R_attitude),
        "k_R_lyapunov": _bound("k_R", g.k_R, k_R_lyapunov),
        "k_v": _bound("k_v", g.k_v, k_v_min),
    }
    for name, m in lyapunov_matrices(tc, g, eps_R, mu, c_omega).items():
        if name != "P2":
            conditions[name] = _definiteness(name, m)
    if hybrid is not None:
        mu_jump = max_mu_for_jump(hybrid.delta, hybrid.alpha, tc.c_b)
        conditions["mu_jump"] = ConditionCheck(
            satisfied=mu <= mu_jump, margin=mu_jump - mu,
            detail=f"mu={mu:.4g} vs jump bound {mu_jump:.4g}")
        conditions["k_v_hybrid"] = _bound("k_v", g.k_v, k_v_hybrid)

    cert = Certificate(
        epsilon_R=eps_R, epsilon_a=eps_a, mu=mu, B_a=B_a, c_omega=c_omega,
        alpha1=a1, alpha2=a2, alpha3=a3, alpha4=a4,
        mu_max=mu_max,
        k_R_attitude=k_R_attitude, k_R_lyapunov=k_R_lyapunov, k_R_min=k_R_min,
        k_v_transient=k_v_transient, k_v_star=k_v_star, k_v_cross=k_v_cross,
        k_v_bias=k_v_bias, k_v_hybrid=k_v_hybrid, k_v_min=k_v_min,
        t_R_lower=t_R_lower,
        t_a_upper=accel_entry_time(g.k_v, r_a0_norm, tc.c_a, _ratio(B_a, g.k_R)),
        conditions=conditions,
    )
    failed = [name for name, c in conditions.items() if not c.satisfied]
    if failed:
        logger.info("Certificate not satisfied: %s", ", ".join(failed))
    return cert
