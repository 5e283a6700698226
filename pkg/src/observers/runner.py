"""Hybrid-time executor: runs truth, sensors and an observer side by side and
records telemetry samples indexed by (t, j)."""

import logging
import math
from dataclasses import dataclass, field, replace
from typing import List, Optional

import numpy as np
import pandas as pd
from tqdm import tqdm

from src.exceptions import HybridLivelockError, ObservabilityGuardError
from src.geometry.so3 import IDENTITY, RotationMatrix, Vec3, rotation_angle, so3_distance
from src.models import TELEMETRY_COLUMNS, GainConfig, HybridConfig, ObserverLaw, SensorConfig
from src.observers.continuous import ObserverState, error_state, lyapunov_v, observer_step
from src.observers.hybrid import HybridObserverState, JumpEvent, hybrid_step, phi
from src.simulation.integrators import check_step
from src.simulation.rigid_body import RigidBodyState, advance
from src.simulation.sensors import SensorFrame, sample
from src.simulation.trajectories import GRAVITY, TrajectorySpec, apparent_accel

logger = logging.getLogger(__name__)

# More consecutive jumps than this without any flow is treated as livelock
MAX_CONSECUTIVE_JUMPS = 3


@dataclass(frozen=True)
class Scenario:
    """Truth, sensors and observer initial condition of one run.

    ``v_hat0=None`` starts the velocity estimate at the measured velocity.
    """
    trajectory: TrajectorySpec
    sensors: SensorConfig
    r_hat0: RotationMatrix = field(default_factory=lambda: IDENTITY.copy())
    v_hat0: Optional[Vec3] = None
    b_hat0: Vec3 = field(default_factory=lambda: np.zeros(3))
    gravity: float = GRAVITY
    mu: float = 0.05
    log_every: int = 1
    name: str = "scenario"
    progress: bool = False


@dataclass(frozen=True)
class ArcSample:
    """One telemetry row."""
    t: float
    j: int
    attitude_error_deg: float
    dist_RI: float
    b_tilde: Vec3
    r_a_tilde_norm: float
    phi: float
    V: float
    jump_flag: bool

    def as_row(self) -> dict:
        return {
            "t": self.t,
            "j": self.j,
            "attitude_error_deg": self.attitude_error_deg,
            "dist_RI": self.dist_RI,
            "btilde_x": float(self.b_tilde[0]),
            "btilde_y": float(self.b_tilde[1]),
            "btilde_z": float(self.b_tilde[2]),
            "ratilde_norm": self.r_a_tilde_norm,
            "phi": self.phi,
            "V": self.V,
            "jump_flag": int(self.jump_flag),
        }


@dataclass
class HybridArc:
    """Telemetry of one run on its hybrid time domain."""
    name: str
    law: ObserverLaw
    hybrid: bool
    samples: List[ArcSample] = field(default_factory=list)
    events: List[JumpEvent] = field(default_factory=list)
    guard_violations: int = 0
    final_state: Optional[ObserverState] = None
    final_truth: Optional[RigidBodyState] = None

    @property
    def last(self) -> ArcSample:
        return self.samples[-1]

    def sample_at(self, t: float) -> ArcSample:
        """Last flow sample at or before ``t``."""
        candidates = [s for s in self.samples if s.t <= t + 1e-12]
        if not candidates:
            raise ValueError(f"No sample at or before t={t}")
        return candidates[-1]

    def to_frame(self) -> pd.DataFrame:
        """Samples as a DataFrame in telemetry column order."""
        return pd.DataFrame([s.as_row() for s in self.samples], columns=list(TELEMETRY_COLUMNS))


def _measure(scenario: Scenario, truth: RigidBodyState, t: float,
             rng: Optional[np.random.Generator]):
    spec = scenario.trajectory
    r_a = apparent_accel(spec, t, scenario.gravity)
    return sample(scenario.sensors, truth, spec.omega_fn(t), r_a, t, rng), r_a


def initial_state(scenario: Scenario, frame: SensorFrame) -> ObserverState:
    """Observer state at t = 0."""
    v_hat = frame.v.copy() if scenario.v_hat0 is None else np.asarray(scenario.v_hat0, dtype=float)
    return ObserverState(
        v_hat=v_hat,
        r_hat=np.asarray(scenario.r_hat0, dtype=float),
        b_hat=np.asarray(scenario.b_hat0, dtype=float),
    )


def _telemetry(scenario: Scenario, g: GainConfig, truth: RigidBodyState,
               hst: HybridObserverState, frame: SensorFrame, r_a: Vec3,
               jump_flag: bool) -> ArcSample:
    st = hst.base
    err = error_state(truth, st, scenario.sensors.b_omega_vec, frame, g, r_a=r_a)
    try:
        phi_value = phi(frame, st, g, scenario.sensors.r_m_vec)
    except ObservabilityGuardError:
        phi_value = math.nan
    v_value = lyapunov_v(err, st, g, scenario.mu).value if g.k_b > 0.0 else math.nan
    return ArcSample(
        t=hst.t,
        j=hst.j,
        attitude_error_deg=math.degrees(rotation_angle(err.r_tilde)),
        dist_RI=so3_distance(err.r_tilde),
        b_tilde=err.b_tilde,
        r_a_tilde_norm=float(np.linalg.norm(err.r_a_tilde)),
        phi=phi_value,
        V=v_value,
        jump_flag=jump_flag,
    )


def _run_arc(scenario: Scenario, g: GainConfig, law: ObserverLaw, t_end: float, dt: float,
             cfg: Optional[HybridConfig] = None) -> HybridArc:
    check_step(dt)
    if t_end <= 0.0:
        raise ValueError(f"t_end must be positive, got {t_end}")
    n_steps = int(round(t_end / dt))
    if n_steps < 1:
        raise ValueError(f"t_end={t_end} is shorter than one step of {dt}")

    law = ObserverLaw(law)
    spec = scenario.trajectory
    r_m = scenario.sensors.r_m_vec
    rng = np.random.default_rng(scenario.sensors.seed) if scenario.sensors.noise.any_active else None

    truth = RigidBodyState(r=spec.r0.copy(), v=np.asarray(spec.v_fn(0.0), dtype=float))
    frame, r_a = _measure(scenario, truth, 0.0, rng)
    hst = HybridObserverState(base=initial_state(scenario, frame))

    arc = HybridArc(name=scenario.name, law=law, hybrid=cfg is not None)
    arc.samples.append(_telemetry(scenario, g, truth, hst, frame, r_a, False))

    label = f"{scenario.name} [{'hybrid' if cfg is not None else law.value}]"
    logger.info("Running %s: t_end=%.3f s, dt=%.1e s", label, t_end, dt)

    consecutive = 0
    k = 0
    with tqdm(total=n_steps, desc=label, unit="step", disable=not scenario.progress) as bar:
        while k < n_steps:
            if cfg is not None:
                hst, event = hybrid_step(hst, frame, g, r_m, cfg, dt, scenario.gravity)
                if event is not None:
                    consecutive += 1
                    if consecutive > MAX_CONSECUTIVE_JUMPS:
                        raise HybridLivelockError(
                            f"{consecutive} consecutive jumps at t={hst.t:.6f} without flow"
                        )
                    arc.events.append(event)
                    arc.samples.append(_telemetry(scenario, g, truth, hst, frame, r_a, True))
                    continue
                consecutive = 0
            else:
                base = observer_step(frame, hst.base, g, r_m, dt, law, scenario.gravity)
                hst = replace(hst, base=base)

            truth = advance(spec, truth, k * dt, dt, scenario.gravity)
            k += 1
            hst = replace(hst, t=k * dt)
            frame, r_a = _measure(scenario, truth, hst.t, rng)
            if k % scenario.log_every == 0 or k == n_steps:
                arc.samples.append(_telemetry(scenario, g, truth, hst, frame, r_a, False))
            bar.update(1)

    arc.guard_violations = hst.guard_hits
    arc.final_state = hst.base
    arc.final_truth = truth
    logger.info("Finished %s: %d samples, %d jumps, final attitude error %.4f deg",
                label, len(arc.samples), len(arc.events), arc.last.attitude_error_deg)
    return arc


def run_hybrid(scenario: Scenario, g: GainConfig, cfg: HybridConfig, t_end: float,
               dt: float) -> HybridArc:
    """Simulate the hybrid observer.

    Raises:
        HybridLivelockError: More than three jumps happen without flow in between.
    """
    return _run_arc(scenario, g, ObserverLaw.PROPOSED, t_end, dt, cfg)


def run_continuous(scenario: Scenario, g: GainConfig, law: ObserverLaw, t_end: float,
                   dt: float) -> HybridArc:
    """Simulate a continuous observer law; j stays 0."""
    return _run_arc(scenario, g, law, t_end, dt)
