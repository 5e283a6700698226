"""Run configured scenarios and write their telemetry."""

import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from src.exceptions import ConfigError
from src.geometry.so3 import IDENTITY, angle_axis
from src.models import (
    TELEMETRY_SCHEMA_VERSION, Certificate, JumpRecord, RunSummary, ScenarioConfig,
    ScenarioMode, TrajectoryConstants,
)
from src.harness.certificate import evaluate_certificate
from src.harness.config import HarnessSettings
from src.harness.constants import extract_constants
from src.observers.continuous import error_state
from src.observers.runner import HybridArc, Scenario, initial_state, run_continuous, run_hybrid
from src.simulation.rigid_body import RigidBodyState
from src.simulation.sensors import sample
from src.simulation.trajectories import apparent_accel, build_trajectory

logger = logging.getLogger(__name__)

SCHEMA_LINE = f"# attitude-telemetry schema={TELEMETRY_SCHEMA_VERSION}"

# Thresholds behind RunSummary.convergence_times
CONVERGENCE_THRESHOLDS = {
    "attitude_error_deg": 1.0,
    "bias_error": 0.005,
    "ratilde_norm": 0.05,
}


def build_scenario(cfg: ScenarioConfig, progress: bool = False) -> Scenario:
    """Instantiate trajectory and initial estimate from a configuration.

    Raises:
        ConfigError: If the trajectory does not accept the configured parameters.
    """
    params = {k: np.array(v, dtype=float) for k, v in cfg.trajectory_params.items()}
    try:
        spec = build_trajectory(cfg.trajectory, **params)
    except TypeError as exc:
        raise ConfigError(f"Trajectory '{cfg.trajectory}' rejects parameters {sorted(params)}") from exc

    axis = np.array(cfg.init.r_hat_axis, dtype=float)
    if cfg.init.r_hat_angle_deg == 0.0:
        r_hat0 = IDENTITY.copy()
    else:
        norm = float(np.linalg.norm(axis))
        if norm == 0.0:
            raise ConfigError("init.r_hat_axis must be nonzero when init.r_hat_angle_deg is set")
        r_hat0 = angle_axis(math.radians(cfg.init.r_hat_angle_deg), axis / norm)

    return Scenario(
        trajectory=spec,
        sensors=cfg.sensors,
        r_hat0=r_hat0,
        v_hat0=None if cfg.init.v_hat is None else np.array(cfg.init.v_hat, dtype=float),
        b_hat0=np.array(cfg.init.b_hat, dtype=float),
        mu=cfg.sim.mu,
        log_every=cfg.sim.log_every,
        name=cfg.name,
        progress=progress,
    )


def simulate(cfg: ScenarioConfig, mode: Optional[ScenarioMode] = None,
             progress: bool = False) -> HybridArc:
    """Run the configured observer without writing anything."""
    mode = ScenarioMode(mode or cfg.mode)
    scenario = build_scenario(cfg, progress=progress)
    if mode is ScenarioMode.HYBRID:
        return run_hybrid(scenario, cfg.gains, cfg.hybrid, cfg.sim.t_end, cfg.sim.dt)
    return run_continuous(scenario, cfg.gains, mode.law, cfg.sim.t_end, cfg.sim.dt)


def convergence_times(frame: pd.DataFrame) -> Dict[str, Optional[float]]:
    """Time after which each error stays below its threshold; None if it never settles."""
    bias = np.sqrt(frame["btilde_x"] ** 2 + frame["btilde_y"] ** 2 + frame["btilde_z"] ** 2)
    series = {
        "attitude_error_deg": frame["attitude_error_deg"],
        "bias_error": bias,
        "ratilde_norm": frame["ratilde_norm"],
    }
    times = frame["t"].to_numpy()
    result: Dict[str, Optional[float]] = {}
    for name, values in series.items():
        ok = values.to_numpy() < CONVERGENCE_THRESHOLDS[name]
        if not ok[-1]:
            result[name] = None
            continue
        bad = np.flatnonzero(~ok)
        result[name] = float(times[0] if bad.size == 0 else times[bad[-1] + 1])
    return result


def write_telemetry(frame: pd.DataFrame, path: Path) -> None:
    """Schema comment line, header row, one row per sample."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(SCHEMA_LINE + "\n")
        frame.to_csv(f, index=False, float_format="%.12g")


def default_output(cfg: ScenarioConfig, mode: ScenarioMode, settings: HarnessSettings) -> Path:
    if cfg.sim.output:
        return Path(cfg.sim.output)
    return settings.output_dir / f"{cfg.name}_{mode.value}.csv"


def run_scenario(cfg: ScenarioConfig, mode: Optional[ScenarioMode] = None,
                 out: Optional[Path] = None,
                 settings: Optional[HarnessSettings] = None,
                 progress: Optional[bool] = None) -> RunSummary:
    """Simulate ``cfg`` and write ``<out>.csv`` plus a ``<out>.json`` summary.

    Args:
        cfg: Scenario configuration.
        mode: Overrides cfg.mode.
        out: CSV path; defaults to sim.output or <output_dir>/<name>_<mode>.csv.
        settings: Harness settings; read from the environment if omitted.
        progress: Show a progress bar; defaults to settings.progress.

    Returns:
        The RunSummary that was written next to the CSV.
    """
    settings = settings or HarnessSettings()
    mode = ScenarioMode(mode or cfg.mode)
    out = Path(out) if out is not None else default_output(cfg, mode, settings)
    arc = simulate(cfg, mode, settings.progress if progress is None else progress)

    frame = arc.to_frame()
    write_telemetry(frame, out)
    last = arc.last
    summary = RunSummary(
        scenario=cfg.name,
        mode=mode,
        csv_path=str(out),
        samples=len(frame),
        t_end=float(last.t),
        final_attitude_error_deg=last.attitude_error_deg,
        final_bias_error=float(np.linalg.norm(last.b_tilde)),
        final_accel_error=last.r_a_tilde_norm,
        convergence_times=convergence_times(frame),
        jumps=[JumpRecord(t=e.t, j_before=e.j_before, phi_before=e.phi_before,
                          phi_after=e.phi_after, axis=e.axis) for e in arc.events],
        guard_violations=arc.guard_violations,
    )
    summary_path = out.with_suffix(".json")
    with open(summary_path, "w", encoding="utf-8") as f:
        json.dump(summary.model_dump(mode="json"), f, indent=2)
    logger.info("Wrote %s and %s", out, summary_path)
    return summary


def _run_quiet(args: Tuple[ScenarioConfig, Optional[HarnessSettings]]) -> RunSummary:
    cfg, settings = args
    return run_scenario(cfg, settings=settings, progress=False)


def run_batch(configs: Sequence[ScenarioConfig], max_workers: Optional[int] = None,
              settings: Optional[HarnessSettings] = None) -> List[RunSummary]:
    """Run independent scenarios on a process pool, one output file set each.

    Raises:
        ConfigError: If two scenarios would write the same CSV.
    """
    settings = settings or HarnessSettings()
    outputs = [default_output(c, ScenarioMode(c.mode), settings) for c in configs]
    if len(set(outputs)) != len(outputs):
        raise ConfigError("Batch scenarios must write to distinct output files")
    if max_workers == 1 or len(configs) <= 1:
        return [_run_quiet((c, settings)) for c in configs]
    with ProcessPoolExecutor(max_workers=max_workers) as pool:
        return list(pool.map(_run_quiet, [(c, settings) for c in configs]))


def initial_accel_error(cfg: ScenarioConfig) -> float:
    """|r_a~(0)| of the configured initial estimate."""
    scenario = build_scenario(cfg)
    spec = scenario.trajectory
    truth = RigidBodyState(r=spec.r0.copy(), v=np.asarray(spec.v_fn(0.0), dtype=float))
    r_a = apparent_accel(spec, 0.0, scenario.gravity)
    frame = sample(cfg.sensors, truth, spec.omega_fn(0.0), r_a, 0.0)
    err = error_state(truth, initial_state(scenario, frame), cfg.sensors.b_omega_vec,
                      frame, cfg.gains, r_a=r_a)
    return float(np.linalg.norm(err.r_a_tilde))


def scenario_constants(cfg: ScenarioConfig) -> TrajectoryConstants:
    """Trajectory constants over [0, sim.t_end]."""
    spec = build_scenario(cfg).trajectory
    return extract_constants(spec, cfg.sensors.r_m_vec, cfg.gains.c5,
                             cfg.certificate.grid_dt, cfg.sim.t_end, cfg.gains)


def certify_scenario(cfg: ScenarioConfig,
                     tc: Optional[TrajectoryConstants] = None) -> Tuple[TrajectoryConstants, Certificate]:
    """Constants and certificate for a configuration.

    Missing certificate inputs are filled in: r_a0_norm from the initial
    estimate, mu as half its upper bound (sim.mu if that bound is degenerate).
    """
    tc = tc or scenario_constants(cfg)
    settings = cfg.certificate
    r_a0 = settings.r_a0_norm if settings.r_a0_norm is not None else initial_accel_error(cfg)
    hybrid = cfg.hybrid if ScenarioMode(cfg.mode) is ScenarioMode.HYBRID else None

    def evaluate(mu: float) -> Certificate:
        return evaluate_certificate(tc, cfg.gains, settings.eps_r, settings.b_a, settings.eps_a,
                                    mu, r_a0, c_omega=settings.c_omega, hybrid=hybrid)

    if settings.mu is not None:
        return tc, evaluate(settings.mu)
    probe = evaluate(cfg.sim.mu)
    if math.isfinite(probe.mu_max) and probe.mu_max > 0.0:
        return tc, evaluate(0.5 * probe.mu_max)
    return tc, probe
