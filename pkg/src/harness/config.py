"""Scenario configuration files and process-level harness settings.

Scenario files are flat ``key = value`` text::

    # reference study, hybrid observer
    scenario.mode = hybrid
    sensors.b_omega_deg = 5, 5, 5
    gains.k_r = 2

Several files can be layered; later files override earlier ones.
"""

import logging
import math
from pathlib import Path
from typing import Dict, Iterable, Mapping, Tuple, Union

from pydantic import ValidationError
from pydantic_settings import BaseSettings, SettingsConfigDict

from src.exceptions import ConfigError
from src.models import ScenarioConfig

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

# file key -> (section path in ScenarioConfig, unit conversion)
_DEG = "deg"
CONFIG_KEYS: Dict[str, Tuple[Tuple[str, ...], str]] = {
    "scenario.name": (("name",), ""),
    "scenario.trajectory": (("trajectory",), ""),
    "scenario.omega": (("trajectory_params", "omega"), ""),
    "scenario.accel": (("trajectory_params", "accel"), ""),
    "scenario.mode": (("mode",), ""),
    "sensors.r_m": (("sensors", "r_m"), ""),
    "sensors.b_omega_deg": (("sensors", "b_omega"), _DEG),
    "sensors.noise_gyro": (("sensors", "noise", "gyro"), ""),
    "sensors.noise_accel": (("sensors", "noise", "accel"), ""),
    "sensors.noise_mag": (("sensors", "noise", "mag"), ""),
    "sensors.noise_velocity": (("sensors", "noise", "velocity"), ""),
    "sensors.seed": (("sensors", "seed"), ""),
    "gains.k_v": (("gains", "k_v"), ""),
    "gains.k_r": (("gains", "k_R"), ""),
    "gains.k_b": (("gains", "k_b"), ""),
    "gains.rho1": (("gains", "rho1"), ""),
    "gains.rho2": (("gains", "rho2"), ""),
    "gains.c5": (("gains", "c5"), ""),
    "gains.eps_proj": (("gains", "eps_proj"), ""),
    "hybrid.delta": (("hybrid", "delta"), ""),
    "hybrid.alpha": (("hybrid", "alpha"), ""),
    "hybrid.basis": (("hybrid", "basis"), ""),
    "hybrid.candidate_surrogate": (("hybrid", "candidate_surrogate"), ""),
    "hybrid.preserve_acceleration_estimate": (("hybrid", "preserve_acceleration_estimate"), ""),
    "init.r_hat_axis": (("init", "r_hat_axis"), ""),
    "init.r_hat_angle_deg": (("init", "r_hat_angle_deg"), ""),
    "init.v_hat": (("init", "v_hat"), ""),
    "init.b_hat_deg": (("init", "b_hat"), _DEG),
    "sim.dt": (("sim", "dt"), ""),
    "sim.t_end": (("sim", "t_end"), ""),
    "sim.log_every": (("sim", "log_every"), ""),
    "sim.mu": (("sim", "mu"), ""),
    "sim.output": (("sim", "output"), ""),
    "certificate.eps_r": (("certificate", "eps_r"), ""),
    "certificate.eps_a": (("certificate", "eps_a"), ""),
    "certificate.b_a": (("certificate", "b_a"), ""),
    "certificate.mu": (("certificate", "mu"), ""),
    "certificate.r_a0_norm": (("certificate", "r_a0_norm"), ""),
    "certificate.c_omega": (("certificate", "c_omega"), ""),
    "certificate.grid_dt": (("certificate", "grid_dt"), ""),
}


class HarnessSettings(BaseSettings):
    """Process-wide defaults, read from ATTITUDE_* variables or a .env file."""
    model_config = SettingsConfigDict(env_prefix="ATTITUDE_", env_file=".env", extra="ignore")

    output_dir: Path = Path("data/processed")
    log_level: str = "INFO"
    progress: bool = True


def parse_config_text(text: str, source: str = "<string>") -> Dict[str, str]:
    """Split ``key = value`` lines; '#' starts a comment."""
    entries: Dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got '{raw.strip()}'")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.lower()
        if key not in CONFIG_KEYS:
            raise ConfigError(f"{source}:{lineno}: unknown key '{key}'")
        if key in entries:
            logger.debug("%s:%d: '%s' set twice; keeping the later value", source, lineno, key)
        entries[key] = value
    return entries


def _degrees_to_radians(value: str, key: str):
    try:
        parts = [float(p) for p in value.replace(";", ",").split(",") if p.strip()]
    except ValueError as exc:
        raise ConfigError(f"'{key}' needs comma-separated numbers, got '{value}'") from exc
    return tuple(math.radians(p) for p in parts)


def build_config(entries: Mapping[str, str]) -> ScenarioConfig:
    """Turn flat entries into a validated ScenarioConfig.

    Raises:
        ConfigError: Unknown key or a value the models reject.
    """
    nested: Dict = {}
    for key, value in entries.items():
        if key not in CONFIG_KEYS:
            raise ConfigError(f"Unknown key '{key}'")
        path, unit = CONFIG_KEYS[key]
        converted = _degrees_to_radians(value, key) if unit == _DEG else value
        node = nested
        for part in path[:-1]:
            node = node.setdefault(part, {})
        node[path[-1]] = converted

    # the default sensor config carries the reference bias; keep it unless overridden
    if "sensors" in nested and "b_omega" not in nested["sensors"]:
        nested["sensors"]["b_omega"] = ScenarioConfig().sensors.b_omega
    try:
        return ScenarioConfig.model_validate(nested)
    except ValidationError as exc:
        raise ConfigError(f"Invalid scenario configuration:\n{exc}") from exc


def load_config(paths: Union[PathLike, Iterable[PathLike]]) -> ScenarioConfig:
    """Read and layer one or more configuration files.

    Raises:
        ConfigError: On syntax, key or validation errors.
        OSError: If a file cannot be read.
    """
    if isinstance(paths, (str, Path)):
        paths = [paths]
    entries: Dict[str, str] = {}
    for path in paths:
        path = Path(path)
        entries.update(parse_config_text(path.read_text(encoding="utf-8"), source=str(path)))
    return build_config(entries)
