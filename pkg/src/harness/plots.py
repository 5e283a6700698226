"""Figures of a telemetry CSV: attitude error, bias error and acceleration error."""

import logging
from pathlib import Path
from typing import List, Union

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
import pandas as pd  # noqa: E402

from src.exceptions import ConfigError  # noqa: E402
from src.models import TELEMETRY_COLUMNS  # noqa: E402

logger = logging.getLogger(__name__)


def read_telemetry(csv_path: Union[str, Path]) -> pd.DataFrame:
    """Load a telemetry CSV and check it against the v1 schema.

    Raises:
        ConfigError: Missing rows or columns that differ from the schema.
    """
    try:
        frame = pd.read_csv(csv_path, comment="#")
    except pd.errors.EmptyDataError as exc:
        raise ConfigError(f"{csv_path} is empty") from exc
    if list(frame.columns) != list(TELEMETRY_COLUMNS):
        raise ConfigError(
            f"{csv_path} does not follow the telemetry schema; columns are {list(frame.columns)}"
        )
    if frame.empty:
        raise ConfigError(f"{csv_path} has a header but no samples")
    return frame


def _mark_jumps(ax, frame: pd.DataFrame) -> None:
    for t in frame.loc[frame["jump_flag"] == 1, "t"].unique():
        ax.axvline(t, color="tab:red", linestyle="--", linewidth=0.8, alpha=0.7)


def emit_plots(csv_path: Union[str, Path], out_dir: Union[str, Path]) -> List[Path]:
    """Write ``<stem>_attitude.png``, ``<stem>_bias.png`` and ``<stem>_accel.png``.

    Jumps (rows with jump_flag = 1) are drawn as dashed vertical lines.
    """
    frame = read_telemetry(csv_path)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = Path(csv_path).stem
    t = frame["t"].to_numpy()

    figures = []

    fig, ax = plt.subplots(figsize=(8, 4))
    ax.plot(t, frame["attitude_error_deg"], color="tab:blue")
    ax.set_xlabel("time (s)")
    ax.set_ylabel("attitude error (deg)")
    ax.set_title("Attitude estimation error")
    figures.append((fig, ax, out_dir / f"{stem}_attitude.png"))

    fig, ax = plt.subplots(figsize=(8, 4))
    for axis_name, color in zip("xyz", ("tab:blue", "tab:orange", "tab:green")):
        ax.plot(t, frame[f"btilde_{axis_name}"], color=color, label=f"b~_{axis_name}")
    ax.set_xlabel("time (s)")
    ax.set_ylabel("gyro bias error (rad/s)")
    ax.set_title("Gyro bias estimation error")
    ax.legend(loc="upper right")
    figures.append((fig, ax, out_dir / f"{stem}_bias.png"))

    fig, ax = plt.subplots(figsize=(8, 4))
    ax.plot(t, np.asarray(frame["ratilde_norm"]), color="tab:purple")
    ax.set_xlabel("time (s)")
    ax.set_ylabel("|r_a~| (m/s^2)")
    ax.set_title("Apparent acceleration estimation error")
    figures.append((fig, ax, out_dir / f"{stem}_accel.png"))

    written = []
    for fig, ax, path in figures:
        _mark_jumps(ax, frame)
        ax.grid(True, alpha=0.3)
        fig.savefig(path, bbox_inches="tight", dpi=120)
        plt.close(fig)
        written.append(path)
    logger.info("Wrote %d figures to %s", len(written), out_dir)
    return written
