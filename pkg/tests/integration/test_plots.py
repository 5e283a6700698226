#!/usr/bin/env python3
"""Tests for telemetry loading and figure output."""

import sys
from pathlib import Path

import matplotlib.pyplot as plt
import numpy as np
import pandas as pd
import pytest

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from src.exceptions import ConfigError
from src.harness.plots import _mark_jumps, emit_plots, read_telemetry
from src.harness.scenario import write_telemetry
from src.models import TELEMETRY_COLUMNS


def synthetic_frame() -> pd.DataFrame:
    """Five samples with one jump at t = 0.1."""
    t = [0.0, 0.1, 0.1, 0.2, 0.3]
    return pd.DataFrame({
        "t": t,
        "j": [0, 0, 1, 1, 1],
        "attitude_error_deg": [180.0, 170.0, 20.0, 15.0, 10.0],
        "dist_RI": [1.0, 0.99, 0.17, 0.13, 0.09],
        "btilde_x": [-0.087] * 5,
        "btilde_y": [-0.087] * 5,
        "btilde_z": [-0.087] * 5,
        "ratilde_norm": [19.9, 18.0, 17.0, 15.0, 13.0],
        "phi": [4.0, 3.7, 1.9, 1.5, 1.2],
        "V": [np.nan] * 5,
        "jump_flag": [0, 0, 1, 0, 0],
    }, columns=list(TELEMETRY_COLUMNS))


class TestReadTelemetry:
    """Test read_telemetry."""

    def test_roundtrip(self, tmp_path):
        """A written telemetry file reads back with the schema columns."""
        path = tmp_path / "run.csv"
        write_telemetry(synthetic_frame(), path)
        frame = read_telemetry(path)
        assert list(frame.columns) == list(TELEMETRY_COLUMNS)
        assert len(frame) == 5
        assert frame["V"].isna().all()

    def test_empty_file(self, tmp_path):
        """An empty file is rejected."""
        path = tmp_path / "empty.csv"
        path.write_text("", encoding="utf-8")
        with pytest.raises(ConfigError):
            read_telemetry(path)

    def test_header_only(self, tmp_path):
        """A header without samples is rejected."""
        path = tmp_path / "header.csv"
        write_telemetry(synthetic_frame().iloc[0:0], path)
        with pytest.raises(ConfigError) as exc_info:
            read_telemetry(path)

        assert "no samples" in str(exc_info.value)

    def test_wrong_columns(self, tmp_path):
        """Columns that differ from the schema are rejected."""
        path = tmp_path / "wrong.csv"
        synthetic_frame().drop(columns=["phi"]).to_csv(path, index=False)
        with pytest.raises(ConfigError):
            read_telemetry(path)


class TestEmitPlots:
    """Test emit_plots."""

    def test_three_figures(self, tmp_path):
        """Attitude, bias and acceleration figures are written."""
        csv_path = tmp_path / "study.csv"
        write_telemetry(synthetic_frame(), csv_path)
        paths = emit_plots(csv_path, tmp_path / "figures")
        assert [p.name for p in paths] == ["study_attitude.png", "study_bias.png", "study_accel.png"]
        assert all(p.exists() and p.stat().st_size > 0 for p in paths)

    def test_jump_markers(self):
        """One vertical line per jump instant."""
        frame = synthetic_frame()
        fig, ax = plt.subplots()
        try:
            _mark_jumps(ax, frame)
            assert len(ax.lines) == 1
            assert ax.lines[0].get_xdata()[0] == pytest.approx(0.1)
        finally:
            plt.close(fig)
