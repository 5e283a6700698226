#!/usr/bin/env python3
"""Reference study: proposed continuous and hybrid observers against the two
bias-free baselines, with figures for every run."""

import sys
from pathlib import Path

import click

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.harness.config import HarnessSettings, load_config  # noqa: E402
from src.harness.plots import emit_plots  # noqa: E402
from src.harness.scenario import certify_scenario, run_batch  # noqa: E402
from src.models import ScenarioMode  # noqa: E402


def run_study(config_path: str, output_dir: str, workers: int):
    """Run every observer mode on one scenario.

    Args:
        config_path: Scenario file shared by all runs
        output_dir: Directory for CSV, JSON and figure files
        workers: Process pool size

    Returns:
        List of RunSummary objects, one per mode
    """
    base = load_config(config_path)
    settings = HarnessSettings(output_dir=Path(output_dir), progress=False)

    print(f"{'=' * 80}")
    print(f"Attitude observer study: {base.name}")
    print(f"{'=' * 80}")
    print(f"Trajectory: {base.trajectory}")
    print(f"Gains: k_v={base.gains.k_v}, k_R={base.gains.k_R}, k_b={base.gains.k_b}")
    print(f"Output: {output_dir}")
    print()

    print("🔄 Evaluating gain certificate...")
    tc, cert = certify_scenario(base)
    print(f"✅ c0={tc.c0:.4f}, c1={tc.c1:.4f}, c2={tc.c2:.4f}, c3={tc.c3:.4f}, c4={tc.c4:.4f}")
    print(f"   k_R > {cert.k_R_min:.4g}, k_v > {cert.k_v_min:.4g} "
          f"({'satisfied' if cert.satisfied else 'not satisfied'})")

    configs = [
        base.model_copy(update={"mode": mode,
                                "sim": base.sim.model_copy(update={"output": None})})
        for mode in ScenarioMode
    ]
    print(f"\n🔄 Running {len(configs)} simulations...")
    summaries = run_batch(configs, max_workers=workers, settings=settings)

    print("\n📊 Results:")
    for s in summaries:
        print(f"  {s.mode.value:<12} attitude {s.final_attitude_error_deg:9.4f} deg  "
              f"bias {s.final_bias_error:.5f} rad/s  accel {s.final_accel_error:.5f} m/s^2  "
              f"jumps {len(s.jumps)}")
        emit_plots(s.csv_path, Path(output_dir) / "figures")

    print(f"\n✅ Study complete!")
    print(f"   Check {output_dir} for output files")
    return summaries


@click.command()
@click.option("--config", "config_path", default="configs/reference.cfg", show_default=True,
              type=click.Path(exists=True), help="Scenario file")
@click.option("--output-dir", default="data/processed", show_default=True, help="Output directory")
@click.option("--workers", default=4, show_default=True, help="Process pool size")
def main(config_path, output_dir, workers):
    """Main entry point."""
    run_study(config_path, output_dir, workers)


if __name__ == "__main__":
    main()
