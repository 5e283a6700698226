#!/usr/bin/env python3
"""Command-line entry point: simulate, certify, constants, batch, plot.

Exit codes: 0 on success, 2 when an assumption, the observability guard or
the jump livelock check is violated, 1 on I/O and configuration errors.
"""

import json
import logging
import sys
from pathlib import Path

import click
from pydantic import ValidationError

# Allow `python src/cli.py` as well as `python -m src.cli`
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.exceptions import (  # noqa: E402
    AssumptionViolationError, ConfigError, HybridLivelockError, ObservabilityGuardError,
)
from src.harness.config import HarnessSettings, load_config  # noqa: E402
from src.harness.constants import check_assumptions  # noqa: E402
from src.harness.scenario import certify_scenario, run_batch, run_scenario, scenario_constants  # noqa: E402
from src.models import ScenarioMode  # noqa: E402

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VIOLATION = 2

MODES = [m.value for m in ScenarioMode]


def _banner(title: str) -> None:
    click.echo("=" * 80)
    click.echo(title)
    click.echo("=" * 80)


def _fail(ctx: click.Context, message: str, code: int) -> None:
    click.echo(f"❌ {message}", err=True)
    ctx.exit(code)


def _load(ctx: click.Context, paths):
    try:
        return load_config(paths)
    except (ConfigError, ValidationError) as exc:
        _fail(ctx, str(exc), EXIT_ERROR)
    except OSError as exc:
        _fail(ctx, f"Cannot read configuration: {exc}", EXIT_ERROR)


@click.group()
@click.option("--log-level", default=None, help="Logging level (default: ATTITUDE_LOG_LEVEL or INFO)")
@click.pass_context
def cli(ctx: click.Context, log_level):
    """Velocity-aided attitude observer study."""
    settings = HarnessSettings()
    logging.basicConfig(
        level=(log_level or settings.log_level).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    ctx.obj = settings


@cli.command()
@click.option("--config", "configs", multiple=True, required=True, type=click.Path(),
              help="Scenario file; repeat to layer overrides")
@click.option("--mode", type=click.Choice(MODES), default=None, help="Override scenario.mode")
@click.option("--out", type=click.Path(), default=None, help="Telemetry CSV path")
@click.option("--progress/--no-progress", default=None, help="Show a progress bar")
@click.pass_context
def simulate(ctx: click.Context, configs, mode, out, progress):
    """Run one scenario and write its telemetry CSV and summary JSON."""
    settings: HarnessSettings = ctx.obj
    cfg = _load(ctx, configs)
    mode = ScenarioMode(mode or cfg.mode)
    _banner(f"Simulating {cfg.name} [{mode.value}]")
    click.echo(f"t_end={cfg.sim.t_end} s, dt={cfg.sim.dt} s")

    try:
        summary = run_scenario(cfg, mode=mode, out=Path(out) if out else None,
                               settings=settings, progress=progress)
    except HybridLivelockError as exc:
        _fail(ctx, f"Livelock: {exc}", EXIT_VIOLATION)
    except ObservabilityGuardError as exc:
        _fail(ctx, f"Observability guard: {exc}", EXIT_VIOLATION)
    except (ConfigError, ValueError) as exc:
        _fail(ctx, str(exc), EXIT_ERROR)
    except OSError as exc:
        _fail(ctx, f"Cannot write telemetry: {exc}", EXIT_ERROR)

    click.echo(f"✅ {summary.samples} samples written to {summary.csv_path}")
    click.echo(f"   final attitude error: {summary.final_attitude_error_deg:.4f} deg")
    click.echo(f"   final bias error:     {summary.final_bias_error:.5f} rad/s")
    click.echo(f"   final accel error:    {summary.final_accel_error:.5f} m/s^2")
    for jump in summary.jumps:
        click.echo(f"   jump at t={jump.t:.4f} s: Phi {jump.phi_before:.4f} -> {jump.phi_after:.4f}")
    for name, t in summary.convergence_times.items():
        click.echo(f"   {name} settled: {'never' if t is None else f'{t:.3f} s'}")
    if summary.guard_violations:
        _fail(ctx, f"{summary.guard_violations} samples failed the observability guard", EXIT_VIOLATION)


@cli.command()
@click.option("--config", "configs", multiple=True, required=True, type=click.Path(),
              help="Scenario file; repeat to layer overrides")
@click.pass_context
def constants(ctx: click.Context, configs):
    """Print the sampled trajectory constants."""
    cfg = _load(ctx, configs)
    try:
        tc = scenario_constants(cfg)
    except (ConfigError, ValueError) as exc:
        _fail(ctx, str(exc), EXIT_ERROR)
    _banner(f"Trajectory constants: {cfg.name} ({cfg.trajectory})")
    click.echo(json.dumps(tc.model_dump(mode="json"), indent=2))
    try:
        check_assumptions(tc)
    except AssumptionViolationError as exc:
        _fail(ctx, f"{exc} ({len(exc.violations)} violations)", EXIT_VIOLATION)


@cli.command()
@click.option("--config", "configs", multiple=True, required=True, type=click.Path(),
              help="Scenario file; repeat to layer overrides")
@click.pass_context
def certify(ctx: click.Context, configs):
    """Evaluate the sufficient gain conditions for a scenario."""
    cfg = _load(ctx, configs)
    try:
        tc, cert = certify_scenario(cfg)
    except (ConfigError, ValueError) as exc:
        _fail(ctx, str(exc), EXIT_ERROR)

    _banner(f"Gain certificate: {cfg.name}")
    click.echo(f"k_R = {cfg.gains.k_R:.4g}  (required > {cert.k_R_min:.4g})")
    click.echo(f"k_v = {cfg.gains.k_v:.4g}  (required > {cert.k_v_min:.4g})")
    click.echo(f"mu  = {cert.mu:.4g}  (required < {cert.mu_max:.4g})")
    for name, check in cert.conditions.items():
        marker = "✅" if check.satisfied else "❌"
        click.echo(f"  {marker} {name:<14} margin {check.margin:+.4g}  {check.detail}")
    click.echo("Certificate " + ("satisfied" if cert.satisfied else "not satisfied (sufficient conditions only)"))
    try:
        check_assumptions(tc)
    except AssumptionViolationError as exc:
        _fail(ctx, f"{exc}; the certificate does not apply", EXIT_VIOLATION)


@cli.command()
@click.argument("configs", nargs=-1, required=True, type=click.Path())
@click.option("--workers", type=int, default=None, help="Process pool size")
@click.pass_context
def batch(ctx: click.Context, configs, workers):
    """Run several independent scenario files in parallel."""
    settings: HarnessSettings = ctx.obj
    cfgs = [_load(ctx, [path]) for path in configs]
    _banner(f"Batch of {len(cfgs)} scenarios")
    try:
        summaries = run_batch(cfgs, max_workers=workers, settings=settings)
    except HybridLivelockError as exc:
        _fail(ctx, f"Livelock: {exc}", EXIT_VIOLATION)
    except ObservabilityGuardError as exc:
        _fail(ctx, f"Observability guard: {exc}", EXIT_VIOLATION)
    except (ConfigError, ValueError, OSError) as exc:
        _fail(ctx, str(exc), EXIT_ERROR)
    for s in summaries:
        click.echo(f"✅ {s.scenario} [{s.mode.value}]: {s.final_attitude_error_deg:.4f} deg, "
                   f"{len(s.jumps)} jumps -> {s.csv_path}")
    if any(s.guard_violations for s in summaries):
        _fail(ctx, "Some runs failed the observability guard", EXIT_VIOLATION)


@cli.command()
@click.option("--csv", "csv_path", required=True, type=click.Path(), help="Telemetry CSV")
@click.option("--out-dir", required=True, type=click.Path(), help="Directory for the figures")
@click.pass_context
def plot(ctx: click.Context, csv_path, out_dir):
    """Draw attitude, bias and acceleration error figures from a telemetry CSV."""
    from src.harness.plots import emit_plots

    try:
        paths = emit_plots(csv_path, out_dir)
    except ConfigError as exc:
        _fail(ctx, str(exc), EXIT_ERROR)
    except OSError as exc:
        _fail(ctx, f"Cannot read {csv_path}: {exc}", EXIT_ERROR)
    for path in paths:
        click.echo(f"✅ {path}")


if __name__ == "__main__":
    cli()
