"""Command-line front end.

    drummodes spectrum      solve a profile's modes and print the ratio table
    drummodes trajectory    integrate one trial shot and dump (r, R, dR) rows
    drummodes report        reproduce the published reference table
    drummodes tune          fit loading parameters to the harmonic targets
    drummodes profile-dump  sample a density profile for plotting

Exit codes: 0 success, 1 configuration error (reported before any
computation starts), 2 solver failure.  All output is deterministic for
a fixed configuration.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import sys
from pathlib import Path

import click

from .ode import IntegrationError, integrate
from .profiles import (
    BUILTIN_PROFILES,
    DensityProfile,
    builtin_profile,
    dump_profile,
    load_profile,
)
from .report import build_report, reference_mode_order, render_report
from .shooting import (
    ModeId,
    SearchConfig,
    SolverError,
    eigen_spectrum,
    initial_conditions,
)
from .spectrum import ratio_table
from .tuner import default_continuous_problem, default_rings_problem, load_tune_spec, tune

EXIT_CONFIG = 1
EXIT_SOLVER = 2


class _Cli(click.Group):
    """click exits 2 on usage errors; this tool reserves 2 for solver failures."""

    def main(self, *args, **kwargs):
        kwargs.setdefault("standalone_mode", False)
        try:
            return super().main(*args, **kwargs)
        except click.exceptions.Exit as err:
            sys.exit(err.exit_code)
        except click.Abort:
            sys.exit(EXIT_CONFIG)
        except click.ClickException as err:
            err.show()
            sys.exit(EXIT_CONFIG)


def _config_error(message: str) -> "click.ClickException":
    err = click.ClickException(message)
    err.exit_code = EXIT_CONFIG
    return err


def _parse_mode(text: str) -> ModeId:
    try:
        return ModeId.parse(text)
    except ValueError as err:
        raise _config_error(str(err)) from None


def _resolve_profile(spec: str) -> DensityProfile:
    if spec in BUILTIN_PROFILES:
        return builtin_profile(spec)
    path = Path(spec)
    if not path.exists():
        raise _config_error(
            f"profile {spec!r} is neither a built-in ({', '.join(sorted(BUILTIN_PROFILES))}) "
            "nor an existing file"
        )
    try:
        return load_profile(path)
    except (ValueError, KeyError, json.JSONDecodeError) as err:
        raise _config_error(f"invalid profile file {spec}: {err}") from None


def _search_config(step: float, order: int, kmin: float, kmax: float, kstep: float) -> SearchConfig:
    try:
        return SearchConfig(k_min=kmin, k_max=kmax, k_step=kstep, h=step, order=order)
    except ValueError as err:
        raise _config_error(str(err)) from None


def _validate_search(config: SearchConfig, profile: DensityProfile) -> None:
    span = profile.radius - config.r_start
    if not 0 < config.h <= span / 100:
        raise _config_error(f"step must lie in (0, {span / 100:g}], got {config.h:g}")
    if not 0 < config.k_min < config.k_max:
        raise _config_error("scan range must satisfy 0 < kmin < kmax")
    if config.k_step <= 0:
        raise _config_error("scan step must be positive")


def _write(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=False)


def _spectrum_rows(table, order_modes):
    by_mode = {entry.mode: entry for entry in table}
    return [by_mode[mode] for mode in order_modes]


def _render_spectrum(table, fmt: str) -> str:
    modes = reference_mode_order(table.modes())
    rows = _spectrum_rows(table, modes)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["diameters", "circles", "kappa", "ratio"])
        for entry in rows:
            writer.writerow(
                [entry.mode.diameters, entry.mode.circles, repr(entry.kappa), repr(entry.ratio)]
            )
        return buf.getvalue()
    if fmt == "json":
        payload = [
            {
                "diameters": entry.mode.diameters,
                "circles": entry.mode.circles,
                "kappa": entry.kappa,
                "ratio": entry.ratio,
            }
            for entry in rows
        ]
        return json.dumps(payload, indent=2) + "\n"
    lines = [f"{'mode':>7} {'kappa':>10} {'ratio':>8}"]
    for entry in rows:
        lines.append(f"{str(entry.mode):>7} {entry.kappa:10.5f} {entry.ratio:8.4f}")
    lines.append(f"base: {table.base_mode} = {table.base_value:g}")
    return "\n".join(lines) + "\n"


@click.group(cls=_Cli)
def cli() -> None:
    """Eigenmodes and harmonicity of radially loaded circular membranes."""


_profile_option = click.option(
    "--profile",
    default="uniform",
    show_default=True,
    help="Built-in name (uniform | default-continuous | default-rings) or a JSON profile file.",
)
_step_option = click.option("--step", type=float, default=1e-4, show_default=True, help="Integration step.")
_order_option = click.option(
    "--order", type=click.Choice(["2", "4"]), default="2", show_default=True, help="Runge-Kutta order."
)
_format_option = click.option(
    "--format", "fmt", type=click.Choice(["text", "csv", "json"]), default="text", show_default=True
)
_output_option = click.option("--output", default=None, help="Write to this file instead of stdout.")


@cli.command()
@_profile_option
@click.option("--mmax", type=int, default=4, show_default=True, help="Largest number of nodal diameters.")
@click.option("--cmax", type=int, default=2, show_default=True, help="Largest number of nodal circles.")
@click.option("--base", default="0,0", show_default=True, help="Base mode 'm,c' of the ratio table.")
@click.option("--base-value", type=float, default=1.0, show_default=True)
@_format_option
@_output_option
@_order_option
@_step_option
@click.option("--kmin", type=float, default=0.1, show_default=True, help="Scan lower bound (divided by radius).")
@click.option("--kmax", type=float, default=40.0, show_default=True, help="Scan upper bound (divided by radius).")
@click.option("--kstep", type=float, default=0.05, show_default=True, help="Scan step (divided by radius).")
def spectrum(profile, mmax, cmax, base, base_value, fmt, output, order, step, kmin, kmax, kstep):
    """Solve the spectrum and print (mode, kappa, ratio) rows."""
    base_mode = _parse_mode(base)
    prof = _resolve_profile(profile)
    if not 0 <= mmax <= 10 or not 0 <= cmax <= 5:
        raise _config_error("mmax must lie in [0, 10] and cmax in [0, 5]")
    if base_mode.diameters > mmax or base_mode.circles > cmax:
        raise _config_error(f"base mode {base_mode} lies outside mmax/cmax")
    if base_value <= 0:
        raise _config_error("base value must be positive")
    config = _search_config(step, int(order), kmin, kmax, kstep)
    _validate_search(config, prof)
    try:
        results = eigen_spectrum(prof, mmax, cmax, config)
    except (SolverError, IntegrationError) as err:
        click.echo(f"solver failure: {err}", err=True)
        sys.exit(EXIT_SOLVER)
    table = ratio_table(results, base_mode, base_value)
    _write(_render_spectrum(table, fmt), output)


@cli.command()
@click.argument("m", type=int)
@click.argument("kprime", type=float)
@_profile_option
@_output_option
@_order_option
@_step_option
@click.option("--rstart", type=float, default=1e-4, show_default=True, help="Start radius of the march.")
def trajectory(m, kprime, profile, output, order, step, rstart):
    """Integrate one trial shot and write CSV rows r,R,dR."""
    prof = _resolve_profile(profile)
    if m < 0:
        raise _config_error("m must be non-negative")
    if kprime <= 0:
        raise _config_error("kprime must be positive")
    if not 0 < rstart < prof.radius:
        raise _config_error(f"rstart must lie in (0, {prof.radius})")
    span = prof.radius - rstart
    if not 0 < step <= span / 100:
        raise _config_error(f"step must lie in (0, {span / 100:g}]")
    try:
        init = initial_conditions(m, kprime, prof, rstart)
        traj = integrate(m, kprime, prof, rstart, step, init, order=int(order))
    except IntegrationError as err:
        click.echo(f"solver failure: {err}", err=True)
        sys.exit(EXIT_SOLVER)
    _write(traj.to_csv(), output)


@cli.command()
@_format_option
@_output_option
@_order_option
@_step_option
def report(fmt, output, order, step):
    """Reproduce the published reference table for the built-in profiles."""
    config = _search_config(step, int(order), 0.1, 40.0, 0.05)
    try:
        rep = build_report(config)
    except (SolverError, IntegrationError) as err:
        click.echo(f"solver failure: {err}", err=True)
        sys.exit(EXIT_SOLVER)
    if fmt == "text":
        _write(render_report(rep), output)
        return
    rows = [
        {
            "diameters": row.mode.diameters,
            "circles": row.mode.circles,
            "oracle_unloaded": row.oracle_unloaded,
            "computed_unloaded": row.computed_unloaded,
            "continuous": row.continuous,
            "rings": row.rings,
            "target": row.target,
        }
        for row in rep.rows
    ]
    if fmt == "json":
        payload = {
            "rows": rows,
            "fundamental_continuous": rep.fundamental_continuous,
            "fundamental_rings": rep.fundamental_rings,
            "audibility": list(rep.audibility_lines),
            "flags": list(rep.flagged),
        }
        _write(json.dumps(payload, indent=2) + "\n", output)
        return
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    _write(buf.getvalue(), output)


@cli.command(name="tune")
@click.option("--spec", default=None, help="Tune-problem JSON file; defaults to the built-in problem.")
@click.option(
    "--template",
    type=click.Choice(["continuous_log_exp", "step_rings"]),
    default="continuous_log_exp",
    show_default=True,
    help="Built-in problem to use when no --spec is given.",
)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--budget", type=int, default=None, help="Override the problem's evaluation budget.")
@click.option("--output", default="tuned-profile.json", show_default=True, help="Profile file to write.")
def tune_cmd(spec, template, seed, budget, output):
    """Search loading parameters that make the overtones harmonic."""
    if spec is not None:
        path = Path(spec)
        if not path.exists():
            raise _config_error(f"tune spec {spec!r} does not exist")
        try:
            problem = load_tune_spec(path)
        except (ValueError, KeyError, json.JSONDecodeError) as err:
            raise _config_error(f"invalid tune spec {spec}: {err}") from None
    else:
        factory = default_continuous_problem if template == "continuous_log_exp" else default_rings_problem
        problem = factory()
    if budget is not None:
        if budget < 50:
            raise _config_error("budget must be at least 50 evaluations")
        problem = dataclasses.replace(problem, budget=budget)
    result = tune(problem, seed=seed)
    profile = problem.build_profile(result.params)
    dump_profile(profile, output)
    click.echo(f"best objective {result.value:.6f} after {result.evaluations} evaluations")
    for name, value in result.named_params(problem).items():
        click.echo(f"  {name} = {value:.6g}")
    if result.budget_exhausted:
        click.echo("note: evaluation budget exhausted; result is best-so-far", err=True)
    click.echo(f"profile written to {output}")


@cli.command(name="profile-dump")
@_profile_option
@click.option("--count", type=int, default=201, show_default=True, help="Number of samples.")
@_format_option
@_output_option
def profile_dump(profile, count, fmt, output):
    """Sample a density profile as (r, rho) pairs."""
    prof = _resolve_profile(profile)
    if count < 2:
        raise _config_error("count must be at least 2")
    pairs = prof.samples(count)
    if fmt == "json":
        payload = [{"r": r, "rho": rho} for r, rho in pairs]
        _write(json.dumps(payload, indent=2) + "\n", output)
        return
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["r", "rho"])
        for r, rho in pairs:
            writer.writerow([repr(r), repr(rho)])
        _write(buf.getvalue(), output)
        return
    lines = [f"{'r':>10} {'rho':>12}"] + [f"{r:10.6f} {rho:12.6f}" for r, rho in pairs]
    _write("\n".join(lines) + "\n", output)


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
