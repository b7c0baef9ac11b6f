"""Construct command for building a pair from its parameters."""

from __future__ import annotations

import json
from pathlib import Path
from typing import NoReturn, get_args

import click
from rich.console import Console

from rczcp.config import ConstructionJob, RczcpConfig, RunConfig
from rczcp.construction import (
    ConstructionCheckError,
    ConstructionParams,
    ParameterValidationError,
    Partition2,
    construct_rczcp,
)
from rczcp.correlation import ZeroTest

console = Console(stderr=True)

EXIT_FAILED = 1
EXIT_USAGE = 2

_PARAMETER_FLAGS = ("n", "nu", "pi", "k1", "k2", "r1", "r2")


def parse_int_list(
    ctx: click.Context | None, param: click.Parameter | None, value: str | None
) -> list[int] | None:
    """Click callback turning ``"1,3,2"`` into ``[1, 3, 2]``."""
    if value is None:
        return None
    try:
        return [int(part) for part in value.split(",") if part.strip()]
    except ValueError as e:
        raise click.BadParameter(f"expected comma-separated integers, got '{value}'") from e


def fail(ctx: click.Context, message: str, code: int = EXIT_USAGE) -> NoReturn:
    """Print an error line and leave with ``code``."""
    console.print(f"[red]Error:[/red] {message}")
    ctx.exit(code)


def load_settings(ctx: click.Context, config: Path | None) -> RunConfig:
    """Run settings from the 'settings' section of ``config``, or the defaults."""
    if config is None:
        return RunConfig()
    try:
        return RczcpConfig.from_yaml(config).settings
    except (FileNotFoundError, ValueError) as e:
        fail(ctx, str(e))


def _save_job(
    ctx: click.Context, path: Path, name: str, params: ConstructionParams, force: bool
) -> None:
    try:
        rczcp_config = RczcpConfig.from_yaml(path) if path.exists() else RczcpConfig(jobs={})
        replaced = rczcp_config.add_or_update_job(ConstructionJob.from_params(name, params), force)
    except (FileNotFoundError, ValueError) as e:
        fail(ctx, str(e))
    rczcp_config.save_to_yaml(path)
    verb = "Replaced" if replaced else "Saved"
    console.print(f"[dim]{verb} job '{name}' in {path}[/dim]")


def _params_from_config(
    ctx: click.Context, config: Path, job: str | None
) -> tuple[ConstructionParams, RunConfig]:
    try:
        rczcp_config = RczcpConfig.from_yaml(config)
        result = rczcp_config.get_job_or_auto_detect(job)
    except (FileNotFoundError, ValueError) as e:
        fail(ctx, str(e))
    if not result:
        if job:
            console.print(f"[dim]Available jobs: {', '.join(rczcp_config.jobs)}[/dim]")
            fail(ctx, f"Job '{job}' not found in config")
        fail(ctx, "Config file contains no jobs")
    construction_job, job_name = result
    if job is None:
        console.print(f"[dim]Auto-detected job: {job_name}[/dim]")
    return construction_job.to_params(), rczcp_config.settings


@click.command()
@click.option("--config", type=click.Path(exists=True, path_type=Path), help="YAML job file")
@click.option("--job", "-j", type=str, default=None, help="Job name (auto-detected if only one)")
@click.option("--n", "n", type=int, help="Number of variables (n >= 4)")
@click.option("--nu", type=int, help="Truncation parameter (0 <= nu <= n-3)")
@click.option("--pi", callback=parse_int_list, help="Permutation of 1..n-2, e.g. 1,3,2")
@click.option("--k1", type=int, help="Root order attached to R_k1")
@click.option("--k2", type=int, help="Root order attached to R_k2")
@click.option("--r1", callback=parse_int_list, help="Variables in R_k1, e.g. 1,4")
@click.option("--r2", callback=parse_int_list, help="Variables in R_k2, e.g. 2,3,5")
@click.option(
    "--coefficients",
    "-c",
    callback=parse_int_list,
    help="Coefficients c_0..c_{n-1} (default: all zero)",
)
@click.option(
    "--output", "-o", type=click.Path(path_type=Path), help="Write pair JSON here instead of stdout"
)
@click.option("--csv", "csv_path", type=click.Path(path_type=Path), help="Also write fP/gP CSV")
@click.option(
    "--check/--no-check",
    default=True,
    help="Verify the pair at its claimed Z before writing it (default: check)",
)
@click.option("--tolerance", type=float, default=None, help="Numeric zero tolerance for the check")
@click.option(
    "--zero-test",
    type=click.Choice(get_args(ZeroTest)),
    default=None,
    help="How the check tests correlation sums for zero (default: auto)",
)
@click.option(
    "--save-config",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Store the parameters as job --job in this YAML file",
)
@click.option("--force", is_flag=True, default=False, help="Replace an existing job when saving")
@click.pass_context
def construct(
    ctx: click.Context,
    config: Path | None,
    job: str | None,
    n: int | None,
    nu: int | None,
    pi: list[int] | None,
    k1: int | None,
    k2: int | None,
    r1: list[int] | None,
    r2: list[int] | None,
    coefficients: list[int] | None,
    output: Path | None,
    csv_path: Path | None,
    check: bool,
    tolerance: float | None,
    zero_test: ZeroTest | None,
    save_config: Path | None,
    force: bool,
) -> None:
    """Build an RCZCP from its parameters and print it as JSON.

    Parameters come either from flags or from a job in a YAML file. The
    summary line "(N, Z)-RCZCP over q=Q" goes to stderr.

    Examples:
        # Build a length-20 pair over Z_6
        rczcp construct --n 5 --nu 1 --pi 1,3,2 --k1 2 --k2 3 --r1 1,4 --r2 2,3,5 -c 4,2,3,0,5

        # Build from a job file
        rczcp construct --config jobs.yaml --job example1 -o pair.json

        # Keep the parameters for later
        rczcp construct --n 4 --nu 0 --pi 2,1 --k1 4 --k2 1 --r1 1 --r2 2,3,4 \
            --save-config jobs.yaml --job quaternary
    """
    flags = {"n": n, "nu": nu, "pi": pi, "k1": k1, "k2": k2, "r1": r1, "r2": r2}
    settings = RunConfig()
    if config is not None:
        given = [f"--{name}" for name, value in flags.items() if value is not None]
        if given or coefficients is not None:
            raise click.UsageError(f"--config cannot be combined with {', '.join(given) or '-c'}")
        params, settings = _params_from_config(ctx, config, job)
    else:
        missing = [f"--{name}" for name in _PARAMETER_FLAGS if flags[name] is None]
        if missing:
            raise click.UsageError(f"Missing option(s): {', '.join(missing)}")
        assert n is not None and nu is not None and pi is not None
        assert k1 is not None and k2 is not None and r1 is not None and r2 is not None
        params = ConstructionParams(
            n=n,
            nu=nu,
            pi=tuple(pi),
            coefficients=tuple(coefficients) if coefficients is not None else (0,) * n,
            partition=Partition2.of(k1, k2, r1, r2),
        )

    if save_config is not None and job is None:
        raise click.UsageError("--save-config needs --job to name the saved job")
    if job is not None and config is None and save_config is None:
        raise click.UsageError("--job needs --config or --save-config")
    try:
        settings = settings.override(tolerance=tolerance, zero_test=zero_test)
    except ValueError as e:
        fail(ctx, str(e))

    try:
        pair = construct_rczcp(
            params,
            check=check,
            zero_test=settings.zero_test,
            tolerance=settings.tolerance,
            max_n=settings.max_n,
        )
    except ParameterValidationError as e:
        for violation in e.violations:
            console.print(f"[red]Error:[/red] {violation}")
        ctx.exit(EXIT_USAGE)
    except ConstructionCheckError as e:
        fail(ctx, str(e), EXIT_FAILED)

    document = json.dumps(pair.to_dict(), indent=2)
    if output is not None:
        output.write_text(document + "\n", encoding="utf-8")
        console.print(f"[dim]Wrote pair to {output}[/dim]")
    else:
        click.echo(document)

    if csv_path is not None:
        with open(csv_path, "w", encoding="utf-8", newline="") as fh:
            pair.write_csv(fh)
        console.print(f"[dim]Wrote CSV to {csv_path}[/dim]")

    if save_config is not None:
        assert job is not None
        _save_job(ctx, save_config, job, params, force)

    mark = "[green]✓[/green] " if check else ""
    console.print(f"{mark}{pair.summary()}")
