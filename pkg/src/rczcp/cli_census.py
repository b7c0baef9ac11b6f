"""Census and comparison-table commands."""

from __future__ import annotations

import io
import json
from pathlib import Path
from typing import get_args

import click
from rich.console import Console
from rich.table import Table

from rczcp.cli_construct import EXIT_FAILED, fail, load_settings
from rczcp.correlation import ZeroTest
from rczcp.enumeration import (
    TABLE_COLUMNS,
    CensusTooLargeError,
    CountReport,
    comparison_table,
    format_table_text,
    table_cells,
    write_table_csv,
)
from rczcp.enumeration import census as run_census

console = Console(stderr=True)


def _display_report(report: CountReport) -> None:
    table = Table(title=f"n={report.n}, nu={report.nu}, q={report.q}", show_header=True)
    table.add_column("Count", style="cyan")
    table.add_column("Value", justify="right")
    table.add_row("Proposed formula", f"{report.formula_count_proposed:,}")
    table.add_row("Huang et al. formula", f"{report.formula_count_huang:,}")
    table.add_row("Adhikary et al. formula", f"{report.formula_count_adhikary:,}")
    table.add_row("Parameter points (ordered)", f"{report.census_parameter_points:,}")
    table.add_row("Parameter points (1 in R_k1)", f"{report.census_parameter_points_unordered:,}")
    table.add_row("Distinct sequences", f"{report.census_distinct_sequences:,}")
    table.add_row("Distinct pairs", f"{report.census_distinct_pairs:,}")
    table.add_row(
        "Reversed-pi identical pairs",
        f"{report.reversal_identical_pairs:,} of {report.reversal_comparisons:,}",
    )
    console.print(table)

    sampling = "sampled" if report.sampled else "full sweep"
    console.print(
        f"[dim]{report.coefficient_vectors:,} coefficient vectors ({sampling}), "
        f"seed {report.seed}[/dim]"
    )


@click.command()
@click.option("--n", "n", type=int, required=True, help="Number of variables (n >= 4)")
@click.option("--nu", type=int, default=0, show_default=True, help="Truncation parameter")
@click.option("--k1", type=int, default=1, show_default=True, help="Root order of R_k1")
@click.option("--k2", type=int, default=1, show_default=True, help="Root order of R_k2")
@click.option(
    "--coefficient-cap",
    type=click.IntRange(min=1),
    default=None,
    help="Coefficient vectors per slice (default: full sweep up to 10^7, else 1000 samples)",
)
@click.option("--seed", type=int, default=None, help="Sampling seed (default: 2023)")
@click.option("--workers", type=click.IntRange(min=1), default=None, help="Worker processes")
@click.option("--tolerance", type=float, default=None, help="Numeric zero tolerance")
@click.option(
    "--zero-test",
    type=click.Choice(get_args(ZeroTest)),
    default=None,
    help="How correlation sums are tested for zero (default: auto)",
)
@click.option("--config", type=click.Path(exists=True, path_type=Path), help="YAML settings file")
@click.option("--output", "-o", type=click.Path(path_type=Path), help="Write report JSON here")
@click.pass_context
def census(
    ctx: click.Context,
    n: int,
    nu: int,
    k1: int,
    k2: int,
    coefficient_cap: int | None,
    seed: int | None,
    workers: int | None,
    tolerance: float | None,
    zero_test: ZeroTest | None,
    config: Path | None,
    output: Path | None,
) -> None:
    """Construct and verify every pair in a parameter slice and count them.

    The report lists the closed-form counts beside the number of parameter
    points visited and the distinct sequences and pairs they produced.
    Exits 1 if any constructed pair fails verification.

    Examples:
        rczcp census --n 5 --nu 0 --k1 1 --k2 1
        rczcp census --n 5 --k1 2 --k2 3 --coefficient-cap 200 --workers 4
        rczcp census --n 6 --k1 2 --k2 3 --config settings.yaml
    """
    try:
        settings = load_settings(ctx, config).override(
            coefficient_cap=coefficient_cap,
            seed=seed,
            workers=workers,
            tolerance=tolerance,
            zero_test=zero_test,
        )
    except ValueError as e:
        fail(ctx, str(e))
    if n > settings.max_n:
        fail(ctx, f"n must be at most {settings.max_n}, got {n}")
    try:
        report = run_census(
            n,
            k1,
            k2,
            nu,
            coefficient_cap=settings.coefficient_cap,
            seed=settings.seed,
            workers=settings.workers,
            zero_test=settings.zero_test,
            tolerance=settings.tolerance,
        )
    except (CensusTooLargeError, ValueError) as e:
        fail(ctx, str(e))

    document = json.dumps(report.to_dict(), indent=2)
    if output is not None:
        output.write_text(document + "\n", encoding="utf-8")
    else:
        click.echo(document)

    _display_report(report)
    if report.all_verified:
        console.print(f"[green]✓ All {report.census_parameter_points:,} pairs verified[/green]")
        return
    console.print(f"[red]✗ {len(report.failures)} pair(s) failed verification[/red]")
    ctx.exit(EXIT_FAILED)


@click.command()
@click.option(
    "--n",
    "n_values",
    type=int,
    multiple=True,
    default=(4, 5),
    show_default=True,
    help="Variable counts to tabulate (repeatable)",
)
@click.option(
    "--format",
    "output_format",
    type=click.Choice(["table", "text", "csv"]),
    default="table",
    show_default=True,
    help="Rich table, aligned plain text or CSV",
)
@click.option("--output", "-o", type=click.Path(path_type=Path), help="Write the table here")
@click.pass_context
def table(
    ctx: click.Context, n_values: tuple[int, ...], output_format: str, output: Path | None
) -> None:
    """Tabulate length and CZC ratio against the earlier constructions.

    Examples:
        rczcp table
        rczcp table --n 4 --n 5 --n 6 --format csv -o table.csv
    """
    try:
        rows = comparison_table(n_values)
    except ValueError as e:
        fail(ctx, str(e))

    if output_format == "csv":
        buffer = io.StringIO()
        write_table_csv(rows, buffer)
        text = buffer.getvalue()
    elif output_format == "text" or output is not None:
        text = format_table_text(rows)
    else:
        rendered = Table(title="Comparison with earlier constructions", show_header=True)
        for column in TABLE_COLUMNS:
            rendered.add_column(column, justify="right")
        for row in rows:
            rendered.add_row(*table_cells(row))
        Console().print(rendered)
        return

    if output is not None:
        output.write_text(text, encoding="utf-8")
        console.print(f"[dim]Wrote {len(rows)} rows to {output}[/dim]")
    else:
        click.echo(text, nl=False)
