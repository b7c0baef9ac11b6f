"""Verify and profile commands for pair files."""

from __future__ import annotations

import io
import json
from pathlib import Path
from typing import Any, get_args

import click
from rich.console import Console
from rich.table import Table

from rczcp.boolean import MAX_VARIABLES, ModQSequence
from rczcp.cli_construct import EXIT_FAILED, fail, load_settings
from rczcp.construction import RczcpPair
from rczcp.correlation import (
    ZeroTest,
    aacf_sum_tallies,
    accf_sym_sum_tallies,
    correlation_profile,
    exact_squared_magnitude,
    max_zcz,
    verify_czcp,
    write_profile_csv,
)

console = Console(stderr=True)

# Accepted key pairs, in order of preference
_PAIR_KEYS = (("fP", "gP"), ("x", "y"))


def _exponents(key: str, value: Any) -> tuple[int, ...]:
    if not isinstance(value, list) or not all(
        isinstance(e, int) and not isinstance(e, bool) for e in value
    ):
        raise ValueError(f"'{key}' must be a list of integer exponents")
    return tuple(value)


def load_pair(path: Path, max_n: int = MAX_VARIABLES) -> tuple[ModQSequence, ModQSequence]:
    """Read a pair file written by ``construct`` (or any JSON with ``q``, ``x`` and ``y``).

    Files carrying ``params`` are rebuilt through :meth:`RczcpPair.from_dict`
    and must hold the sequences those parameters produce.

    Raises:
        ValueError: If the file is not a pair of equal-length q-ary sequences
    """
    try:
        data: Any = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ValueError(f"{path.name} is not valid JSON: {e}") from e
    if not isinstance(data, dict) or "q" not in data:
        raise ValueError(f"{path.name} must be a JSON object with a 'q' field")
    if not isinstance(data["q"], int) or isinstance(data["q"], bool):
        raise ValueError(f"'q' must be an integer, got {data['q']!r}")
    for first, second in _PAIR_KEYS:
        if first in data and second in data:
            x_exps = _exponents(first, data[first])
            y_exps = _exponents(second, data[second])
            if first == "fP" and "params" in data:
                pair = RczcpPair.from_dict(data, max_n)
                return pair.f_p, pair.g_p
            x = ModQSequence(q=data["q"], exps=x_exps)
            y = ModQSequence(q=data["q"], exps=y_exps)
            if len(x) != len(y):
                raise ValueError(f"Pair sequences differ in length: {len(x)} vs {len(y)}")
            return x, y
    raise ValueError(f"{path.name} must hold a pair of sequences ('fP'/'gP' or 'x'/'y')")


def _square(value: int | None) -> str:
    return "irrational" if value is None else str(value)


def _load_or_fail(
    ctx: click.Context, path: Path, max_n: int
) -> tuple[ModQSequence, ModQSequence]:
    try:
        return load_pair(path, max_n)
    except ValueError as e:
        fail(ctx, str(e))


@click.command()
@click.argument("pair_file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--z", "z", type=int, default=None, help="ZCZ width to check (default: largest)")
@click.option("--config", type=click.Path(exists=True, path_type=Path), help="YAML settings file")
@click.option("--tolerance", type=float, default=None, help="Numeric zero tolerance")
@click.option(
    "--zero-test",
    type=click.Choice(get_args(ZeroTest)),
    default=None,
    help="How correlation sums are tested for zero (default: auto)",
)
@click.option("--output", "-o", type=click.Path(path_type=Path), help="Write verdict JSON here")
@click.pass_context
def verify(
    ctx: click.Context,
    pair_file: Path,
    z: int | None,
    config: Path | None,
    tolerance: float | None,
    zero_test: ZeroTest | None,
    output: Path | None,
) -> None:
    """Check a pair against the cross Z-complementary conditions.

    Exits 0 when the pair passes at --z (or has some zone of width at least
    1 when --z is omitted), 1 when it fails and 2 on bad input.

    Arguments:
        PAIR_FILE: JSON file written by `rczcp construct`

    Examples:
        rczcp verify pair.json --z 5
        rczcp verify pair.json --zero-test numeric --tolerance 1e-9
        rczcp verify pair.json --config jobs.yaml
    """
    try:
        settings = load_settings(ctx, config).override(tolerance=tolerance, zero_test=zero_test)
    except ValueError as e:
        fail(ctx, str(e))
    x, y = _load_or_fail(ctx, pair_file, settings.max_n)

    if z is None:
        verdict = max_zcz(x, y, settings.zero_test, settings.tolerance)
    else:
        try:
            verdict = verify_czcp(x, y, z, settings.zero_test, settings.tolerance)
        except ValueError as e:
            fail(ctx, str(e))

    document = json.dumps(verdict.to_dict(), indent=2)
    if output is not None:
        output.write_text(document + "\n", encoding="utf-8")
    else:
        click.echo(document)

    ratio = f"{verdict.ratio.numerator}/{verdict.ratio.denominator}"
    detail = f"N={verdict.N}, Z_achieved={verdict.Z_achieved}, ratio {ratio}"
    if verdict.perfect:
        detail += ", perfect"
    if verdict.passed:
        target = f"Z={z}" if z is not None else "Z>=1"
        console.print(f"[green]✓ Pass at {target}[/green] [dim]({detail})[/dim]")
        return

    console.print(f"[red]✗ Fail[/red] [dim]({detail})[/dim]")
    if verdict.c1_violations:
        console.print(f"[dim]  C1 violated at tau = {verdict.c1_violations}[/dim]")
    if verdict.c2_violations:
        console.print(f"[dim]  C2 violated at tau = {verdict.c2_violations}[/dim]")
    ctx.exit(EXIT_FAILED)


@click.command()
@click.argument("pair_file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--output", "-o", type=click.Path(path_type=Path), help="Write profile CSV here")
@click.option("--config", type=click.Path(exists=True, path_type=Path), help="YAML settings file")
@click.option(
    "--exact-squares",
    is_flag=True,
    default=False,
    help="Also list the exact squared magnitudes of both sums",
)
@click.pass_context
def profile(
    ctx: click.Context,
    pair_file: Path,
    output: Path | None,
    config: Path | None,
    exact_squares: bool,
) -> None:
    """Write |AACF sum| and |ACCF sum| for every shift as CSV.

    Arguments:
        PAIR_FILE: JSON file written by `rczcp construct`

    Examples:
        rczcp profile pair.json -o profile.csv
        rczcp profile pair.json --exact-squares
    """
    x, y = _load_or_fail(ctx, pair_file, load_settings(ctx, config).max_n)
    rows = correlation_profile(x, y)

    buffer = io.StringIO()
    write_profile_csv(rows, buffer)
    if output is not None:
        output.write_text(buffer.getvalue(), encoding="utf-8")
        console.print(f"[dim]Wrote {len(rows)} rows to {output}[/dim]")
    else:
        click.echo(buffer.getvalue(), nl=False)

    if exact_squares:
        c1 = aacf_sum_tallies(x, y)
        c2 = accf_sym_sum_tallies(x, y)
        table = Table(title="Exact squared magnitudes", show_header=True)
        table.add_column("tau", justify="right")
        table.add_column("|AACF sum|^2", justify="right")
        table.add_column("|ACCF sum|^2", justify="right")
        for tau in range(len(x)):
            a = exact_squared_magnitude(c1[tau], x.q)
            b = exact_squared_magnitude(c2[tau], x.q)
            table.add_row(str(tau), _square(a), _square(b))
        console.print(table)
