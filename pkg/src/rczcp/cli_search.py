"""Search command for exhaustive CZCP enumeration at small lengths."""

from __future__ import annotations

from pathlib import Path

import click
from rich.console import Console

from rczcp.cli_construct import fail, load_settings
from rczcp.oracle import SearchSpec, write_search_jsonl

console = Console(stderr=True)


@click.command()
@click.option("--q", "q", type=int, required=True, help="Alphabet size")
@click.option("--length", "length", type=int, required=True, help="Sequence length N")
@click.option("--z", "z", type=int, required=True, help="ZCZ width to require")
@click.option(
    "--symmetry-reduction",
    is_flag=True,
    default=False,
    help="Fix the first element of x to 0 (declared in every output line)",
)
@click.option(
    "--workers", type=click.IntRange(min=1), default=None, help="Worker processes (default: 1)"
)
@click.option("--config", type=click.Path(exists=True, path_type=Path), help="YAML settings file")
@click.option("--output", "-o", type=click.Path(path_type=Path), help="Write JSON lines here")
@click.pass_context
def search(
    ctx: click.Context,
    q: int,
    length: int,
    z: int,
    symmetry_reduction: bool,
    workers: int | None,
    config: Path | None,
    output: Path | None,
) -> None:
    """List every q-ary pair of the given length that is a (length, Z)-CZCP.

    Results stream as JSON lines, one pair per line. The search visits
    q^(2N) candidates and refuses anything above 10^8.

    Examples:
        rczcp search --q 2 --length 4 --z 2
        rczcp search --q 3 --length 5 --z 2 --symmetry-reduction -o hits.jsonl
        rczcp search --q 2 --length 8 --z 3 --workers 4
    """
    settings = load_settings(ctx, config).override(workers=workers)
    try:
        spec = SearchSpec(q=q, N=length, Z=z, symmetry_reduction=symmetry_reduction)
    except ValueError as e:
        fail(ctx, str(e))

    console.print(f"[dim]Searching {spec.candidates:,} candidate pairs...[/dim]")
    if output is not None:
        with open(output, "w", encoding="utf-8") as fh:
            found = write_search_jsonl(spec, fh, settings.workers)
    else:
        stdout = click.get_text_stream("stdout")
        found = write_search_jsonl(spec, stdout, settings.workers)
        stdout.flush()

    console.print(f"[green]✓ Found {found:,} pair(s)[/green]")
