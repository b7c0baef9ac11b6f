"""Command-line interface for rczcp."""

import logging

import click
from rich.console import Console
from rich.logging import RichHandler

from rczcp import __version__
from rczcp.cli_census import census, table
from rczcp.cli_construct import construct
from rczcp.cli_search import search
from rczcp.cli_verify import profile, verify


@click.group()
@click.version_option(version=__version__)
@click.option("--verbose", "-v", is_flag=True, default=False, help="Show debug logging")
@click.pass_context
def main(ctx: click.Context, verbose: bool) -> None:
    """Construct and verify q-ary root cross Z-complementary pairs.

    This application builds cross Z-complementary pairs from generalized
    Boolean functions, verifies their correlation properties and
    reproduces the construction's counting formulas.
    """
    ctx.ensure_object(dict)
    if verbose:
        logging.basicConfig(
            level=logging.DEBUG,
            format="%(message)s",
            handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
            force=True,
        )


# Register commands
main.add_command(construct)
main.add_command(verify)
main.add_command(profile)
main.add_command(census)
main.add_command(table)
main.add_command(search)
