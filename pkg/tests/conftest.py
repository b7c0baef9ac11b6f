"""Pytest configuration and shared fixtures."""

import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from rczcp.construction import ConstructionParams, Partition2, construct_rczcp


@pytest.fixture
def cli_runner() -> CliRunner:
    """Provide a Click CLI test runner.

    Returns:
        CliRunner instance for testing CLI commands
    """
    return CliRunner()


@pytest.fixture
def example1_params() -> ConstructionParams:
    """Parameters of the first worked example: a (20, 5)-RCZCP over Z_6."""
    return ConstructionParams(
        n=5,
        nu=1,
        pi=(1, 3, 2),
        coefficients=(4, 2, 3, 0, 5),
        partition=Partition2.of(2, 3, [1, 4], [2, 3, 5]),
    )


@pytest.fixture
def example2_params() -> ConstructionParams:
    """The first example with the partition R_2 = {1, 3}, R_3 = {2, 4, 5}."""
    return ConstructionParams(
        n=5,
        nu=1,
        pi=(1, 3, 2),
        coefficients=(4, 2, 3, 0, 5),
        partition=Partition2.of(2, 3, [1, 3], [2, 4, 5]),
    )


@pytest.fixture
def example1_pair_file(tmp_path: Path, example1_params: ConstructionParams) -> Path:
    """The first example's pair written as construct would write it."""
    pair_file = tmp_path / "example1.json"
    pair_file.write_text(json.dumps(construct_rczcp(example1_params).to_dict()))
    return pair_file
