"""Construct and verify q-ary root cross Z-complementary pairs.

This package provides both a CLI tool and a programmatic API for building
cross Z-complementary pairs from generalized Boolean functions, two roots
of unity and a two-block partition of the variables, checking their
correlation properties exactly, and counting what the construction yields.

CLI Usage:
    rczcp construct --n 5 --nu 1 --pi 1,3,2 --k1 2 --k2 3 --r1 1,4 --r2 2,3,5
    rczcp verify pair.json --z 5
    rczcp profile pair.json
    rczcp census --n 4 --nu 0 --k1 1 --k2 1
    rczcp table
    rczcp search --q 2 --length 4 --z 2

Programmatic Usage:
    from rczcp import ConstructionParams, Partition2, construct_rczcp, verify_czcp

    params = ConstructionParams(
        n=5,
        nu=1,
        pi=(1, 3, 2),
        coefficients=(4, 2, 3, 0, 5),
        partition=Partition2.of(2, 3, [1, 4], [2, 3, 5]),
    )
    pair = construct_rczcp(params)
    verdict = verify_czcp(pair.f_p, pair.g_p, pair.Z_claimed)
"""

__version__ = "0.1.0"

from rczcp.boolean import (
    GeneralizedBooleanFunction,
    ModQSequence,
    sequence_of,
    truncate,
)
from rczcp.config import ConstructionJob, RczcpConfig, RunConfig
from rczcp.construction import (
    ConstructionCheckError,
    ConstructionParams,
    ParameterValidationError,
    Partition2,
    RczcpPair,
    construct_rczcp,
)
from rczcp.correlation import CzcpVerdict, accf, correlation_profile, max_zcz, verify_czcp
from rczcp.enumeration import (
    CensusTooLargeError,
    CountReport,
    census,
    comparison_table,
    count_adhikary,
    count_huang,
    count_proposed,
    stirling2_two_blocks,
)
from rczcp.oracle import SearchSpec, SearchTooLargeError, exhaustive_search

__all__ = [
    "__version__",
    # Sequences
    "GeneralizedBooleanFunction",
    "ModQSequence",
    "sequence_of",
    "truncate",
    # Configuration
    "RczcpConfig",
    "ConstructionJob",
    "RunConfig",
    # Construction
    "ConstructionParams",
    "Partition2",
    "RczcpPair",
    "construct_rczcp",
    "ParameterValidationError",
    "ConstructionCheckError",
    # Correlation
    "accf",
    "correlation_profile",
    "verify_czcp",
    "max_zcz",
    "CzcpVerdict",
    # Enumeration
    "stirling2_two_blocks",
    "count_proposed",
    "count_huang",
    "count_adhikary",
    "census",
    "comparison_table",
    "CountReport",
    "CensusTooLargeError",
    # Oracle
    "SearchSpec",
    "exhaustive_search",
    "SearchTooLargeError",
]
