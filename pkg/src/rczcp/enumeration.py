"""Counting formulas, the parameter-space census and the comparison table."""

from __future__ import annotations

import csv
import itertools
import logging
import math
from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, TextIO

import numpy as np
from sympy.functions.combinatorial.numbers import stirling

from rczcp.construction import (
    ConstructionParams,
    Partition2,
    admissible_permutations,
    best_permutation,
    claimed_N,
    construct_rczcp,
    ordered_partitions,
)
from rczcp.correlation import DEFAULT_TOLERANCE, ZeroTest, max_zcz, verify_czcp

logger = logging.getLogger(__name__)

DEFAULT_SEED = 2023
FULL_SWEEP_LIMIT = 10**7
DEFAULT_SAMPLES = 1000
DEFAULT_MAX_PARAMETER_POINTS = 2_000_000

# Root orders (k1, k2) used for the sample construction of each alphabet in the table
SAMPLE_ROOT_ORDERS = {2: (1, 1), 4: (4, 1), 6: (2, 3)}

REFERENCE_RATIOS = {(4, 0): "2/5", (4, 1): "≈2/3", (5, 0): "4/9", (5, 1): "1/2", (5, 2): "≈2/3"}

TABLE_HEADER = (
    "n",
    "stirling",
    "q",
    "nu",
    "huang_available",
    "adhikary_available",
    "proposed_available",
    "length",
    "z_claimed",
    "z_achieved",
    "ratio",
    "reference_ratio",
    "matches_reference",
)


class CensusTooLargeError(ValueError):
    """Raised when a census would visit more parameter points than allowed."""


def _check_n_nu(n: int, nu: int) -> None:
    if n < 4:
        raise ValueError(f"n must be at least 4, got {n}")
    if not 0 <= nu <= n - 3:
        raise ValueError(f"nu must satisfy 0 <= nu <= n-3 = {n - 3}, got {nu}")


def stirling2_two_blocks(n: int) -> int:
    """Number of ways to split an ``n``-set into two non-empty unordered blocks.

    Raises:
        ValueError: If ``n < 2``
    """
    if n < 2:
        raise ValueError(f"S(n;2) needs n >= 2, got {n}")
    return int(stirling(n, 2))


def count_proposed(n: int, q: int, nu: int) -> int:
    """``S(n;2) * (n-nu-2)! * q**n`` sequences from the partition construction."""
    _check_n_nu(n, nu)
    if q < 2:
        raise ValueError(f"q must be at least 2, got {q}")
    return stirling2_two_blocks(n) * math.factorial(n - nu - 2) * q**n


def count_huang(n: int, nu: int) -> int:
    """``(n-nu-2)! * 2**n`` binary sequences from the truncated Golay-pair construction."""
    _check_n_nu(n, nu)
    return math.factorial(n - nu - 2) * 2**n


def count_adhikary(n: int, q: int) -> int:
    """``(n-2)! * q**(2(n-2))`` sequences from the earlier q-ary construction."""
    if n < 3:
        raise ValueError(f"n must be at least 3, got {n}")
    if q < 2:
        raise ValueError(f"q must be at least 2, got {q}")
    return math.factorial(n - 2) * q ** (2 * (n - 2))


@dataclass
class CountReport:
    """Formula counts next to what a census actually produced."""

    n: int
    q: int
    nu: int
    k1: int
    k2: int
    formula_count_proposed: int
    formula_count_huang: int
    formula_count_adhikary: int
    census_parameter_points: int = 0
    census_parameter_points_unordered: int = 0
    census_distinct_sequences: int = 0
    census_distinct_pairs: int = 0
    coefficient_vectors: int = 0
    sampled: bool = False
    seed: int = DEFAULT_SEED
    reversal_identical_pairs: int = 0
    reversal_comparisons: int = 0
    all_verified: bool = True
    failures: list[dict[str, Any]] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "q": self.q,
            "nu": self.nu,
            "k1": self.k1,
            "k2": self.k2,
            "formula_count_proposed": self.formula_count_proposed,
            "formula_count_huang": self.formula_count_huang,
            "formula_count_adhikary": self.formula_count_adhikary,
            "census_parameter_points": self.census_parameter_points,
            "census_parameter_points_unordered": self.census_parameter_points_unordered,
            "census_distinct_sequences": self.census_distinct_sequences,
            "census_distinct_pairs": self.census_distinct_pairs,
            "coefficient_vectors": self.coefficient_vectors,
            "sampled": self.sampled,
            "seed": self.seed,
            "reversal_identical_pairs": self.reversal_identical_pairs,
            "reversal_comparisons": self.reversal_comparisons,
            "all_verified": self.all_verified,
            "failures": self.failures,
        }


def coefficient_vectors(
    n: int, q: int, coefficient_cap: int | None = None, seed: int = DEFAULT_SEED
) -> tuple[list[tuple[int, ...]], bool]:
    """Coefficient vectors ``(c_0..c_{n-1})`` a census visits.

    The full ``q**n`` sweep is used when it fits under the cap (or under
    ``FULL_SWEEP_LIMIT`` when no cap is given); otherwise exactly that many
    distinct vectors are drawn uniformly with ``seed``.

    Returns:
        Tuple of (vectors in lexicographic order, whether they were sampled)
    """
    total = q**n
    limit = FULL_SWEEP_LIMIT if coefficient_cap is None else coefficient_cap
    if coefficient_cap is not None and coefficient_cap < 1:
        raise ValueError(f"coefficient_cap must be positive, got {coefficient_cap}")
    if total <= limit:
        return list(itertools.product(range(q), repeat=n)), False

    samples = DEFAULT_SAMPLES if coefficient_cap is None else coefficient_cap
    rng = np.random.default_rng(seed)
    drawn: dict[tuple[int, ...], None] = {}
    # total > samples here, so redrawing duplicates terminates
    while len(drawn) < samples:
        for row in rng.integers(0, q, size=(samples - len(drawn), n)):
            drawn.setdefault(tuple(int(c) for c in row))
    logger.debug(f"Sampled {samples} distinct coefficient vectors of {total} (seed={seed})")
    return sorted(drawn), True


@dataclass
class _ChunkResult:
    pi: tuple[int, ...]
    partition_index: int
    f_keys: list[bytes]
    g_keys: list[bytes]
    failures: list[dict[str, Any]]


def _census_chunk(
    task: tuple[
        int, int, tuple[int, ...], int, Partition2, list[tuple[int, ...]], ZeroTest, float
    ],
) -> _ChunkResult:
    n, nu, pi, partition_index, partition, coeffs, zero_test, tolerance = task
    f_keys, g_keys, failures = [], [], []
    for c in coeffs:
        params = ConstructionParams(n=n, nu=nu, pi=pi, coefficients=c, partition=partition)
        pair = construct_rczcp(params)
        f_keys.append(pair.f_p.canonical_key())
        g_keys.append(pair.g_p.canonical_key())
        verdict = verify_czcp(pair.f_p, pair.g_p, pair.Z_claimed, zero_test, tolerance)
        if not verdict.passed:
            failures.append({"params": params.to_dict(), "verdict": verdict.to_dict()})
    return _ChunkResult(pi, partition_index, f_keys, g_keys, failures)


def census(
    n: int,
    k1: int,
    k2: int,
    nu: int,
    coefficient_cap: int | None = None,
    seed: int = DEFAULT_SEED,
    workers: int = 1,
    max_parameter_points: int = DEFAULT_MAX_PARAMETER_POINTS,
    zero_test: ZeroTest = "auto",
    tolerance: float = DEFAULT_TOLERANCE,
) -> CountReport:
    """Construct and verify every pair in a parameter slice and count what comes out.

    Visits every admissible ``pi``, every ordered two-block partition and the
    coefficient vectors chosen by :func:`coefficient_vectors`. Pairs and
    single sequences are deduplicated by exact exponent-vector equality.

    Args:
        n: Number of variables
        k1: Root order attached to the first block
        k2: Root order attached to the second block
        nu: Truncation parameter
        coefficient_cap: Maximum number of coefficient vectors (None = automatic)
        seed: Seed for coefficient sampling
        workers: Worker processes (1 = run in-process)
        max_parameter_points: Refuse slices larger than this
        zero_test: Zero test used by the verifier
        tolerance: Numeric tolerance used by the verifier

    Raises:
        ValueError: If the parameters are out of range
        CensusTooLargeError: If the slice exceeds ``max_parameter_points``
    """
    _check_n_nu(n, nu)
    if k1 < 1 or k2 < 1:
        raise ValueError(f"root orders must be positive (k1={k1}, k2={k2})")
    q = math.lcm(2, k1, k2)
    report = CountReport(
        n=n,
        q=q,
        nu=nu,
        k1=k1,
        k2=k2,
        formula_count_proposed=count_proposed(n, q, nu),
        formula_count_huang=count_huang(n, nu),
        formula_count_adhikary=count_adhikary(n, q),
        seed=seed,
    )

    perms = list(admissible_permutations(n, nu))
    partitions = list(ordered_partitions(n, k1, k2))
    coeffs, sampled = coefficient_vectors(n, q, coefficient_cap, seed)
    points = len(perms) * len(partitions) * len(coeffs)
    if points > max_parameter_points:
        raise CensusTooLargeError(
            f"Census of {points:,} parameter points exceeds the limit of "
            f"{max_parameter_points:,}; pass a smaller coefficient cap"
        )
    logger.debug(
        f"Census n={n} nu={nu} k=({k1},{k2}): {len(perms)} permutations x "
        f"{len(partitions)} partitions x {len(coeffs)} coefficient vectors"
    )

    tasks = [
        (n, nu, pi, index, partition, coeffs, zero_test, tolerance)
        for pi in perms
        for index, partition in enumerate(partitions)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_census_chunk, tasks))
    else:
        chunks = [_census_chunk(task) for task in tasks]

    sequences: set[bytes] = set()
    pairs: set[tuple[bytes, bytes]] = set()
    by_point: dict[tuple[tuple[int, ...], int], list[tuple[bytes, bytes]]] = {}
    for chunk in chunks:
        chunk_pairs = list(zip(chunk.f_keys, chunk.g_keys))
        sequences.update(chunk.f_keys)
        sequences.update(chunk.g_keys)
        pairs.update(chunk_pairs)
        by_point[(chunk.pi, chunk.partition_index)] = chunk_pairs
        report.failures.extend(chunk.failures)

    unordered_partitions = sum(1 for p in partitions if 1 in p.r1)
    report.census_parameter_points = points
    report.census_parameter_points_unordered = len(perms) * unordered_partitions * len(coeffs)
    report.census_distinct_sequences = len(sequences)
    report.census_distinct_pairs = len(pairs)
    report.coefficient_vectors = len(coeffs)
    report.sampled = sampled
    report.all_verified = not report.failures

    admissible = set(perms)
    for pi in perms:
        reverse = tuple(reversed(pi))
        if reverse == pi or reverse not in admissible or reverse < pi:
            continue
        for index in range(len(partitions)):
            for ours, theirs in zip(by_point[(pi, index)], by_point[(reverse, index)]):
                report.reversal_comparisons += 1
                report.reversal_identical_pairs += ours == theirs

    if report.failures:
        logger.debug(f"Census found {len(report.failures)} failing parameter points")
    return report


@dataclass(frozen=True)
class TableRow:
    """One row of the comparison with earlier constructions."""

    n: int
    stirling: int
    q: int
    nu: int
    huang_available: bool
    adhikary_available: bool
    proposed_available: bool
    length: int
    Z_claimed: int
    Z_achieved: int
    ratio: Fraction
    reference_ratio: str | None
    matches_reference: bool | None

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "stirling": self.stirling,
            "q": self.q,
            "nu": self.nu,
            "huang_available": self.huang_available,
            "adhikary_available": self.adhikary_available,
            "proposed_available": self.proposed_available,
            "length": self.length,
            "z_claimed": self.Z_claimed,
            "z_achieved": self.Z_achieved,
            "ratio": f"{self.ratio.numerator}/{self.ratio.denominator}",
            "reference_ratio": self.reference_ratio,
            "matches_reference": self.matches_reference,
        }


def reference_ratio(n: int, nu: int) -> str | None:
    """The reference ratio for ``(n, nu)``; ``nu = n-3`` rows are shown as ``≈2/3``."""
    if (n, nu) in REFERENCE_RATIOS:
        return REFERENCE_RATIOS[(n, nu)]
    if nu == n - 3:
        return "≈2/3"
    return None


def _matches(ratio: Fraction, reference: str | None, n: int) -> bool | None:
    if reference is None:
        return None
    if reference.startswith("≈"):
        return abs(ratio - Fraction(2, 3)) <= Fraction(1, 2 ** (n - 2))
    return ratio == Fraction(reference)


def sample_params(n: int, q: int, nu: int) -> ConstructionParams:
    """Sample construction for a table row: best ``pi``, ``R_k1 = {1}``, zero coefficients."""
    if q in SAMPLE_ROOT_ORDERS:
        k1, k2 = SAMPLE_ROOT_ORDERS[q]
    elif q % 2 == 0:
        k1, k2 = q, 1
    else:
        raise ValueError(f"Alphabet size must be even, got q={q}")
    return ConstructionParams(
        n=n,
        nu=nu,
        pi=best_permutation(n, nu),
        coefficients=(0,) * n,
        partition=Partition2.of(k1, k2, [1], range(2, n + 1)),
    )


def comparison_table(n_values: Iterable[int], qs: Sequence[int] = (2, 4, 6)) -> list[TableRow]:
    """Rows of length and CZC ratio per ``(n, q, nu)``, checked against a sample construction."""
    rows = []
    for n in n_values:
        for q in qs:
            for nu in range(n - 2):
                params = sample_params(n, q, nu)
                pair = construct_rczcp(params)
                achieved = max_zcz(pair.f_p, pair.g_p).Z_achieved
                length = claimed_N(n, nu)
                ratio = Fraction(2 * params.Z_claimed, length)
                reference = reference_ratio(n, nu)
                rows.append(
                    TableRow(
                        n=n,
                        stirling=stirling2_two_blocks(n),
                        q=q,
                        nu=nu,
                        huang_available=q == 2,
                        adhikary_available=nu == 0,
                        proposed_available=True,
                        length=length,
                        Z_claimed=params.Z_claimed,
                        Z_achieved=achieved,
                        ratio=ratio,
                        reference_ratio=reference,
                        matches_reference=_matches(ratio, reference, n),
                    )
                )
    return rows


def _mark(flag: bool) -> str:
    return "√" if flag else "-"


def table_cells(row: TableRow) -> list[str]:
    """Display cells of a row, in ``TABLE_COLUMNS`` order."""
    return [
        str(row.n),
        str(row.stirling),
        str(row.q),
        str(row.nu),
        _mark(row.huang_available),
        _mark(row.adhikary_available),
        _mark(row.proposed_available),
        str(row.length),
        f"{row.ratio.numerator}/{row.ratio.denominator}",
        row.reference_ratio or "",
        "" if row.matches_reference is None else ("yes" if row.matches_reference else "NO"),
    ]


TABLE_COLUMNS = (
    "n",
    "S(n;2)",
    "q",
    "nu",
    "Huang",
    "Adhikary",
    "Proposed",
    "Length",
    "Ratio",
    "Reference",
    "Match",
)


def format_table_text(rows: list[TableRow]) -> str:
    """Aligned plain-text rendering, one line per row after a header."""
    cells = [list(TABLE_COLUMNS)] + [table_cells(row) for row in rows]
    widths = [max(len(line[i]) for line in cells) for i in range(len(TABLE_COLUMNS))]
    lines = ["  ".join(cell.rjust(width) for cell, width in zip(line, widths)) for line in cells]
    return "\n".join(line.rstrip() for line in lines) + "\n"


def write_table_csv(rows: list[TableRow], fh: TextIO) -> None:
    """Write rows as CSV with a ``TABLE_HEADER`` header."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(TABLE_HEADER)
    for row in rows:
        data = row.to_dict()
        writer.writerow(["" if data[key] is None else data[key] for key in TABLE_HEADER])
