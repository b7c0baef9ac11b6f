"""Brute-force cross-checks that share no code with the correlation module.

Correlations here are computed term by term from complex exponentials, the
CZCP search walks every candidate pair and set partitions are counted by
listing them.
"""

from __future__ import annotations

import cmath
import itertools
import json
import logging
from collections.abc import Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, TextIO

from rczcp.boolean import ModQSequence

logger = logging.getLogger(__name__)

SEARCH_CAP = 10**8
MAX_LISTED_PARTITIONS_N = 12


class SearchTooLargeError(ValueError):
    """Raised when an exhaustive search would exceed the candidate cap."""


def naive_accf(x: ModQSequence, y: ModQSequence, tau: int) -> complex:
    """``rho_{x,y}(tau)`` summed directly from ``exp(2 pi i (x_k - y_{k+tau}) / q)``."""
    if len(x) != len(y) or x.q != y.q:
        raise ValueError("Sequences must share length and alphabet size")
    N, q = len(x), x.q
    total = 0j
    if 0 <= tau < N:
        for k in range(N - tau):
            total += cmath.exp(2j * cmath.pi * (x.exps[k] - y.exps[k + tau]) / q)
    elif -N < tau < 0:
        for k in range(N + tau):
            total += cmath.exp(2j * cmath.pi * (x.exps[k - tau] - y.exps[k]) / q)
    return total


def naive_is_czcp(x: ModQSequence, y: ModQSequence, Z: int, tolerance: float = 1e-6) -> bool:
    """Whether ``(x, y)`` satisfies both CZCP conditions at ``Z``."""
    N = len(x)
    if not 1 <= Z <= N // 2:
        raise ValueError(f"Z={Z} out of range for N={N}")
    front = range(1, Z + 1)
    tail = range(N - Z, N)
    for tau in itertools.chain(front, tail):
        if abs(naive_accf(x, x, tau) + naive_accf(y, y, tau)) >= tolerance:
            return False
    for tau in tail:
        if abs(naive_accf(x, y, tau) + naive_accf(y, x, tau)) >= tolerance:
            return False
    return True


@dataclass(frozen=True)
class SearchSpec:
    """Target of an exhaustive search: all q-ary length-N pairs passing at Z."""

    q: int
    N: int
    Z: int
    symmetry_reduction: bool = False

    def __post_init__(self) -> None:
        if self.q < 2:
            raise ValueError(f"q must be at least 2, got {self.q}")
        if self.N < 2:
            raise ValueError(f"length must be at least 2, got {self.N}")
        if not 1 <= self.Z <= self.N // 2:
            raise ValueError(f"Z={self.Z} out of range for N={self.N}")
        if self.candidates > SEARCH_CAP:
            raise SearchTooLargeError(
                f"Search over {self.candidates:,} candidate pairs exceeds the cap of {SEARCH_CAP:,}"
            )

    @property
    def candidates(self) -> int:
        """Number of (x, y) pairs the search visits."""
        free = 2 * self.N - (1 if self.symmetry_reduction else 0)
        return self.q**free

    def to_dict(self) -> dict[str, Any]:
        return {
            "q": self.q,
            "N": self.N,
            "Z": self.Z,
            "symmetry_reduction": self.symmetry_reduction,
        }


@dataclass(frozen=True, order=True)
class SearchHit:
    """A pair found by the search."""

    x: tuple[int, ...]
    y: tuple[int, ...]
    perfect: bool

    def to_dict(self) -> dict[str, Any]:
        return {"x": list(self.x), "y": list(self.y), "perfect": self.perfect}


def _x_candidates(spec: SearchSpec) -> list[tuple[int, ...]]:
    if spec.symmetry_reduction:
        return [(0, *rest) for rest in itertools.product(range(spec.q), repeat=spec.N - 1)]
    return list(itertools.product(range(spec.q), repeat=spec.N))


def _hits_for_x(args: tuple[SearchSpec, tuple[int, ...]]) -> list[SearchHit]:
    spec, x_exps = args
    x = ModQSequence(q=spec.q, exps=x_exps)
    hits = []
    for y_exps in itertools.product(range(spec.q), repeat=spec.N):
        y = ModQSequence(q=spec.q, exps=y_exps)
        if not naive_is_czcp(x, y, spec.Z):
            continue
        perfect = spec.N % 2 == 0 and (spec.Z == spec.N // 2 or naive_is_czcp(x, y, spec.N // 2))
        hits.append(SearchHit(x=x_exps, y=y_exps, perfect=perfect))
    return hits


def iter_search(spec: SearchSpec) -> Iterator[SearchHit]:
    """Yield passing pairs in lexicographic ``(x, y)`` order."""
    logger.debug(f"Searching {spec.candidates:,} candidate pairs for {spec.to_dict()}")
    for x_exps in _x_candidates(spec):
        yield from _hits_for_x((spec, x_exps))


def exhaustive_search(spec: SearchSpec, workers: int = 1) -> list[SearchHit]:
    """Every pair passing the CZCP conditions at ``spec.Z``, sorted.

    Args:
        spec: Search target
        workers: Worker processes splitting the outer ``x`` loop (1 = in-process)
    """
    if workers <= 1:
        return sorted(iter_search(spec))
    tasks = [(spec, x_exps) for x_exps in _x_candidates(spec)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        found = [hit for hits in pool.map(_hits_for_x, tasks, chunksize=64) for hit in hits]
    return sorted(found)


def write_search_jsonl(spec: SearchSpec, fh: TextIO, workers: int = 1) -> int:
    """Write passing pairs as JSON lines; returns the number written.

    A single worker streams hits as they are found; several workers collect
    them first. Both write the same lines in the same order.
    """
    hits = iter_search(spec) if workers <= 1 else iter(exhaustive_search(spec, workers))
    written = 0
    for hit in hits:
        record = {**hit.to_dict(), **spec.to_dict()}
        fh.write(json.dumps(record) + "\n")
        written += 1
    return written


def brute_partitions_two_blocks(n: int) -> list[tuple[frozenset[int], frozenset[int]]]:
    """List every unordered split of ``{1..n}`` into two non-empty blocks.

    Each split is returned once, block containing 1 first.

    Raises:
        ValueError: If ``n`` is negative or above ``MAX_LISTED_PARTITIONS_N``
    """
    if n < 0 or n > MAX_LISTED_PARTITIONS_N:
        raise ValueError(f"Can only list partitions for 0 <= n <= {MAX_LISTED_PARTITIONS_N}")
    elements = range(1, n + 1)
    seen: set[frozenset[frozenset[int]]] = set()
    for labels in itertools.product((0, 1), repeat=n):
        a = frozenset(e for e, label in zip(elements, labels) if label == 0)
        b = frozenset(e for e, label in zip(elements, labels) if label == 1)
        if a and b:
            seen.add(frozenset((a, b)))
    splits = [tuple(sorted(split, key=lambda block: 1 not in block)) for split in seen]
    return sorted(((s[0], s[1]) for s in splits), key=lambda s: sorted(s[0]))
