"""Root cross Z-complementary pairs from GBFs, two roots of unity and a set partition.

Given ``n >= 4``, a permutation ``pi`` of ``{1..n-2}``, coefficients
``c_0..c_{n-1}`` over Z_q and an ordered two-block partition
``{R_k1, R_k2}`` of ``{1..n}`` with root orders ``k1`` and ``k2``
(``q = lcm(2, k1, k2)``), the construction

1. builds the quadratic GBF ``f`` (complemented products expanded) and
   ``g = f + x_n``;
2. overlays the roots of unity in the exponent domain::

       f_P = (q/2) f + (q/k1) sum_{i in R_k1} x_i + (q/k2) sum_{j in R_k2} x_j

   and likewise ``g_P``;
3. truncates ``L = 2**(n-2) - 2**nu`` entries from both ends, giving a pair
   of length ``N = 2**(n-1) + 2**(nu+1)`` with ZCZ width
   ``Z = 2**(pi(nu+1)-1) + 2**nu - 1``.
"""

from __future__ import annotations

import csv
import itertools
import logging
import math
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from typing import Any, TextIO

import numpy as np

from rczcp.boolean import (
    MAX_VARIABLES,
    GeneralizedBooleanFunction,
    ModQSequence,
    add,
    constant,
    expand_bar_product,
    scale,
    sequence_of,
    truncate,
    variable,
    zero,
)
from rczcp.correlation import DEFAULT_TOLERANCE, ZeroTest, verify_czcp

logger = logging.getLogger(__name__)


class ParameterValidationError(ValueError):
    """Raised with every violated precondition of the construction."""

    def __init__(self, violations: list[str]) -> None:
        self.violations = violations
        super().__init__("; ".join(violations))


class ConstructionCheckError(RuntimeError):
    """Raised when a constructed pair fails the CZCP conditions at its claimed Z."""


@dataclass(frozen=True)
class Partition2:
    """Ordered partition ``{R_k1, R_k2}`` of ``{1..n}`` with its root orders."""

    k1: int
    k2: int
    r1: frozenset[int]
    r2: frozenset[int]

    @classmethod
    def of(cls, k1: int, k2: int, r1: Sequence[int], r2: Sequence[int]) -> Partition2:
        return cls(k1=k1, k2=k2, r1=frozenset(r1), r2=frozenset(r2))

    @property
    def q(self) -> int:
        """Alphabet size ``lcm(2, k1, k2)``."""
        return math.lcm(2, self.k1, self.k2)

    def swapped(self) -> Partition2:
        """The same blocks with the root assignment exchanged."""
        return Partition2(k1=self.k2, k2=self.k1, r1=self.r2, r2=self.r1)

    def violations(self, n: int) -> list[str]:
        problems = []
        if self.k1 < 1 or self.k2 < 1:
            problems.append(f"root orders must be positive (k1={self.k1}, k2={self.k2})")
        if not self.r1 or not self.r2:
            problems.append("partition blocks R_k1 and R_k2 must both be non-empty")
        if self.r1 & self.r2:
            problems.append(f"partition blocks overlap on {sorted(self.r1 & self.r2)}")
        if self.r1 | self.r2 != set(range(1, n + 1)):
            problems.append(f"partition blocks must cover exactly 1..{n}")
        return problems

    def to_dict(self) -> dict[str, Any]:
        return {"k1": self.k1, "k2": self.k2, "r1": sorted(self.r1), "r2": sorted(self.r2)}


@dataclass(frozen=True)
class ConstructionParams:
    """Full input to the construction.

    ``coefficients`` is ``(c_0, c_1, ..., c_{n-1})``; ``c_0`` is the constant term.
    """

    n: int
    nu: int
    pi: tuple[int, ...]
    coefficients: tuple[int, ...]
    partition: Partition2

    @property
    def q(self) -> int:
        return self.partition.q

    @property
    def L(self) -> int:
        return 2 ** (self.n - 2) - 2**self.nu

    @property
    def N(self) -> int:
        return claimed_N(self.n, self.nu)

    @property
    def Z_claimed(self) -> int:
        return claimed_Z(self.pi, self.nu)

    def violations(self, max_n: int = MAX_VARIABLES) -> list[str]:
        """Every violated precondition, in a stable order."""
        n, nu, pi = self.n, self.nu, self.pi
        problems = []
        if n < 4:
            problems.append(f"n must be at least 4, got {n}")
        if n > max_n:
            problems.append(f"n must be at most {max_n}, got {n}")
        if not 0 <= nu <= n - 3:
            problems.append(f"nu must satisfy 0 <= nu <= n-3 = {n - 3}, got {nu}")
        if sorted(pi) != list(range(1, n - 1)):
            problems.append(f"pi must be a permutation of 1..{n - 2}, got {list(pi)}")
        elif 0 < nu <= n - 3 and set(pi[:nu]) != set(range(1, nu + 1)):
            problems.append(
                f"pi(1..{nu}) must equal {{1..{nu}}} when nu > 0, got {sorted(pi[:nu])}"
            )
        if len(self.coefficients) != n:
            problems.append(
                f"expected {n} coefficients c_0..c_{n - 1}, got {len(self.coefficients)}"
            )
        out_of_range = [c for c in self.coefficients if not 0 <= c < self.q]
        if out_of_range:
            problems.append(f"coefficients must lie in Z_{self.q}, got {out_of_range}")
        problems.extend(self.partition.violations(n))
        return problems

    def validate(self, max_n: int = MAX_VARIABLES) -> None:
        """Raise :class:`ParameterValidationError` listing every violation."""
        problems = self.violations(max_n)
        if problems:
            raise ParameterValidationError(problems)

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "nu": self.nu,
            "pi": list(self.pi),
            "coefficients": list(self.coefficients),
            "partition": self.partition.to_dict(),
            "q": self.q,
            "L": self.L,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> ConstructionParams:
        part = data["partition"]
        return cls(
            n=int(data["n"]),
            nu=int(data["nu"]),
            pi=tuple(int(p) for p in data["pi"]),
            coefficients=tuple(int(c) for c in data["coefficients"]),
            partition=Partition2.of(int(part["k1"]), int(part["k2"]), part["r1"], part["r2"]),
        )


@dataclass(frozen=True)
class RczcpPair:
    """A constructed pair: the truncated sequences plus the untruncated ones for audit."""

    params: ConstructionParams
    f_p: ModQSequence
    g_p: ModQSequence
    f_p_full: ModQSequence
    g_p_full: ModQSequence

    @property
    def q(self) -> int:
        return self.params.q

    @property
    def N(self) -> int:
        return len(self.f_p)

    @property
    def Z_claimed(self) -> int:
        return self.params.Z_claimed

    def summary(self) -> str:
        return f"({self.N}, {self.Z_claimed})-RCZCP over q={self.q}"

    def to_dict(self) -> dict[str, Any]:
        return {
            "params": self.params.to_dict(),
            "q": self.q,
            "N": self.N,
            "Z_claimed": self.Z_claimed,
            "fP": list(self.f_p.exps),
            "gP": list(self.g_p.exps),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any], max_n: int = MAX_VARIABLES) -> RczcpPair:
        """Inverse of :meth:`to_dict`; the pair is rebuilt from ``params`` and must match.

        Raises:
            ValueError: If ``params`` is missing or malformed, or the stored
                sequences are not the ones those parameters produce
        """
        if "params" not in data:
            raise ValueError("Pair JSON is missing 'params'")
        try:
            params = ConstructionParams.from_dict(data["params"])
        except (KeyError, TypeError) as e:
            raise ValueError(f"Pair JSON has malformed 'params': {e!r}") from e
        pair = construct_rczcp(params, max_n=max_n)
        if "q" in data and data["q"] != pair.q:
            raise ValueError(f"'q' is {data['q']} but the params give q={pair.q}")
        for key, built in (("fP", pair.f_p), ("gP", pair.g_p)):
            if key in data and data[key] != list(built.exps):
                raise ValueError(f"'{key}' does not match the sequence its params produce")
        return pair

    def write_csv(self, fh: TextIO) -> None:
        """Two rows, ``fP`` and ``gP``, each followed by its exponents."""
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["fP", *self.f_p.exps])
        writer.writerow(["gP", *self.g_p.exps])


def claimed_N(n: int, nu: int) -> int:
    """Sequence length ``2**(n-1) + 2**(nu+1)``."""
    return 2 ** (n - 1) + 2 ** (nu + 1)


def claimed_Z(pi: Sequence[int], nu: int) -> int:
    """ZCZ width ``2**(pi(nu+1)-1) + 2**nu - 1``."""
    return 2 ** (pi[nu] - 1) + 2**nu - 1


def huang_gbf(n: int, pi: Sequence[int], c: Sequence[int], q: int) -> GeneralizedBooleanFunction:
    """The quadratic GBF ``f`` over Z_q, complemented products expanded.

    ``f = x̄_n sum x̄_pi(i) x̄_pi(i+1) + x_n sum x_pi(i) x_pi(i+1) + x_n x_pi(1)
    + sum_{i=1}^{n-1} c_i x_i + c_0``

    Raises:
        ValueError: If ``pi`` is not a permutation of ``1..n-2`` or a coefficient is outside Z_q
    """
    if n < 4:
        raise ValueError(f"n must be at least 4, got {n}")
    if sorted(pi) != list(range(1, n - 1)):
        raise ValueError(f"pi must be a permutation of 1..{n - 2}, got {list(pi)}")
    if len(c) != n or any(not 0 <= ci < q for ci in c):
        raise ValueError(f"expected {n} coefficients in Z_{q}, got {list(c)}")

    f = constant(n, q, c[0])
    for a, b in itertools.pairwise(pi):
        f = add(f, expand_bar_product(n, q, [n, a, b]))
        f = add(f, GeneralizedBooleanFunction(n=n, q=q, terms=(((n, a, b), 1),)))
    f = add(f, GeneralizedBooleanFunction(n=n, q=q, terms=(((n, pi[0]), 1),)))
    for i in range(1, n):
        f = add(f, variable(n, q, i, c[i]))
    return f


def _partition_overlay(params: ConstructionParams) -> GeneralizedBooleanFunction:
    n, q, part = params.n, params.q, params.partition
    overlay = zero(n, q)
    for block, k in ((part.r1, part.k1), (part.r2, part.k2)):
        for i in block:
            overlay = add(overlay, variable(n, q, i, q // k))
    return overlay


def build_fp_gp(
    params: ConstructionParams, max_n: int = MAX_VARIABLES
) -> tuple[GeneralizedBooleanFunction, GeneralizedBooleanFunction]:
    """The exponent-domain GBFs ``f_P`` and ``g_P``.

    Raises:
        ParameterValidationError: If the parameters are invalid
    """
    params.validate(max_n)
    n, q = params.n, params.q
    f = huang_gbf(n, params.pi, params.coefficients, q)
    g = add(f, variable(n, q, n))
    overlay = _partition_overlay(params)
    return add(scale(f, q // 2), overlay), add(scale(g, q // 2), overlay)


def product_form_sequence(params: ConstructionParams, which: str = "f") -> np.ndarray:
    """Complex ``psi_q(f_P)`` (or ``g_P``) built as the product of root-of-unity factors.

    ``omega_q**((q/2) f) * alpha_1**sum_{R_k1} x_i * alpha_2**sum_{R_k2} x_j``,
    evaluated pointwise over all ``2**n`` inputs.
    """
    params.validate()
    n, q, part = params.n, params.q, params.partition
    f = huang_gbf(n, params.pi, params.coefficients, q)
    if which == "g":
        f = add(f, variable(n, q, n))
    elif which != "f":
        raise ValueError(f"which must be 'f' or 'g', got {which!r}")
    values = np.asarray(sequence_of(f).exps)
    bits = (np.arange(2**n)[:, None] >> np.arange(n)) & 1
    s1 = bits[:, [i - 1 for i in sorted(part.r1)]].sum(axis=1)
    s2 = bits[:, [j - 1 for j in sorted(part.r2)]].sum(axis=1)
    omega_q = np.exp(2j * np.pi / q)
    alpha_1 = np.exp(2j * np.pi / part.k1)
    alpha_2 = np.exp(2j * np.pi / part.k2)
    return omega_q ** ((q // 2) * values) * alpha_1**s1 * alpha_2**s2


def construct_rczcp(
    params: ConstructionParams,
    check: bool = False,
    zero_test: ZeroTest = "auto",
    tolerance: float = DEFAULT_TOLERANCE,
    max_n: int = MAX_VARIABLES,
) -> RczcpPair:
    """Run the construction end to end.

    Args:
        params: Construction parameters
        check: Verify the pair at its claimed Z and raise if it fails
        zero_test: Zero test used by the check
        tolerance: Numeric tolerance used by the check
        max_n: Largest variable count accepted

    Raises:
        ParameterValidationError: If the parameters are invalid
        ConstructionCheckError: If ``check`` is set and the pair fails
    """
    f_p, g_p = build_fp_gp(params, max_n)
    f_full, g_full = sequence_of(f_p, max_n), sequence_of(g_p, max_n)
    pair = RczcpPair(
        params=params,
        f_p=truncate(f_full, params.L),
        g_p=truncate(g_full, params.L),
        f_p_full=f_full,
        g_p_full=g_full,
    )
    if check:
        verdict = verify_czcp(pair.f_p, pair.g_p, pair.Z_claimed, zero_test, tolerance)
        if not verdict.passed:
            raise ConstructionCheckError(
                f"{pair.summary()} fails: C1 at {verdict.c1_violations}, "
                f"C2 at {verdict.c2_violations} for {params.to_dict()}"
            )
    return pair


def huang_pair(
    n: int, pi: Sequence[int], c: Sequence[int], nu: int
) -> tuple[ModQSequence, ModQSequence]:
    """The binary pair ``(f^(L), (f + x_n)^(L))`` over q = 2."""
    f = huang_gbf(n, pi, c, 2)
    g = add(f, variable(n, 2, n))
    L = 2 ** (n - 2) - 2**nu
    return truncate(sequence_of(f), L), truncate(sequence_of(g), L)


def admissible_permutations(n: int, nu: int) -> Iterator[tuple[int, ...]]:
    """Permutations of ``1..n-2`` whose first ``nu`` images are ``{1..nu}``."""
    prefix = set(range(1, nu + 1))
    for pi in itertools.permutations(range(1, n - 1)):
        if nu == 0 or set(pi[:nu]) == prefix:
            yield pi


def best_permutation(n: int, nu: int) -> tuple[int, ...]:
    """The admissible permutation maximising the ZCZ width (``pi(nu+1) = n-2``)."""
    if not 0 <= nu <= n - 3:
        raise ValueError(f"nu must satisfy 0 <= nu <= n-3 = {n - 3}, got {nu}")
    return (*range(1, nu + 1), n - 2, *range(nu + 1, n - 2))


def ordered_partitions(n: int, k1: int, k2: int) -> Iterator[Partition2]:
    """All ordered two-block partitions of ``1..n`` (``2**n - 2`` of them)."""
    indices = range(1, n + 1)
    for size in range(1, n):
        for block in itertools.combinations(indices, size):
            rest = [i for i in indices if i not in block]
            yield Partition2.of(k1, k2, block, rest)
