"""Generalized Boolean functions over Z_q and their associated sequences.

A generalized Boolean function (GBF) of ``n`` binary variables is stored in
the monomial basis: a map from a set of variable indices (1-based, the empty
set being the constant term) to a coefficient in Z_q.

Index-to-bit convention:
    Index ``i`` of the associated sequence is evaluated at the bit vector
    ``(u_1, ..., u_n)`` with ``i = sum(u_l * 2**(l - 1))``, i.e. ``u_1`` is
    the LEAST significant bit. Every reference sequence this package
    reproduces depends on that ordering.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any

import numpy as np

MAX_VARIABLES = 20

Monomial = tuple[int, ...]


@dataclass(frozen=True)
class ModQSequence:
    """A q-ary sequence of exponents in Z_q; its complex form is psi_q."""

    q: int
    exps: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.q < 2:
            raise ValueError(f"Alphabet size q must be at least 2, got {self.q}")
        if not self.exps:
            raise ValueError("Sequence must contain at least one element")
        object.__setattr__(self, "exps", tuple(int(e) for e in self.exps))
        bad = [e for e in self.exps if not 0 <= e < self.q]
        if bad:
            raise ValueError(f"Exponents must lie in [0, {self.q}), got {bad[:5]}")

    def __len__(self) -> int:
        return len(self.exps)

    def as_array(self) -> np.ndarray:
        """Exponents as an int64 numpy vector."""
        return np.asarray(self.exps, dtype=np.int64)

    def to_complex(self) -> np.ndarray:
        """Return psi_q of the sequence, the unit-modulus complex vector."""
        return np.exp(2j * np.pi * self.as_array() / self.q)

    def canonical_key(self) -> bytes:
        """Byte encoding of ``(q, exps)`` used as a deduplication identity."""
        return self.q.to_bytes(4, "big") + np.asarray(self.exps, dtype=">u4").tobytes()


def _canonical_terms(
    n: int, q: int, terms: Iterable[tuple[Iterable[int], int]]
) -> tuple[tuple[Monomial, int], ...]:
    merged: dict[Monomial, int] = {}
    for variables, coeff in terms:
        monomial = tuple(sorted(set(variables)))
        bad = [v for v in monomial if not 1 <= v <= n]
        if bad:
            raise ValueError(f"Monomial references variables outside 1..{n}: {bad}")
        merged[monomial] = (merged.get(monomial, 0) + int(coeff)) % q
    return tuple(sorted(((m, c) for m, c in merged.items() if c), key=lambda t: (len(t[0]), t[0])))


@dataclass(frozen=True)
class GeneralizedBooleanFunction:
    """A Z_q-valued function of ``n`` binary variables in the monomial basis.

    Coefficients are reduced mod ``q`` and zero terms dropped on
    construction, so two instances compare equal exactly when their term
    maps are equal.
    """

    n: int
    q: int
    terms: tuple[tuple[Monomial, int], ...] = field(default=())

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"Variable count n must be positive, got {self.n}")
        if self.q < 2:
            raise ValueError(f"Alphabet size q must be at least 2, got {self.q}")
        object.__setattr__(self, "terms", _canonical_terms(self.n, self.q, self.terms))

    @classmethod
    def from_mapping(
        cls, n: int, q: int, terms: Mapping[Iterable[int], int]
    ) -> GeneralizedBooleanFunction:
        """Build a GBF from a ``{variables: coefficient}`` mapping."""
        return cls(n=n, q=q, terms=tuple((tuple(k), v) for k, v in terms.items()))

    def as_dict(self) -> dict[frozenset[int], int]:
        """Term map keyed by frozensets of variable indices."""
        return {frozenset(m): c for m, c in self.terms}

    def coefficient(self, variables: Iterable[int]) -> int:
        """Coefficient of the monomial over ``variables`` (0 when absent)."""
        key = tuple(sorted(set(variables)))
        return dict(self.terms).get(key, 0)

    @property
    def degree(self) -> int:
        """Largest monomial size; the zero function has degree 0."""
        return max((len(m) for m, _ in self.terms), default=0)

    def __add__(self, other: GeneralizedBooleanFunction) -> GeneralizedBooleanFunction:
        return add(self, other)

    def __neg__(self) -> GeneralizedBooleanFunction:
        return scale(self, -1)

    def __sub__(self, other: GeneralizedBooleanFunction) -> GeneralizedBooleanFunction:
        return add(self, -other)

    def to_dict(self) -> dict[str, Any]:
        """JSON form: ``{"n", "q", "terms": [{"vars": [...], "coeff": c}, ...]}``."""
        ordered = sorted(self.terms, key=lambda t: list(t[0]))
        return {
            "n": self.n,
            "q": self.q,
            "terms": [{"vars": list(m), "coeff": c} for m, c in ordered],
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> GeneralizedBooleanFunction:
        """Inverse of :meth:`to_dict`.

        Raises:
            ValueError: If a required key is missing
        """
        for key in ("n", "q", "terms"):
            if key not in data:
                raise ValueError(f"GBF JSON is missing '{key}'")
        terms = [(tuple(t["vars"]), int(t["coeff"])) for t in data["terms"]]
        return cls(n=int(data["n"]), q=int(data["q"]), terms=tuple(terms))


def zero(n: int, q: int) -> GeneralizedBooleanFunction:
    """The zero function."""
    return GeneralizedBooleanFunction(n=n, q=q)


def constant(n: int, q: int, c: int) -> GeneralizedBooleanFunction:
    """The constant function ``c``."""
    return GeneralizedBooleanFunction(n=n, q=q, terms=(((), c),))


def variable(n: int, q: int, i: int, coeff: int = 1) -> GeneralizedBooleanFunction:
    """The function ``coeff * x_i``."""
    return GeneralizedBooleanFunction(n=n, q=q, terms=(((i,), coeff),))


def index_to_bits(i: int, n: int) -> tuple[int, ...]:
    """Binary vector ``(u_1, ..., u_n)`` of index ``i``, least significant bit first.

    Raises:
        ValueError: If ``i`` is outside ``[0, 2**n)``
    """
    if not 0 <= i < 2**n:
        raise ValueError(f"Index {i} out of range for n={n} (must be in [0, {2**n}))")
    return tuple((i >> bit) & 1 for bit in range(n))


def evaluate(f: GeneralizedBooleanFunction, bits: Sequence[int]) -> int:
    """Evaluate ``f`` at a bit vector.

    Raises:
        ValueError: If ``bits`` does not have length ``f.n`` or is not binary
    """
    if len(bits) != f.n:
        raise ValueError(f"Expected {f.n} bits, got {len(bits)}")
    if any(b not in (0, 1) for b in bits):
        raise ValueError(f"Bits must be 0 or 1, got {list(bits)}")
    total = 0
    for monomial, coeff in f.terms:
        if all(bits[v - 1] for v in monomial):
            total += coeff
    return total % f.q


def sequence_of(
    f: GeneralizedBooleanFunction, max_n: int = MAX_VARIABLES
) -> ModQSequence:
    """The length-``2**n`` sequence ``[f_0, ..., f_{2^n - 1}]`` associated with ``f``.

    Raises:
        ValueError: If ``f.n`` exceeds ``max_n``
    """
    if f.n > max_n:
        raise ValueError(f"n={f.n} exceeds the configured limit of {max_n} variables")
    indices = np.arange(2**f.n, dtype=np.int64)
    values = np.zeros(2**f.n, dtype=np.int64)
    for monomial, coeff in f.terms:
        # A monomial is 1 exactly where all of its variable bits are set
        mask = sum(1 << (v - 1) for v in monomial)
        values += coeff * ((indices & mask) == mask)
    return ModQSequence(q=f.q, exps=tuple((values % f.q).tolist()))


def truncate(s: ModQSequence, L: int) -> ModQSequence:
    """Discard the first and the last ``L`` elements of ``s``.

    Raises:
        ValueError: If ``L`` is negative or leaves no elements
    """
    if L < 0 or 2 * L >= len(s):
        raise ValueError(
            f"Cannot truncate {L} elements from each end of a length-{len(s)} sequence"
        )
    return ModQSequence(q=s.q, exps=s.exps[L : len(s) - L])


def _require_compatible(f: GeneralizedBooleanFunction, g: GeneralizedBooleanFunction) -> None:
    if f.n != g.n or f.q != g.q:
        raise ValueError(f"Mismatched functions: (n={f.n}, q={f.q}) vs (n={g.n}, q={g.q})")


def add(f: GeneralizedBooleanFunction, g: GeneralizedBooleanFunction) -> GeneralizedBooleanFunction:
    """Coefficient-wise sum mod q.

    Raises:
        ValueError: If ``n`` or ``q`` differ
    """
    _require_compatible(f, g)
    return GeneralizedBooleanFunction(n=f.n, q=f.q, terms=f.terms + g.terms)


def scale(f: GeneralizedBooleanFunction, k: int) -> GeneralizedBooleanFunction:
    """Scalar multiple ``k * f`` mod q."""
    return GeneralizedBooleanFunction(n=f.n, q=f.q, terms=tuple((m, c * k) for m, c in f.terms))


def expand_bar_product(
    n: int, q: int, indices: Iterable[int], coefficient: int = 1
) -> GeneralizedBooleanFunction:
    """Expand ``coefficient * prod((1 - x_j) for j in indices)`` into monomials.

    Repeated indices collapse since ``(1 - x)**2 = 1 - x`` on binary inputs.

    Example:
        >>> expand_bar_product(2, 2, [1, 2]).as_dict()
        {frozenset(): 1, frozenset({1}): 1, frozenset({2}): 1, frozenset({1, 2}): 1}
    """
    distinct = sorted(set(indices))
    terms = []
    for size in range(len(distinct) + 1):
        sign = -1 if size % 2 else 1
        for subset in itertools.combinations(distinct, size):
            terms.append((subset, sign * coefficient))
    return GeneralizedBooleanFunction(n=n, q=q, terms=tuple(terms))
