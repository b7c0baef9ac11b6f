"""Aperiodic correlation of q-ary sequences and the CZCP verifier.

Correlation sums are kept as integer tallies: ``counts[e]`` is the number of
summands equal to ``omega_q**e``. A tally is zero either numerically
(``|sum counts[e] * omega_q**e| < tolerance``) or exactly, when the tally,
read as an integer polynomial, vanishes modulo the q-th cyclotomic
polynomial.
"""

from __future__ import annotations

import csv
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Literal, TextIO

import numpy as np
from sympy import Poly, cyclotomic_poly
from sympy.abc import x as _x

from rczcp.boolean import ModQSequence

logger = logging.getLogger(__name__)

ZeroTest = Literal["auto", "exact", "numeric"]

DEFAULT_TOLERANCE = 1e-6
EXACT_AUTO_MAX_Q = 64

# Above this length tallies come from FFT correlations of the symbol indicators
# instead of an N x N table; rounding recovers the integer counts
_TALLY_TABLE_MAX_N = 2048

PROFILE_HEADER = ("tau", "aacf_sum_abs", "accf_sym_sum_abs")


@dataclass(frozen=True)
class CorrelationTally:
    """Exact tally of the summands of a correlation at one shift."""

    q: int
    tau: int
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.counts) != self.q:
            raise ValueError(f"Tally needs {self.q} counts, got {len(self.counts)}")
        if any(c < 0 for c in self.counts):
            raise ValueError("Tally counts must be non-negative")

    @property
    def terms(self) -> int:
        """Number of summands, ``N - |tau|`` for the shift it was computed at."""
        return sum(self.counts)

    def value(self) -> complex:
        """The correlation value evaluated at omega_q."""
        return complex(np.dot(np.asarray(self.counts, dtype=np.float64), _roots(self.q)))

    def is_zero(
        self, zero_test: ZeroTest = "auto", tolerance: float = DEFAULT_TOLERANCE
    ) -> bool:
        """Whether the tally sums to zero."""
        return bool(is_zero_tally(np.asarray(self.counts), self.q, zero_test, tolerance))

    def __add__(self, other: CorrelationTally) -> CorrelationTally:
        if self.q != other.q or self.tau != other.tau:
            raise ValueError("Can only add tallies with the same q and shift")
        return CorrelationTally(
            q=self.q, tau=self.tau, counts=tuple(a + b for a, b in zip(self.counts, other.counts))
        )


@dataclass(frozen=True)
class CzcpVerdict:
    """Outcome of checking a pair against the CZCP conditions C1 and C2."""

    N: int
    Z_claimed: int | None
    Z_achieved: int
    ratio: Fraction
    perfect: bool
    c1_violations: list[int] = field(default_factory=list)
    c2_violations: list[int] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """True when the claimed Z holds, or when some Z >= 1 holds if none was claimed."""
        if self.Z_claimed is None:
            return self.Z_achieved >= 1
        return not self.c1_violations and not self.c2_violations

    def to_dict(self) -> dict[str, Any]:
        return {
            "N": self.N,
            "Z_claimed": self.Z_claimed,
            "Z_achieved": self.Z_achieved,
            "ratio": f"{self.ratio.numerator}/{self.ratio.denominator}",
            "perfect": self.perfect,
            "passed": self.passed,
            "c1_violations": self.c1_violations,
            "c2_violations": self.c2_violations,
        }


@dataclass(frozen=True)
class ProfileRow:
    """One row of the correlation magnitude profile."""

    tau: int
    aacf_sum_abs: float
    accf_sym_sum_abs: float


@lru_cache(maxsize=None)
def _roots(q: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(q) / q)


@lru_cache(maxsize=None)
def cyclotomic_projection(q: int) -> np.ndarray:
    """Matrix whose row ``e`` holds ``x**e mod Phi_q(x)`` in the power basis.

    Returns:
        Integer array of shape ``(q, phi(q))``
    """
    phi = Poly(cyclotomic_poly(q, _x), _x)
    degree = phi.degree()
    rows = []
    for e in range(q):
        remainder = Poly(_x**e, _x).rem(phi)
        ascending = [int(c) for c in reversed(remainder.all_coeffs())]
        rows.append(ascending + [0] * (degree - len(ascending)))
    logger.debug(f"Built cyclotomic projection for q={q} (degree {degree})")
    return np.asarray(rows, dtype=np.int64)


def _use_exact(q: int, zero_test: ZeroTest) -> bool:
    if zero_test == "auto":
        return q <= EXACT_AUTO_MAX_Q
    if zero_test not in ("exact", "numeric"):
        raise ValueError(f"Unknown zero test '{zero_test}' (expected auto, exact or numeric)")
    return zero_test == "exact"


def is_zero_tally(
    counts: np.ndarray, q: int, zero_test: ZeroTest = "auto", tolerance: float = DEFAULT_TOLERANCE
) -> np.ndarray:
    """Zero test for one tally (shape ``(q,)``) or a stack of tallies (shape ``(m, q)``).

    Returns:
        Boolean scalar array or boolean vector, one entry per tally
    """
    counts = np.asarray(counts, dtype=np.int64)
    if _use_exact(q, zero_test):
        return ~np.any(counts @ cyclotomic_projection(q), axis=-1)
    return np.abs(counts @ _roots(q)) < tolerance


def exact_squared_magnitude(counts: np.ndarray | tuple[int, ...], q: int) -> int | None:
    """Exact ``|S|**2`` of a tallied sum ``S``, or None when it is irrational.

    ``S * conj(S)`` is formed as a tally over Z_q and reduced modulo the
    cyclotomic polynomial; it is rational exactly when only the constant
    coefficient survives.
    """
    a = [int(c) for c in counts]
    product = [sum(a[e] * a[(e - d) % q] for e in range(q)) for d in range(q)]
    projection = cyclotomic_projection(q).tolist()
    reduced = [
        sum(product[d] * projection[d][j] for d in range(q)) for j in range(len(projection[0]))
    ]
    if any(reduced[1:]):
        return None
    return int(reduced[0])


def _require_pair(x: ModQSequence, y: ModQSequence) -> None:
    if len(x) != len(y):
        raise ValueError(f"Sequences differ in length: {len(x)} vs {len(y)}")
    if x.q != y.q:
        raise ValueError(f"Sequences differ in alphabet size: q={x.q} vs q={y.q}")


def accf_tally(x: ModQSequence, y: ModQSequence, tau: int) -> CorrelationTally:
    """Tally of ``rho_{x,y}(tau)``; negative shifts use the second branch of the definition.

    Raises:
        ValueError: If lengths or alphabets differ
    """
    _require_pair(x, y)
    N, q = len(x), x.q
    if abs(tau) >= N:
        return CorrelationTally(q=q, tau=tau, counts=(0,) * q)
    xa, ya = x.as_array(), y.as_array()
    diffs = (xa[: N - tau] - ya[tau:]) % q if tau >= 0 else (xa[-tau:] - ya[: N + tau]) % q
    counts = np.bincount(diffs, minlength=q)
    return CorrelationTally(q=q, tau=tau, counts=tuple(int(c) for c in counts))


def accf(x: ModQSequence, y: ModQSequence, tau: int) -> complex:
    """Aperiodic cross-correlation ``rho_{x,y}(tau)`` (auto-correlation when ``x is y``)."""
    return accf_tally(x, y, tau).value()


def _fft_tallies(xa: np.ndarray, ya: np.ndarray, q: int) -> np.ndarray:
    # counts[tau, e] = sum over a - b = e (mod q) of corr(x == a, y == b)[tau]
    N = len(xa)
    size = 1 << (2 * N - 1).bit_length()
    fx = np.fft.rfft((xa[None, :] == np.arange(q)[:, None]).astype(np.float64), n=size, axis=1)
    fy = np.fft.rfft((ya[None, :] == np.arange(q)[:, None]).astype(np.float64), n=size, axis=1)
    fx_conj = np.conj(fx)
    symbols = np.arange(q)
    out = np.empty((N, q), dtype=np.int64)
    for e in range(q):
        spectrum = (fx_conj * fy[(symbols - e) % q]).sum(axis=0)
        out[:, e] = np.rint(np.fft.irfft(spectrum, n=size)[:N]).astype(np.int64)
    return out


def tally_matrix(x: ModQSequence, y: ModQSequence) -> np.ndarray:
    """Tallies of ``rho_{x,y}(tau)`` for every ``tau`` in ``0..N-1``.

    Returns:
        Integer array of shape ``(N, q)``
    """
    _require_pair(x, y)
    N, q = len(x), x.q
    xa, ya = x.as_array(), y.as_array()
    if N > _TALLY_TABLE_MAX_N:
        return _fft_tallies(xa, ya, q)
    k = np.arange(N)
    shifts = k[None, :] - k[:, None]
    diffs = (xa[:, None] - ya[None, :]) % q
    mask = shifts >= 0
    flat = shifts[mask] * q + diffs[mask]
    return np.bincount(flat, minlength=N * q).reshape(N, q)


def aacf_sum_tallies(x: ModQSequence, y: ModQSequence) -> np.ndarray:
    """Tallies of ``rho_x(tau) + rho_y(tau)`` for ``tau`` in ``0..N-1``."""
    return tally_matrix(x, x) + tally_matrix(y, y)


def accf_sym_sum_tallies(x: ModQSequence, y: ModQSequence) -> np.ndarray:
    """Tallies of ``rho_{x,y}(tau) + rho_{y,x}(tau)`` for ``tau`` in ``0..N-1``."""
    return tally_matrix(x, y) + tally_matrix(y, x)


def aacf_sum_profile(x: ModQSequence, y: ModQSequence) -> np.ndarray:
    """Magnitudes ``|rho_x(tau) + rho_y(tau)|`` for ``tau`` in ``0..N-1``."""
    return np.abs(aacf_sum_tallies(x, y) @ _roots(x.q))


def accf_sym_sum_profile(x: ModQSequence, y: ModQSequence) -> np.ndarray:
    """Magnitudes ``|rho_{x,y}(tau) + rho_{y,x}(tau)|`` for ``tau`` in ``0..N-1``."""
    return np.abs(accf_sym_sum_tallies(x, y) @ _roots(x.q))


def correlation_profile(x: ModQSequence, y: ModQSequence) -> list[ProfileRow]:
    """Both magnitude profiles, one row per shift."""
    c1 = aacf_sum_profile(x, y)
    c2 = accf_sym_sum_profile(x, y)
    return [
        ProfileRow(tau=tau, aacf_sum_abs=float(a), accf_sym_sum_abs=float(b))
        for tau, (a, b) in enumerate(zip(c1, c2))
    ]


def write_profile_csv(rows: list[ProfileRow], fh: TextIO) -> None:
    """Write profile rows as ``tau,aacf_sum_abs,accf_sym_sum_abs`` CSV."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(PROFILE_HEADER)
    for row in rows:
        writer.writerow([row.tau, f"{row.aacf_sum_abs:.15g}", f"{row.accf_sym_sum_abs:.15g}"])


def _zero_flags(
    x: ModQSequence, y: ModQSequence, zero_test: ZeroTest, tolerance: float
) -> tuple[np.ndarray, np.ndarray]:
    c1 = is_zero_tally(aacf_sum_tallies(x, y), x.q, zero_test, tolerance)
    c2 = is_zero_tally(accf_sym_sum_tallies(x, y), x.q, zero_test, tolerance)
    return c1, c2


def _leading_run(flags: np.ndarray) -> int:
    misses = np.flatnonzero(~flags)
    return int(misses[0]) if misses.size else len(flags)


def _largest_z(c1_zero: np.ndarray, c2_zero: np.ndarray, N: int) -> int:
    # C1 must hold on 1..Z and C1, C2 on N-Z..N-1, so Z is capped by the two runs of zeros
    head = _leading_run(c1_zero[1:])
    tail = _leading_run((c1_zero & c2_zero)[:0:-1])
    return min(head, tail, N // 2)


def _verdict(
    N: int, Z_claimed: int | None, Z_achieved: int, c1: list[int], c2: list[int]
) -> CzcpVerdict:
    return CzcpVerdict(
        N=N,
        Z_claimed=Z_claimed,
        Z_achieved=Z_achieved,
        ratio=Fraction(2 * Z_achieved, N),
        perfect=N % 2 == 0 and Z_achieved == N // 2,
        c1_violations=c1,
        c2_violations=c2,
    )


def verify_czcp(
    x: ModQSequence,
    y: ModQSequence,
    Z: int,
    zero_test: ZeroTest = "auto",
    tolerance: float = DEFAULT_TOLERANCE,
) -> CzcpVerdict:
    """Check conditions C1 (shifts ``1..Z`` and ``N-Z..N-1``) and C2 (``N-Z..N-1``).

    Negative shifts are covered by conjugate symmetry,
    ``rho_{x,y}(-tau) = conj(rho_{y,x}(tau))``.

    Raises:
        ValueError: If ``Z`` is outside ``1..N//2`` or the sequences are incompatible
    """
    _require_pair(x, y)
    N = len(x)
    if not 1 <= Z <= N // 2:
        raise ValueError(f"Z={Z} out of range for N={N} (must be in 1..{N // 2})")
    c1_zero, c2_zero = _zero_flags(x, y, zero_test, tolerance)
    t1_t2 = sorted(set(range(1, Z + 1)) | set(range(N - Z, N)))
    c1_violations = [t for t in t1_t2 if not c1_zero[t]]
    c2_violations = [t for t in range(N - Z, N) if not c2_zero[t]]
    if c1_violations or c2_violations:
        logger.debug(f"Z={Z} fails: C1 at {c1_violations}, C2 at {c2_violations}")
    return _verdict(N, Z, _largest_z(c1_zero, c2_zero, N), c1_violations, c2_violations)


def max_zcz(
    x: ModQSequence,
    y: ModQSequence,
    zero_test: ZeroTest = "auto",
    tolerance: float = DEFAULT_TOLERANCE,
) -> CzcpVerdict:
    """Largest ZCZ width for which the pair satisfies C1 and C2."""
    _require_pair(x, y)
    c1_zero, c2_zero = _zero_flags(x, y, zero_test, tolerance)
    return _verdict(len(x), None, _largest_z(c1_zero, c2_zero, len(x)), [], [])
