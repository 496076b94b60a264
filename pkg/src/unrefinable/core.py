"""Value types and pure predicates for partitions into distinct parts.

A partition here is a strictly increasing tuple of positive integers.  The
values in {1, ..., max_part} that are absent are its *missing parts*; the
partition is *unrefinable* when no part equals the sum of two distinct
missing parts (otherwise that part could be split, refining the partition).

Everything in this module is an immutable value or a pure function, safe to
share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Iterable, Sequence

from .errors import DomainError, DuplicatePart, NonPositivePart


@dataclass(frozen=True)
class DistinctPartition:
    """A partition into distinct parts, stored ascending.

    ``t >= 1`` is allowed internally; the classical definition of a partition
    into distinct parts additionally requires at least two parts, exposed
    here as :attr:`is_paper_distinct`.
    """

    parts: tuple[int, ...]

    @property
    def t(self) -> int:
        """Number of parts."""
        return len(self.parts)

    @property
    def max_part(self) -> int:
        return self.parts[-1]

    @property
    def total(self) -> int:
        return sum(self.parts)

    @property
    def is_paper_distinct(self) -> bool:
        """True when the partition has at least two parts."""
        return len(self.parts) >= 2

    def __iter__(self):
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __contains__(self, value: int) -> bool:
        return value in self.parts

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts)


@dataclass(frozen=True)
class MissingAnalysis:
    """The missing parts of a partition: {1, ..., max_part} minus the parts."""

    missing: tuple[int, ...]

    @property
    def m(self) -> int:
        """Number of missing parts."""
        return len(self.missing)

    @property
    def mex(self) -> int:
        """Least missing value, or 0 when nothing is missing."""
        return self.missing[0] if self.missing else 0


@dataclass(frozen=True)
class TriangularContext:
    """The triangular window an integer sits in: T_{n-1} < N <= T_n."""

    n: int
    t_n: int
    d: int

    @property
    def is_triangular(self) -> bool:
        return self.d == 0


def triangular(n: int) -> int:
    """n-th triangular number n(n+1)/2."""
    return n * (n + 1) // 2


def make_partition(values: Iterable[int]) -> DistinctPartition:
    """Validate and canonicalize a collection of parts (sorted ascending).

    Raises NonPositivePart or DuplicatePart; the input may be in any order.
    """
    parts = tuple(sorted(values))
    if not parts:
        raise DomainError("a partition needs at least one part")
    if parts[0] < 1:
        raise NonPositivePart(f"parts must be positive, got {parts[0]}")
    for a, b in zip(parts, parts[1:]):
        if a == b:
            raise DuplicatePart(f"part {a} appears more than once")
    return DistinctPartition(parts)


def analyze_missing(partition: DistinctPartition) -> MissingAnalysis:
    """Missing parts, their count, and the minimal excludant."""
    present = set(partition.parts)
    top = partition.parts[-1]
    missing = tuple(v for v in range(1, top + 1) if v not in present)
    return MissingAnalysis(missing)


def _mex_of_parts(parts: Sequence[int]) -> int:
    """Least positive integer that is not a part; 0 for (1, 2, ..., t).

    Binary search over the dense prefix: parts[i] == i + 1 up to the first
    gap, and parts[i] > i + 1 after it.
    """
    if parts[0] != 1:
        return 1
    lo, hi = 0, len(parts)  # invariant: parts[i] == i + 1 for i < lo
    while lo < hi:
        mid = (lo + hi) // 2
        if parts[mid] == mid + 1:
            lo = mid + 1
        else:
            hi = mid
    return 0 if lo == len(parts) else lo + 1


@lru_cache(maxsize=1024)
def _slot_state(top: int) -> tuple[bytes, int]:
    """All-missing slot template for values 1..top, and it as an integer."""
    template = b"\x00\x00" + b"\x01\x00" * top
    return template, int.from_bytes(template, "little")


def _refinable_mask(missing_mask: int, top: int) -> bool:
    """Shared tail of the refinability check: does any part slot of the
    squared missing polynomial hold a coefficient >= 2?"""
    ones = _slot_state(top)[1]
    # (ones - mask) flags the parts; scaling by 0xFFFE puts a bit mask over
    # everything but the units bit of each 16-bit slot, so the AND is nonzero
    # exactly when some part has two or more ordered missing-pair sums.
    return (missing_mask * missing_mask) & ((ones - missing_mask) * 0xFFFE) != 0


def _refinable_parts(parts: Sequence[int]) -> bool:
    """True when some part is the sum of two distinct missing values.

    Missing values are encoded as a 0/1 polynomial with 16-bit coefficient
    slots packed into one big integer; squaring it counts, for every s, the
    ordered pairs of missing values summing to s.  A coefficient >= 2 at a
    part's slot is exactly a violating pair (the lone a + a = s case yields
    coefficient 1).  Coefficients never exceed 2 * max_part + 1 < 2**16, so
    slots cannot bleed into each other.
    """
    top = parts[-1]
    slots = bytearray(_slot_state(top)[0])
    for p in parts:
        slots[p + p] = 0
    return _refinable_mask(int.from_bytes(slots, "little"), top)


def is_unrefinable(partition: DistinctPartition) -> bool:
    """True when no part equals the sum of two distinct missing parts."""
    return not _refinable_parts(partition.parts)


def refinability_witness(
    partition: DistinctPartition,
) -> tuple[int, int, int] | None:
    """Lexicographically least (missing_i, missing_j, part) with
    missing_i + missing_j == part, or None when the partition is unrefinable.

    Deliberately a direct scan of missing pairs, independent of the encoding
    used by :func:`is_unrefinable`.
    """
    present = set(partition.parts)
    missing = analyze_missing(partition).missing
    for i, a in enumerate(missing):
        for b in missing[i + 1 :]:
            if a + b in present:
                return (a, b, a + b)
    return None


def complete_partition(n: int) -> DistinctPartition:
    """(1, 2, ..., n)."""
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    return DistinctPartition(tuple(range(1, n + 1)))


def near_complete(n: int, d: int) -> DistinctPartition:
    """(1, 2, ..., n) with the single part d removed; requires 1 <= d <= n - 1."""
    if not 1 <= d <= n - 1:
        raise DomainError(f"need 1 <= d <= n - 1, got n={n}, d={d}")
    return DistinctPartition(tuple(v for v in range(1, n + 1) if v != d))


def pi_tilde(n: int) -> DistinctPartition:
    """(1, 2, ..., n-3, n+1, 2n-4): sums to T_n, unrefinable, largest part 2n-4.

    Its least missing values are n-2 and n-1, and (n-2) + (n-1) > 2n-4, so no
    pair of missing values reaches any part.
    """
    if n < 6:
        raise DomainError(f"need n >= 6, got {n}")
    return DistinctPartition(tuple(range(1, n - 2)) + (n + 1, 2 * n - 4))


def triangular_context(total: int) -> TriangularContext:
    """Least n with T_n >= total, together with the deficit d = T_n - total."""
    if total < 1:
        raise DomainError(f"need a positive integer, got {total}")
    n = (isqrt(8 * total + 1) - 1) // 2  # largest n with T_n <= total
    if triangular(n) != total:
        n += 1
    return TriangularContext(n, triangular(n), triangular(n) - total)


# Exact (min, max) of the largest part over unrefinable partitions of N for
# N below T_6 = 21, where the general window bounds do not yet apply
# (e.g. (1,2,3) |- 6 has largest part 3 > 2*3-4).  Re-derived by exhaustive
# enumeration in the test suite.
_SMALL_N_MAX_PART_RANGE: dict[int, tuple[int, int]] = {
    1: (1, 1),
    2: (2, 2),
    3: (2, 2),
    4: (3, 3),
    5: (3, 4),
    6: (3, 3),
    7: (4, 4),
    8: (4, 5),
    9: (4, 6),
    10: (4, 4),
    11: (5, 6),
    12: (5, 6),
    13: (5, 7),
    14: (5, 8),
    15: (5, 5),
    16: (6, 8),
    17: (6, 7),
    18: (6, 8),
    19: (6, 9),
    20: (6, 10),
}


def max_part_bounds(total: int) -> tuple[int, int]:
    """Interval guaranteed to contain the largest part of every unrefinable
    partition of ``total``.

    For total >= 21 the window bounds apply: n <= max_part <= 2n-4 when the
    total is the triangular number T_n, and n <= max_part <= 2n-2 otherwise.
    Smaller totals use a precomputed table of exact extremes.
    """
    if total < 1:
        raise DomainError(f"need a positive integer, got {total}")
    if total < 21:
        return _SMALL_N_MAX_PART_RANGE[total]
    ctx = triangular_context(total)
    upper = 2 * ctx.n - 4 if ctx.is_triangular else 2 * ctx.n - 2
    return (ctx.n, upper)


def missing_bound_holds(partition: DistinctPartition) -> bool:
    """Check m <= floor(max_part / 2), which every unrefinable partition obeys:
    for each missing value v, max_part - v must be a part (else v and
    max_part - v would sum to the largest part), so missing values pair off
    injectively with parts below max_part.
    """
    analysis = analyze_missing(partition)
    return analysis.m <= partition.max_part // 2
