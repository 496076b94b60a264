"""Maximal unrefinable partitions of triangular numbers.

An unrefinable partition of T_n is *maximal* when its largest part attains
the admissible maximum (2n-4 once n >= 6).  Beyond the window constructions
pi_n and pi_tilde, maximal partitions exist only for odd n and are described
by which values a_1 < ... < a_h <= n were removed from (1, 2, ..., n): the
three largest removed values form one of four admissible triples (the class
letter), every other removed value a < n - 4 is mirrored by the replacement
part 2n-4-a, and 2n-4 itself is added.

This module turns that description into a constructive generator (tuples of
removed values with a fixed class sum, assembled by mirroring, kept iff the
generic unrefinability predicate accepts), plus the closed-form class counts,
the admissible range of h per class, the minimal-excludant minimum, and the
bounded-partition count identity that the class populations satisfy.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Iterator

from .core import (
    DistinctPartition,
    _mex_of_parts,
    _refinable_mask,
    _refinable_parts,
    _slot_state,
    complete_partition,
    pi_tilde,
    triangular,
    triangular_context,
)
from .errors import (
    DomainError,
    IsComplete,
    NotMaximal,
    NotTriangularSum,
    NotUnrefinable,
)

CLASS_LETTERS = ("A", "B", "C", "D")

# The three largest removed values per class, as offsets below n.
_TRIPLE_OFFSETS = {"A": (4, 3, 2), "B": (4, 2, 1), "C": (3, 2, 0), "D": (2, 1, 0)}
# Their sums: 3n - offset.
_TRIPLE_SUM_OFFSET = {"A": 9, "B": 7, "C": 5, "D": 3}
# h_max = floor((1 + sqrt(c + 4n)) / 2).
_H_MAX_RADICAND = {"A": 5, "B": 13, "C": 21, "D": 29}
# Smallest n with a populated h = 5 class; the count then grows every 4.
_H5_BASE = {"A": 19, "B": 17, "C": 15, "D": 17}
# For h >= 6 the class is populated iff n >= h^2 - h - c.
_H6_OFFSET = {"A": 1, "B": 3, "C": 5, "D": 7}
# Bounded-count parameters: f = (-h^3 + 6h^2 + (n - c1)h - 4n + c2) / 2 and
# g = (n - h^2 + 3h - c3) / 2.
_FG_F = {"A": (8, 2), "B": (6, -6), "C": (4, -14), "D": (2, -22)}
_FG_G = {"A": 5, "B": 3, "C": 1, "D": -1}


@dataclass(frozen=True)
class RemovalSignature:
    """A partition of T_n written as edits of (1, 2, ..., n): removed values
    ``a`` (ascending, all <= n) and replacement parts ``alpha`` (all > n)."""

    n: int
    a: tuple[int, ...]
    alpha: tuple[int, ...]

    @property
    def h(self) -> int:
        return len(self.a)

    @property
    def j(self) -> int:
        return len(self.alpha)


@dataclass(frozen=True)
class MaximalClass:
    """Classification tag: ``complete`` / ``pi_tilde``, or a letter with h."""

    kind: str
    h: int | None = None

    @property
    def label(self) -> str:
        return self.kind if self.h is None else f"{self.kind}{self.h}"


@dataclass(frozen=True)
class BoundedCountSpec:
    """Count partitions of ``total`` into exactly ``parts`` distinct values,
    each between 1 and ``max_part``."""

    total: int
    parts: int
    max_part: int


def _check_class(cls: str) -> None:
    if cls not in _TRIPLE_OFFSETS:
        raise DomainError(f"class must be one of {CLASS_LETTERS}, got {cls!r}")


def _check_odd(n: int) -> None:
    if n < 7 or n % 2 == 0:
        raise DomainError(f"need odd n >= 7, got {n}")


def _class_triple(n: int, cls: str) -> tuple[int, int, int]:
    lo, mid, hi = _TRIPLE_OFFSETS[cls]
    return (n - lo, n - mid, n - hi)


def removal_signature(partition: DistinctPartition, n: int) -> RemovalSignature:
    """Removed values and replacements of an unrefinable partition of T_n."""
    if partition.total != triangular(n):
        raise NotTriangularSum(
            f"partition sums to {partition.total}, not T_{n} = {triangular(n)}"
        )
    parts = partition.parts
    if parts == tuple(range(1, n + 1)):
        raise IsComplete(f"(1, ..., {n}) has no removed values")
    removed: list[int] = []
    prev = 0
    split = len(parts)
    for i, p in enumerate(parts):
        if p > n:
            split = i
            break
        removed.extend(range(prev + 1, p))
        prev = p
    removed.extend(range(prev + 1, n + 1))
    alpha = parts[split:]
    assert sum(removed) == sum(alpha), "removed and replacement sums differ"
    return RemovalSignature(n, tuple(removed), alpha)


def classify_maximal(partition: DistinctPartition) -> MaximalClass:
    """Assign a maximal unrefinable partition its classification tag.

    Validates the claim first: the sum must be triangular, the partition
    unrefinable, and the largest part maximal for its window.
    """
    ctx = triangular_context(partition.total)
    if not ctx.is_triangular:
        raise NotTriangularSum(f"{partition.total} is not a triangular number")
    n = ctx.n
    if _refinable_parts(partition.parts):
        raise NotUnrefinable(f"({partition}) is refinable")
    if n <= 5:
        # The complete partition is the only unrefinable one in this window.
        return MaximalClass("complete")
    if partition.max_part != 2 * n - 4:
        raise NotMaximal(
            f"largest part {partition.max_part} is below the maximum {2 * n - 4}"
        )
    if partition.parts == pi_tilde(n).parts:
        return MaximalClass("pi_tilde")
    signature = removal_signature(partition, n)
    triple = signature.a[-3:]
    for cls in CLASS_LETTERS:
        if triple == _class_triple(n, cls):
            return MaximalClass(cls, signature.h)
    raise NotMaximal(f"({partition}) matches no admissible removal triple")


def h_range(n: int, cls: str) -> tuple[int, int]:
    """Admissible removal counts for a class: h_min is 5 for D (its h = 4
    case is always refinable) and 4 otherwise; h_max is the largest h whose
    population threshold n >= h^2 - h - c can still hold."""
    _check_odd(n)
    _check_class(cls)
    h_min = 5 if cls == "D" else 4
    h_max = (1 + isqrt(_H_MAX_RADICAND[cls] + 4 * n)) // 2
    return h_min, h_max


def _tuple_sum(n: int, cls: str, h: int) -> int:
    """Required sum of the mirrored removed values a_1 .. a_{h-3}, from
    2*(a_1 + ... + a_{h-3}) + triple_sum = (h-2)(2n-4)."""
    return ((h - 2) * (2 * n - 4) - (3 * n - _TRIPLE_SUM_OFFSET[cls])) // 2


def _ascending_tuples(
    total: int, count: int, lo: int, hi: int
) -> Iterator[tuple[int, ...]]:
    """Strictly ascending count-tuples from [lo, hi] with the given sum."""
    if count == 0:
        if total == 0:
            yield ()
        return
    # Feasibility window for the smallest entry.
    for first in range(lo, hi - count + 2):
        rest = total - first
        span = count - 1
        least = span * first + span * (span + 1) // 2
        most = span * hi - span * (span - 1) // 2
        if rest < least:
            break
        if rest > most:
            continue
        if count == 1:
            if first == total:
                yield (first,)
            continue
        for tail in _ascending_tuples(rest, span, first + 1, hi):
            yield (first,) + tail


class _ClassShape:
    """Per-(n, class) templates for candidate assembly and filtering.

    Candidates of one class differ only in the low removed values, so the
    missing-value slot encoding (see the refinability check in ``core``) and
    the base list of low parts are precomputed once and patched per tuple.
    The filter is the same squared-polynomial test the generic predicate
    runs, just built incrementally; the test suite asserts the equivalence.
    """

    def __init__(self, n: int, cls: str):
        self.n = n
        self.top = 2 * n - 4
        triple = set(_class_triple(n, cls))
        self.base_low = [v for v in range(1, n + 1) if v not in triple]
        slots = bytearray(_slot_state(self.top)[0])
        for v in self.base_low:
            slots[v + v] = 0
        slots[self.top + self.top] = 0
        self.base_slots = bytes(slots)

    def refinable(self, removed_low: tuple[int, ...]) -> bool:
        slots = bytearray(self.base_slots)
        shift = self.top + self.top
        for a in removed_low:
            slots[a + a] = 1  # removed, hence missing
            slots[shift - a - a] = 0  # its mirror is a part
        return _refinable_mask(int.from_bytes(slots, "little"), self.top)

    def assemble(self, removed_low: tuple[int, ...]) -> tuple[int, ...]:
        """Low removed values are all below n - 4, so value v sits at index
        v - 1 of the base low list; splice around those indices and append
        the mirrored replacements and the largest part."""
        base = self.base_low
        out: list[int] = []
        prev = 0
        for a in removed_low:
            out.extend(base[prev : a - 1])
            prev = a
        out.extend(base[prev:])
        out.extend(self.top - a for a in reversed(removed_low))
        out.append(self.top)
        return tuple(out)


def class_members(
    n: int, cls: str, h: int, *, search_floor: int | None = None
) -> tuple[list[DistinctPartition], int]:
    """All members of one class, with the number of rejected candidates.

    Candidates are the ascending (h-3)-tuples of low removed values within
    [(n-3)/2, n-5] having the class's fixed sum; each assembled partition is
    kept iff the generic unrefinability predicate accepts it.  The lower end
    of the search window is the minimal-excludant bound; pass
    ``search_floor=1`` to confirm nothing below it ever survives.
    """
    _check_odd(n)
    _check_class(cls)
    if h < 4:
        raise DomainError(f"need h >= 4, got {h}")
    lo = (n - 3) // 2 if search_floor is None else search_floor
    shape = _ClassShape(n, cls)
    kept: list[DistinctPartition] = []
    rejected = 0
    for tup in _ascending_tuples(_tuple_sum(n, cls, h), h - 3, lo, n - 5):
        if shape.refinable(tup):
            rejected += 1
        else:
            kept.append(DistinctPartition(shape.assemble(tup)))
    return kept, rejected


def iter_maximal(
    n: int, *, search_floor: int | None = None
) -> Iterator[DistinctPartition]:
    """All maximal unrefinable partitions of T_n, lazily.

    n <= 5 gives the complete partition, even n >= 6 only pi_tilde, and odd
    n >= 7 pi_tilde plus the four class families.
    """
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    if n <= 5:
        yield complete_partition(n)
        return
    yield pi_tilde(n)
    if n % 2 == 0:
        return
    for cls in CLASS_LETTERS:
        h_min, h_max = h_range(n, cls)
        for h in range(h_min, h_max + 1):
            members, _ = class_members(n, cls, h, search_floor=search_floor)
            yield from members


def generate_maximal(
    n: int, *, search_floor: int | None = None
) -> set[DistinctPartition]:
    """The set of maximal unrefinable partitions of T_n."""
    return set(iter_maximal(n, search_floor=search_floor))


def class_count(n: int, cls: str, h: int) -> int:
    """Population of one class, in closed form where one exists.

    h = 4: empty for D, and 0/1 elsewhere once n clears the class threshold
    (9 for C, 11 for A and B).  h = 5: writing n = base + 2k the population
    is floor(k/2) + 1, with base 15 for C, 17 for B and D, 19 for A.
    h >= 6: empty below n = h^2 - h - c, otherwise counted by the bounded
    fixed-sum tuple enumeration (no closed form exists).
    """
    _check_odd(n)
    _check_class(cls)
    if h < 4:
        raise DomainError(f"need h >= 4, got {h}")
    if h == 4:
        if cls == "D":
            return 0
        threshold = 9 if cls == "C" else 11
        return 1 if n >= threshold else 0
    if h == 5:
        base = _H5_BASE[cls]
        if n < base:
            return 0
        k = (n - base) // 2
        return k // 2 + 1
    if n < h * h - h - _H6_OFFSET[cls]:
        return 0
    lo = (n - 3) // 2
    shift = lo - 1
    spec = BoundedCountSpec(
        total=_tuple_sum(n, cls, h) - (h - 3) * shift,
        parts=h - 3,
        max_part=n - 5 - shift,
    )
    return bounded_partition_count(spec)


def min_mex_maximal(n: int) -> int:
    """Smallest minimal excludant over the maximal unrefinable partitions of
    T_n; equals (n-3)/2 as soon as the singleton C class exists (n >= 9)."""
    _check_odd(n)
    return min(_mex_of_parts(p.parts) for p in iter_maximal(n))


def fg_spec(n: int, h: int, cls: str) -> BoundedCountSpec:
    """Bounded-count parameters equivalent to a class population: the class
    members for h >= 6 correspond to partitions of f(n, h) into h-3 distinct
    parts bounded by g(n, h), via shifting each removed value down by the
    class's minimal first removal."""
    _check_odd(n)
    _check_class(cls)
    if h < 4:
        raise DomainError(f"need h >= 4, got {h}")
    c1, c2 = _FG_F[cls]
    f = (-(h**3) + 6 * h * h + (n - c1) * h - 4 * n + c2) // 2
    g = (n - h * h + 3 * h - _FG_G[cls]) // 2
    return BoundedCountSpec(total=f, parts=h - 3, max_part=g)


_COUNT_SLOT = 64  # partition counts for the totals used here fit comfortably


def bounded_partition_count(spec: BoundedCountSpec) -> int:
    """Number of partitions of ``total`` into exactly ``parts`` distinct
    values from [1, max_part]; 0 for infeasible specs (including negative
    totals).

    Layered subset-sum over 1..max_part, one big-integer polynomial per
    subset size with 64-bit coefficient slots (counts stay far below 2**64
    for the totals where the slot encoding is used).
    """
    total, parts, cap = spec.total, spec.parts, spec.max_part
    if parts < 0 or total < 0 or cap < 0:
        return 0
    if parts == 0:
        return 1 if total == 0 else 0
    if cap < parts or total > parts * cap - parts * (parts - 1) // 2:
        return 0
    slot = _COUNT_SLOT
    trim = (1 << ((total + 1) * slot)) - 1
    layers = [0] * (parts + 1)
    layers[0] = 1
    for v in range(1, cap + 1):
        shifted = v * slot
        for j in range(min(parts, v), 0, -1):
            layers[j] = (layers[j] + (layers[j - 1] << shifted)) & trim
    return (layers[parts] >> (total * slot)) & ((1 << slot) - 1)
