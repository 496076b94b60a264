"""Exhaustive generation of distinct-part and unrefinable partitions.

Two independent routes are provided on purpose:

* :func:`enumerate_distinct` is a plain ascending backtracking generator over
  partitions into distinct parts; combined with the unrefinability predicate
  it is the naive oracle.
* :func:`enumerate_unrefinable` picks parts largest-first and prunes the
  moment a violation becomes possible.  When a value is skipped it becomes
  missing, and any part equal to a sum of two missing values exceeds both of
  them, hence was already decided; testing each new missing value against the
  previously skipped ones is therefore a complete mid-search rejection test,
  and finished branches need no post-hoc filter.

The test suite asserts set equality of the two routes.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import isqrt
from typing import Iterator

from .core import (
    DistinctPartition,
    is_unrefinable,
    max_part_bounds,
    triangular_context,
)
from .errors import DomainError

_ENTER, _UNDO_TAKE, _TRY_SKIP, _UNDO_SKIP = 0, 1, 2, 3


@dataclass(frozen=True)
class EnumerationConstraints:
    """Search-space description for :func:`enumerate_distinct`."""

    target_sum: int
    max_part: int | None = None
    min_part: int | None = None
    max_len: int | None = None
    unrefinable_only: bool = False
    paper_distinct_only: bool = False

    def validate(self) -> None:
        if self.target_sum < 1:
            raise DomainError(f"target_sum must be >= 1, got {self.target_sum}")
        lo = self.min_part if self.min_part is not None else 1
        hi = self.max_part if self.max_part is not None else self.target_sum
        if lo < 1:
            raise DomainError(f"min_part must be >= 1, got {lo}")
        if not lo <= hi <= self.target_sum:
            raise DomainError(
                f"need min_part <= max_part <= target_sum, got {lo}, {hi}, "
                f"{self.target_sum}"
            )
        if self.max_len is not None and self.max_len < 1:
            raise DomainError(f"max_len must be >= 1, got {self.max_len}")


def _ascending_distinct(
    remaining: int,
    lo: int,
    hi: int,
    slots: int | None,
    prefix: list[int],
) -> Iterator[tuple[int, ...]]:
    """Distinct parts chosen smallest-first; emission order is lexicographic
    on the ascending tuples because candidates are tried in increasing order.
    """
    for p in range(lo, min(remaining, hi) + 1):
        rest = remaining - p
        if rest == 0:
            yield tuple(prefix) + (p,)
            continue
        if rest <= p:
            continue  # the next part would have to exceed p
        if slots is not None and slots <= 1:
            continue
        k = hi - p if slots is None else min(hi - p, slots - 1)
        if k <= 0 or rest > k * hi - k * (k - 1) // 2:
            continue  # more than the k largest available values could supply
        prefix.append(p)
        yield from _ascending_distinct(
            rest, p + 1, hi, None if slots is None else slots - 1, prefix
        )
        prefix.pop()


def enumerate_distinct(
    constraints: EnumerationConstraints,
) -> Iterator[DistinctPartition]:
    """All distinct-part partitions satisfying the constraints, each exactly
    once, in ascending lexicographic order."""
    constraints.validate()
    lo = constraints.min_part if constraints.min_part is not None else 1
    hi = (
        constraints.max_part
        if constraints.max_part is not None
        else constraints.target_sum
    )
    min_len = 2 if constraints.paper_distinct_only else 1
    for parts in _ascending_distinct(
        constraints.target_sum, lo, hi, constraints.max_len, []
    ):
        if len(parts) < min_len:
            continue
        partition = DistinctPartition(parts)
        if constraints.unrefinable_only and not is_unrefinable(partition):
            continue
        yield partition


def _walk_bounds(total: int) -> tuple[int, int]:
    """Largest-part interval the pruned walk scans.

    The window lower bound n always holds (t distinct parts with largest part
    L sum to at most T_L, so T_L >= total > T_{n-1}).  The upper bounds
    2n-4 / 2n-2 hold from the n = 6 window on; smaller totals fall back to
    the trivial bound total itself.
    """
    ctx = triangular_context(total)
    if ctx.n <= 5:
        return ctx.n, total
    return ctx.n, 2 * ctx.n - 4 if ctx.is_triangular else 2 * ctx.n - 2


def _walk(
    total: int,
    first: int,
    second: int | None = -1,
) -> Iterator[tuple[int, ...]]:
    """Depth-first walk over unrefinable partitions of ``total`` whose largest
    part is ``first``, emitting ascending tuples.

    Values first-1, first-2, ... are decided in turn: either taken as a part
    or recorded as missing.  A missing value w forces p - w to be a part for
    every placed part p (otherwise w and p - w, both missing, would sum to
    p), so each skip commits the still undecided differences p - w < w.  Any
    sum violation p = v + w has p decided before w and w before v, hence the
    committed set is exactly the set of values whose skip would create a
    violation: rejection is a single membership test, complete the moment the
    smaller missing value would be created.  Dead branches are additionally
    cut when

    * the remainder exceeds the total of all values below the frontier, or
      the committed values no longer fit in the remainder;
    * the missing-count bound is unreachable: an unrefinable partition with
      largest part L has at most floor(L/2) missing values, and a branch at
      frontier v with remainder r and c committed values gains at least
      v - c - k skips, where k is the largest k with T_k <= r minus the
      committed sum (the most extra parts the leftover budget can fund).

    ``second`` restricts the walk to one shard: the exact second-largest part
    (0 for the single-part shard).  The default -1 explores all shards.
    """
    rem = total - first
    parts = [first]  # kept descending
    n_missing = 0
    start = first - 1
    missing_cap = first // 2
    forced = bytearray(first)  # forced[u] == 1: u is committed to be a part
    n_forced = 0
    forced_sum = 0

    if second != -1:
        floor = 1 if second is None else second + 1
        for v in range(first - 1, floor - 1, -1):
            if forced[v] or n_missing == missing_cap:
                return
            n_missing += 1
            # Only parts in (v, 2v) yield still-undecided differences.
            for p in reversed(parts):
                if p >= 2 * v:
                    break
                u = p - v
                if not forced[u]:
                    forced[u] = 1
                    n_forced += 1
                    forced_sum += u
        if second is None:
            if rem == 0:
                yield (first,)
            return
        if second > rem:
            return
        if forced[second]:
            forced[second] = 0
            n_forced -= 1
            forced_sum -= second
        parts.append(second)
        rem -= second
        start = second - 1

    # Stack frames are (value, action, aux); aux carries undo payloads: for
    # _UNDO_TAKE whether the part was a committed value, for _UNDO_SKIP the
    # commitments the skip created.
    stack: list[tuple[int, int, object]] = [(start, _ENTER, 0)]
    while stack:
        v, action, aux = stack.pop()
        if action == _ENTER:
            spare = rem - forced_sum
            if rem > v * (v + 1) // 2 or spare < 0:
                continue  # nothing mutated yet
            max_parts = n_forced + (isqrt(8 * spare + 1) - 1) // 2
            if n_missing + v - max_parts > missing_cap:
                continue  # forced skips would exceed the missing-count bound
            if v == 0:
                if rem == 0:
                    yield tuple(reversed(parts))
                continue
            if forced[v]:
                if v <= rem:
                    forced[v] = 0
                    n_forced -= 1
                    forced_sum -= v
                    parts.append(v)
                    rem -= v
                    stack.append((v, _UNDO_TAKE, 1))
                    stack.append((v - 1, _ENTER, 0))
                continue  # skipping a committed value is a contradiction
            if v <= rem:
                parts.append(v)
                rem -= v
                stack.append((v, _UNDO_TAKE, 0))
                stack.append((v - 1, _ENTER, 0))
                continue
            action = _TRY_SKIP
        if action == _UNDO_TAKE:
            parts.pop()
            rem += v
            if aux:
                forced[v] = 1
                n_forced += 1
                forced_sum += v
                continue
            action = _TRY_SKIP
        if action == _TRY_SKIP:
            # v is not committed here: ENTER rules committed values out of
            # both fall-through paths, so no sum violation is possible.
            if n_missing == missing_cap:
                continue
            n_missing += 1
            added: list[int] = []
            for p in reversed(parts):  # only parts in (v, 2v) matter
                if p >= 2 * v:
                    break
                u = p - v
                if not forced[u]:
                    forced[u] = 1
                    n_forced += 1
                    forced_sum += u
                    added.append(u)
            stack.append((v, _UNDO_SKIP, added))
            stack.append((v - 1, _ENTER, 0))
            continue
        # _UNDO_SKIP
        n_missing -= 1
        for u in aux:  # type: ignore[union-attr]
            forced[u] = 0
            n_forced -= 1
            forced_sum -= u


def enumerate_unrefinable(total: int) -> Iterator[DistinctPartition]:
    """Exactly the unrefinable partitions of ``total``, ascending
    lexicographically.  Equals filtering :func:`enumerate_distinct` by the
    unrefinability predicate; the walk just never materializes refinable
    suffixes."""
    lo, hi = _walk_bounds(total)
    found: list[tuple[int, ...]] = []
    for first in range(lo, hi + 1):
        found.extend(_walk(total, first))
    found.sort()
    return (DistinctPartition(parts) for parts in found)


def _shards(total: int) -> list[tuple[int, int | None]]:
    """(largest, second-largest) shard keys covering the whole search forest."""
    lo, hi = _walk_bounds(total)
    shards: list[tuple[int, int | None]] = []
    for first in range(lo, hi + 1):
        if first == total:
            shards.append((first, None))
        for second in range(first - 1, 0, -1):
            shards.append((first, second))
    return shards


def _count_shard(args: tuple[int, int, int | None]) -> int:
    total, first, second = args
    return sum(1 for _ in _walk(total, first, second))


def count_unrefinable(total: int, threads: int = 1) -> int:
    """Number of unrefinable partitions of ``total``.

    Shards are independent, so the result is identical for any worker count.
    """
    if threads < 1:
        raise DomainError(f"threads must be >= 1, got {threads}")
    if threads == 1:
        lo, hi = _walk_bounds(total)
        return sum(1 for first in range(lo, hi + 1) for _ in _walk(total, first))
    tasks = [(total, first, second) for first, second in _shards(total)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return sum(pool.map(_count_shard, tasks))


def maximal_unrefinable_bruteforce(total: int) -> set[DistinctPartition]:
    """The unrefinable partitions of ``total`` whose largest part attains the
    maximum, found by scanning largest parts downward from the proven upper
    bound until a level is populated."""
    lo, hi = _walk_bounds(total)
    for first in range(hi, lo - 1, -1):
        level = {DistinctPartition(parts) for parts in _walk(total, first)}
        if level:
            return level
    raise AssertionError(f"no unrefinable partition of {total} found")
