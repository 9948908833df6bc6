"""Enumeration of every stamp base with a given threshold level h0.

The walk extends a prefix 1 = a_1 < a_2 < ... one denomination at a time.
Candidates for a_i run from a_{i-1} + 1 up to the first value with no
h0-representation over the prefix (`admissible_max`): a larger a_i would
leave that value uncoverable forever, pinning the threshold above h0.

Along the way the walk tracks v, the smallest value whose minimal generation
over the prefix needs exactly h0 stamps (0 while no such value exists).
Denominations at or beyond v can never lower its cost, so once set, v is
final and v - 1 = n(h0 - 1) for every completion of the prefix.  A full set
is reported iff v > 0 at the leaf: v = 0 means everything below a_k is
coverable at h0 - 1, so the true threshold is lower than h0.

The skip-ahead optimisation: when a_i - 1 has a generation of weight
h < h0, the next candidates a_i + 1, a_i + 2, ... can be accepted without
re-probing while h + steps stays below h0 (each step costs at most one more
1-stamp).  Skipped values are provably non-critical (their minimal cost is
below h0), so v needs no update.  `enumerate_sets(skip_ahead=False)`
disables this, and `enumerate_sets_reference` is an independently coded
brute filter; the test suite holds all three routes equal.

`forced` pins a_2 (or a_2, a_3, ...) to fixed values, enumerating one
prefix cell; the scanner partitions work and checkpoints completion in
units of such cells.  Forcing replays the probe sequence of the plain loop
across the skipped candidates, so v is exactly what the full walk would
have passed down.
"""

from __future__ import annotations

from typing import Callable, Sequence

from .analysis import compute_h0
from .core import ReachTable, StampSet

__all__ = ["admissible_max", "enumerate_sets", "enumerate_sets_reference"]

Visitor = Callable[[tuple[int, ...], int], None]


def admissible_max(prefix: Sequence[int], h0: int) -> int:
    """Smallest value with no h0-representation over the prefix.

    The next denomination after prefix may range over
    (prefix[-1], admissible_max].
    """
    return ReachTable(prefix, h0).first_unreachable(h0)


def enumerate_sets(
    k: int,
    h0: int,
    visitor: Visitor,
    *,
    forced: Sequence[int] = (),
    skip_ahead: bool = True,
    _leaf_tables: bool = False,
) -> int:
    """Visit every base {1, a_2, ..., a_k} whose threshold is exactly h0.

    Calls visitor(set, n0) once per base, in lexicographic (a_2, ..., a_k)
    order, with n0 = n(h0 - 1) of the full set.  `forced` pins the leading
    denominations a_2, a_3, ... to the given values (an empty walk results
    if they are not admissible).  Returns the number of sets visited.

    With _leaf_tables=True the visitor is called as visitor(set, n0, table)
    where table is the prefix reach table over a_1..a_{k-1} at depth h0
    (internal hook for the scanner's classification kernel).
    """
    if k < 2:
        raise ValueError("need k >= 2")
    if h0 < 2:
        raise ValueError("need h0 >= 2")
    if len(forced) > k - 1:
        raise ValueError("more forced values than free positions")

    a = [0] * (k + 1)  # 1-based positions a[1..k]
    a[1] = 1
    visited = 0

    def emit(v: int, table: ReachTable) -> None:
        nonlocal visited
        visited += 1
        if _leaf_tables:
            visitor(tuple(a[1:]), v - 1, table)
        else:
            visitor(tuple(a[1:]), v - 1)

    def walk(i: int, v: int, table: ReachTable) -> None:
        # table covers a[1..i-1] at depth h0
        cand = a[i - 1] + 1
        if i - 2 < len(forced):
            target = forced[i - 2]
            if target < cand:
                return
            # replay the plain loop's probes over the skipped candidates
            for c in range(cand, target + 1):
                h = table.min_weight(c - 1)
                if h is None:
                    return  # target lies past admissible_max
                if v == 0 and h == h0:
                    v = c - 1
            a[i] = target
            if i == k:
                if v > 0:
                    emit(v, table)
            else:
                walk(i + 1, v, table.extended(target))
            return

        while True:
            h = table.min_weight(cand - 1)
            if h is None:
                return  # first value with no h0-generation: no candidates left
            if v == 0 and h == h0:
                v = cand - 1
            while True:
                a[i] = cand
                if i == k:
                    if v > 0:
                        emit(v, table)
                else:
                    walk(i + 1, v, table.extended(cand))
                cand += 1
                h += 1
                if not skip_ahead or h >= h0:
                    break

    walk(2, 0, ReachTable((1,), h0))
    return visited


def enumerate_sets_reference(k: int, h0: int, visitor: Visitor) -> int:
    """Independently coded brute filter over the same candidate space.

    Bounds each a_i by admissible_max and decides membership at the leaf by
    recomputing the threshold from scratch.  Slow; exists to pin down
    `enumerate_sets` in differential tests.
    """
    if k < 2:
        raise ValueError("need k >= 2")
    if h0 < 2:
        raise ValueError("need h0 >= 2")
    a = [1]
    visited = 0

    def rec() -> None:
        nonlocal visited
        if len(a) == k:
            s = StampSet(a)
            got, n0 = compute_h0(s)
            if got == h0:
                visited += 1
                visitor(tuple(a), n0)
            return
        for nxt in range(a[-1] + 1, admissible_max(a, h0) + 1):
            a.append(nxt)
            rec()
            a.pop()

    rec()
    return visited
