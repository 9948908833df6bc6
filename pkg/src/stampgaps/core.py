"""Representability primitives for stamp bases.

A stamp base is a strictly increasing tuple of positive integers
A = {1 = a_1 < a_2 < ... < a_k}.  An h-representation of an integer x is a
coefficient vector (c_1, ..., c_k) of non-negative integers with

    sum(c_i * a_i) = x   and   sum(c_i) <= h.

The h-range n(h) is the largest n such that every value 0..n has an
h-representation (n(0) = 0; the sequence is non-decreasing in h because a
budget-h representation is also a budget-(h+1) one).

Two independent routes to representability live here on purpose:

  * ReachTable -- bitmask reach sets, one big int per weight level s, bit v set
    iff v is representable with weight <= s.  Fast bulk queries; the backbone
    of range computation, enumeration and scanning.
  * can / max_ck_rep / all_reps -- recursive search over coefficients, trying
    larger counts of the largest denomination first.  Slower, but it produces
    actual coefficient vectors and serves as a structurally different
    cross-check of the bitmask route.

Conventions
-----------
Coefficient vectors are stored in denomination order (c_1, ..., c_k); display
order is reversed, largest denomination first, matching the usual tabulation
of these bases.  Weight budgets are called s or h; both are plain ints >= 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

__all__ = [
    "StampSet",
    "Representation",
    "ReachTable",
    "can",
    "find_minimal",
    "max_ck_rep",
    "all_reps",
    "h_range",
]


# ---------- basic types ----------


@dataclass(frozen=True)
class StampSet:
    """A strictly increasing base {1, a_2, ..., a_k} of stamp denominations."""

    a: tuple[int, ...]

    def __init__(self, a: Sequence[int]):
        object.__setattr__(self, "a", tuple(int(v) for v in a))
        if len(self.a) < 2:
            raise ValueError("need at least two denominations")
        if self.a[0] != 1:
            raise ValueError("smallest denomination must be 1")
        for lo, hi in zip(self.a, self.a[1:]):
            if lo >= hi:
                raise ValueError("denominations must be strictly increasing")

    @property
    def k(self) -> int:
        return len(self.a)

    @property
    def ak(self) -> int:
        return self.a[-1]

    def __iter__(self) -> Iterator[int]:
        return iter(self.a)

    def __str__(self) -> str:
        return "{" + ", ".join(str(v) for v in self.a) + "}"


@dataclass(frozen=True)
class Representation:
    """A coefficient vector c_1..c_k (counts, denomination order)."""

    counts: tuple[int, ...]

    @property
    def weight(self) -> int:
        return sum(self.counts)

    def value(self, stamps: StampSet) -> int:
        return sum(c * a for c, a in zip(self.counts, stamps.a))

    def display(self) -> str:
        """Largest denomination first: ``[c_k, ..., c_1]``."""
        return "[" + ", ".join(str(c) for c in reversed(self.counts)) + "]"


# ---------- bitmask reach sets ----------


class ReachTable:
    """Reach sets by weight level, one int bitmask per level.

    masks[s] has bit v set iff v is representable over `denoms` with weight
    <= s.  Levels are cumulative (masks[s-1] is a subset of masks[s]).
    Built iteratively: masks[s] = masks[s-1] | union_i(masks[s-1] << a_i).
    """

    __slots__ = ("denoms", "masks")

    def __init__(self, denoms: Sequence[int], max_weight: int, _masks: list[int] | None = None):
        self.denoms = tuple(denoms)
        if _masks is not None:
            self.masks = _masks
            return
        masks = [1]
        prev = 1
        for _ in range(max_weight):
            nxt = prev
            for a in self.denoms:
                nxt |= prev << a
            masks.append(nxt)
            prev = nxt
        self.masks = masks

    @property
    def max_weight(self) -> int:
        return len(self.masks) - 1

    def extended(self, denom: int) -> "ReachTable":
        """Table over denoms + (denom,), same depth.

        Incremental: appending one denomination only needs one shift/OR pass,
        new[s] = old[s] | (new[s-1] << denom), ascending s (any representation
        using c copies of the new denomination is a lower-level old
        representation shifted up c times).
        """
        old = self.masks
        masks = [1]
        prev = 1
        for s in range(1, len(old)):
            prev = old[s] | (prev << denom)
            masks.append(prev)
        return ReachTable(self.denoms + (denom,), 0, _masks=masks)

    def reachable(self, value: int, weight: int) -> bool:
        if value < 0:
            return False
        return (self.masks[weight] >> value) & 1 == 1

    def min_weight(self, value: int) -> int | None:
        """Least s with value reachable at weight s, or None within this depth."""
        if value < 0:
            return None
        for s, m in enumerate(self.masks):
            if (m >> value) & 1:
                return s
        return None

    def first_unreachable(self, weight: int) -> int:
        """Smallest value with no representation at weight <= `weight`."""
        m = self.masks[weight]
        # lowest zero bit: in (m+1) & ~m exactly that bit survives
        return (((m + 1) & ~m).bit_length()) - 1


# ---------- recursive coefficient search ----------


def can(stamps: StampSet, x: int, i: int, s: int) -> bool:
    """True iff x is representable over a_1..a_i with weight <= s.

    Search order: larger counts of a_i first.  Prunes: x <= s succeeds
    immediately (a_1 = 1), x > s * a_i cannot succeed.
    """
    if x < 0:
        return False
    a = stamps.a
    return _can(a, i, x, s)


def _can(a: tuple[int, ...], i: int, x: int, s: int) -> bool:
    if x <= s:
        return True
    if i == 1:
        return False  # x > s and only ones left
    ai = a[i - 1]
    if x > s * ai:
        return False
    for c in range(min(s, x // ai), -1, -1):
        if _can(a, i - 1, x - c * ai, s - c):
            return True
    return False


def find_minimal(stamps: StampSet, x: int, i: int, s: int) -> int | None:
    """Minimum weight of any representation of x over a_1..a_i, if <= s."""
    if x < 0:
        return None
    return ReachTable(stamps.a[:i], s).min_weight(x)


def _rep_first(a: tuple[int, ...], i: int, x: int, s: int) -> list[int] | None:
    """First representation found with larger counts of a_i tried first.

    Returns counts c_1..c_i (a list, built back to front), or None.  The
    first solution maximises c_i, then c_{i-1} within that, and so on: a
    greedy descent with backtracking.
    """
    if i == 0:
        return [] if x == 0 else None
    if i == 1:
        return [x] if 0 <= x <= s else None
    ai = a[i - 1]
    if x < 0 or x > s * ai:
        return None
    for c in range(min(s, x // ai), -1, -1):
        rest = _rep_first(a, i - 1, x - c * ai, s - c)
        if rest is not None:
            rest.append(c)
            return rest
    return None


def max_ck_rep(stamps: StampSet, x: int, h: int) -> Representation | None:
    """A representation of x at weight <= h maximising c_k, or None.

    Among representations sharing the maximal c_k the result is the greedy
    one: maximal c_{k-1}, then c_{k-2}, ...  Deterministic.
    """
    counts = _rep_first(stamps.a, stamps.k, x, h)
    if counts is None:
        return None
    return Representation(tuple(counts))


def all_reps(stamps: StampSet, x: int, h: int) -> list[Representation]:
    """Every representation of x at weight <= h.

    Ordered by descending lexicographic order of (c_k, ..., c_1), which is
    the natural emission order of the search.
    """
    out: list[Representation] = []
    a = stamps.a

    def walk(i: int, rem: int, budget: int, suffix: list[int]) -> None:
        if i == 1:
            if 0 <= rem <= budget:
                out.append(Representation(tuple([rem] + suffix[::-1])))
            return
        ai = a[i - 1]
        if rem < 0 or rem > budget * ai:
            return
        for c in range(min(budget, rem // ai), -1, -1):
            suffix.append(c)
            walk(i - 1, rem - c * ai, budget - c, suffix)
            suffix.pop()

    walk(stamps.k, x, h, [])
    return out


def h_range(stamps: StampSet, h: int) -> int:
    """n(h): the largest n with every value 0..n representable at weight <= h."""
    if h < 0:
        raise ValueError("weight budget must be >= 0")
    return ReachTable(stamps.a, h).first_unreachable(h) - 1
