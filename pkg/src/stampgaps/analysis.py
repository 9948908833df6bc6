"""Gap structure of a stamp base around its covering threshold.

For a base A = {1, a_2, ..., a_k} let n(h) be the h-range and define

    h0 = min { h : n(h) >= a_k }        (threshold level)
    n0 = n(h0 - 1)                      (range just below threshold)

The window of interest is the open interval (n0, (h0-1)*a_k).  Every value
x in the window is tracked through increasing levels via its shifted image
x_h = x + (h - (h0-1)) * a_k.  Each window value falls into exactly one class:

    pre-filled   x itself has a representation at weight <= h0 - 1
    m-gap        x_m is the first shifted image with a representation at
                 weight <= m (so m >= h0)
    permanent    no shifted image ever becomes representable

d(h) counts the m-gaps with m = h.  Two stabilisation levels summarise the
window: h2 is the largest m over all m-gaps, and h1 is the largest m among
m-gaps below the first permanent gap (from h1 on, n(h+1) = n(h) + a_k).
With no permanent gaps h1 = h2; with no m-gaps at all both are h0 - 1.

The long-standing expectation that d is non-increasing on [h0, h2] fails for
some bases; `check_conjecture` reports the rise positions.

Classification here works top-down from a horizon level H past which nothing
changes: for each window value, take the maximal count c_k of a_k in any
H-representation of x_H; then m = H - c_k (no H-representation at all means
permanent).  A second, structurally different classifier lives in
`propagation`; both must agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import ReachTable, StampSet, _can

__all__ = [
    "GapClass",
    "PRE_FILLED",
    "PERMANENT",
    "m_gap",
    "GapAnalysis",
    "Violation",
    "compute_h0",
    "compute_H",
    "classify_A",
    "derive_h1_h2",
    "gaps_at_level",
    "check_conjecture",
    "make_violation",
]


# ---------- classes and results ----------


@dataclass(frozen=True)
class GapClass:
    """Class of one window value: pre-filled, m-gap (carries m), or permanent."""

    kind: str  # "pre-filled" | "m-gap" | "permanent"
    m: int | None = None

    def __str__(self) -> str:
        return f"{self.m}-gap" if self.kind == "m-gap" else self.kind


PRE_FILLED = GapClass("pre-filled")
PERMANENT = GapClass("permanent")


def m_gap(m: int) -> GapClass:
    return GapClass("m-gap", m)


@dataclass(frozen=True)
class GapAnalysis:
    """Full window classification of one base."""

    stamps: StampSet
    h0: int
    n0: int
    horizon: int  # level past which classification is final
    h1: int
    h2: int
    classes: dict[int, GapClass] = field(repr=False)
    delta: dict[int, int]  # d(h) for h0 <= h <= h2 (empty if no m-gaps)

    @property
    def window_end(self) -> int:
        """Exclusive upper end of the window, (h0-1)*a_k."""
        return (self.h0 - 1) * self.stamps.ak

    def shifted(self, x: int, h: int) -> int:
        """x_h, the image of window value x at level h."""
        return x + (h - (self.h0 - 1)) * self.stamps.ak

    def m_gaps(self) -> list[tuple[int, int]]:
        """(x, m) for every m-gap, ascending x."""
        return [(x, c.m) for x, c in sorted(self.classes.items()) if c.kind == "m-gap"]

    def permanents(self) -> list[int]:
        return [x for x, c in sorted(self.classes.items()) if c.kind == "permanent"]


@dataclass(frozen=True)
class Violation:
    """A base whose d(h) rises somewhere on [h0+1, h2]."""

    stamps: tuple[int, ...]
    k: int
    h0: int
    h1: int
    h2: int
    n0: int
    delta: tuple[int, ...]  # d(h0), d(h0+1), ..., d(h2)
    rises: tuple[int, ...]  # levels h with d(h) > d(h-1)

    def record(self) -> dict:
        """Wire-format dict (field names are part of the output format)."""
        return {
            "set": list(self.stamps),
            "k": self.k,
            "h0": self.h0,
            "h1": self.h1,
            "h2": self.h2,
            "n0": self.n0,
            "delta": list(self.delta),
            "rises": list(self.rises),
        }


# ---------- threshold and horizon ----------


def compute_h0(stamps: StampSet) -> tuple[int, int]:
    """(h0, n0): least level whose range reaches a_k, and the range below it."""
    a = stamps.a
    ak = a[-1]
    mask = 1
    h = 0
    n_here = 0
    while n_here < ak:
        n_prev = n_here
        nxt = mask
        for ai in a:
            nxt |= mask << ai
        mask = nxt
        h += 1
        n_here = (((mask + 1) & ~mask).bit_length()) - 2
    return h, n_prev


def compute_H(stamps: StampSet, h0: int, n0: int) -> int:
    """Horizon level: from H on, every shifted window gap stays a gap.

    Past the horizon a newly filled x_h would need a representation avoiding
    a_k entirely, and the largest value reachable that way, h * a_{k-1}, falls
    short of the window floor once h*(a_k - a_{k-1}) >= (h0-2)*a_k + a_{k-1} - n0.
    """
    ak = stamps.a[-1]
    second = stamps.a[-2]
    num = (h0 - 2) * ak + second - n0
    den = ak - second
    least = -(-num // den) if num > 0 else 0
    return max(h0, least)


# ---------- classification (horizon descent) ----------


def classify_A(stamps: StampSet, verify: bool = False) -> GapAnalysis:
    """Classify the window by maximal a_k counts at the horizon level.

    For window value x with shifted image t = x_H: no H-representation of t
    means permanent; otherwise with c the maximal count of a_k over all
    H-representations, m = H - c (pre-filled when m <= h0 - 1).
    """
    h0, n0 = compute_h0(stamps)
    horizon = compute_H(stamps, h0, n0)
    ak = stamps.ak
    end = (h0 - 1) * ak
    classes: dict[int, GapClass] = {}

    if end - n0 > 1:
        masks = ReachTable(stamps.a, horizon).masks
        top = masks[horizon]
        shift = (horizon - h0 + 1) * ak
        for x in range(n0 + 1, end):
            t = x + shift
            if not (top >> t) & 1:
                classes[x] = PERMANENT
                continue
            c = min(horizon, t // ak)
            while not (masks[horizon - c] >> (t - c * ak)) & 1:
                c -= 1
            m = horizon - c
            classes[x] = PRE_FILLED if m <= h0 - 1 else m_gap(m)

    analysis = _assemble(stamps, h0, n0, horizon, classes)
    if verify:
        from .verification import verify_analysis, VerificationError

        failures = [c for c in verify_analysis(analysis) if not c.passed]
        if failures:
            raise VerificationError(analysis, failures)
    return analysis


def _assemble(
    stamps: StampSet, h0: int, n0: int, horizon: int, classes: dict[int, GapClass]
) -> GapAnalysis:
    h1, h2 = derive_h1_h2(classes, h0)
    delta = {h: 0 for h in range(h0, h2 + 1)}
    for c in classes.values():
        if c.kind == "m-gap":
            delta[c.m] += 1
    return GapAnalysis(
        stamps=stamps, h0=h0, n0=n0, horizon=horizon, h1=h1, h2=h2,
        classes=classes, delta=delta,
    )


def derive_h1_h2(classes: dict[int, GapClass], h0: int) -> tuple[int, int]:
    """(h1, h2) from a window classification.

    h2: largest m over m-gaps (h0-1 if none).  h1: largest m among m-gaps
    below the first permanent gap (h0-1 if none such); equal to h2 when
    there is no permanent gap.
    """
    h2 = h0 - 1
    below_first_perm = h0 - 1
    saw_permanent = False
    for x in sorted(classes):
        c = classes[x]
        if c.kind == "permanent":
            saw_permanent = True
        elif c.kind == "m-gap":
            if c.m > h2:
                h2 = c.m
            if not saw_permanent and c.m > below_first_perm:
                below_first_perm = c.m
    h1 = below_first_perm if saw_permanent else h2
    return h1, h2


# ---------- direct recount and the conjecture ----------


def gaps_at_level(stamps: StampSet, h: int) -> int:
    """Count values in (n(h), h*a_k) with no h-representation.

    Deliberately uses the recursive search for every probe (including the
    scan that locates n(h)), so the count is independent of the bitmask
    route and of any window classification.
    """
    if h < 0:
        raise ValueError("level must be >= 0")
    a = stamps.a
    k = stamps.k
    x = 0
    while _can(a, k, x, h):
        x += 1
    # x is now n(h) + 1, the first gap
    count = 0
    for y in range(x, h * a[-1]):
        if not _can(a, k, y, h):
            count += 1
    return count


def check_conjecture(delta: dict[int, int], h0: int, h2: int) -> list[int]:
    """Rise positions: levels h in [h0+1, h2] with d(h) > d(h-1).

    Empty list means the non-increasing expectation holds for this base.
    """
    return [h for h in range(h0 + 1, h2 + 1) if delta.get(h, 0) > delta.get(h - 1, 0)]


def make_violation(analysis: GapAnalysis) -> Violation | None:
    """Violation record for a base whose d rises, else None."""
    rises = check_conjecture(analysis.delta, analysis.h0, analysis.h2)
    if not rises:
        return None
    delta = tuple(analysis.delta[h] for h in range(analysis.h0, analysis.h2 + 1))
    return Violation(
        stamps=analysis.stamps.a,
        k=analysis.stamps.k,
        h0=analysis.h0,
        h1=analysis.h1,
        h2=analysis.h2,
        n0=analysis.n0,
        delta=delta,
        rises=tuple(rises),
    )
