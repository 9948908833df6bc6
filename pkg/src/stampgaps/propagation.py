"""Forward-scan window classifier with downward propagation.

Where `analysis.classify_A` interrogates each window value at a fixed horizon
level, this classifier sweeps the window once at threshold level h0 and pushes
consequences downward:

  * For window value x, look for a representation of x + a_k at weight <= h0
    with a maximal count c of a_k.
  * c >= 1 gives x itself a representation at weight <= h0 - 1 (drop one a_k),
    so x is pre-filled; with w the weight actually found, the next
    nsp = h0 - w values are pre-filled too (pad with ones) and the scan skips
    them cheaply.
  * c == 0 means x is an exact h0-gap.  Every h0-gap seeds propagation: if a
    value y + a_k first gains a representation at level h (one that then
    necessarily avoids a_k at the shifted image), adding one a_i to that
    representation fills y - (a_k - a_i) at level h + 1.  Walking steps
    y -> y - (a_k - a_i) therefore spreads upper bounds "fill level <= hx + 1"
    down the window; repeated improvement converges to the exact m-gap levels.
  * c absent (no representation at all) leaves the cell at the sentinel;
    cells never reached by propagation are permanent gaps.

Cells hold fill-level upper bounds that only ever decrease, so propagation
order does not affect the fixpoint; the walk below replicates plain
depth-first order.  Bounds are exact at the end: the chain through which a
value truly first fills is itself walked once its seed h0-gap is scanned.

The two classifiers must produce identical `GapAnalysis` results on every
base; the test suite enforces this against each other and against a direct
min-stamp oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .analysis import (
    GapAnalysis,
    GapClass,
    PERMANENT,
    PRE_FILLED,
    _assemble,
    compute_h0,
    compute_H,
    m_gap,
)
from .core import ReachTable, StampSet, _can

__all__ = ["PropagationCounters", "classify_B"]


@dataclass
class PropagationCounters:
    """Optional instrumentation: cell writes made by propagation.

    fills counts every write; improvements counts writes that lowered an
    existing bound (as opposed to filling a sentinel cell).
    """

    fills: int = 0
    improvements: int = 0


def classify_B(
    stamps: StampSet,
    verify: bool = False,
    counters: PropagationCounters | None = None,
    debug: bool = False,
) -> GapAnalysis:
    """Classify the window by one forward scan plus downward propagation.

    With debug=True every propagated bound is re-checked for soundness via
    the recursive search (slow; for tests).
    """
    h0, n0 = compute_h0(stamps)
    horizon = compute_H(stamps, h0, n0)
    a = stamps.a
    ak = a[-1]
    win_lo = n0 + 1
    end = (h0 - 1) * ak
    n_cells = end - win_lo
    classes: dict[int, GapClass] = {}

    if n_cells > 0:
        sentinel = horizon + 1
        prefilled = h0 - 1
        cells = [sentinel] * n_cells
        masks = ReachTable(a, h0).masks
        # propagation steps a_k - a_i, smallest first: once one lands below the
        # window the rest would too
        steps = [ak - ai for ai in reversed(a[:-1])]

        def propagate(x0: int) -> None:
            # depth-first walk without recursion: (value, level, next step index)
            stack = [(x0, h0, 0)]
            while stack:
                x, hx, idx = stack.pop()
                while idx < len(steps):
                    y = x - steps[idx]
                    if y <= n0:
                        break
                    idx += 1
                    off = y - win_lo
                    old = cells[off]
                    if old > hx + 1:
                        cells[off] = hx + 1
                        if counters is not None:
                            counters.fills += 1
                            if old != sentinel:
                                counters.improvements += 1
                        if debug:
                            shifted = y + (hx + 2 - h0) * ak
                            assert _can(a, stamps.k, shifted, hx + 1), (
                                f"unsound bound {hx + 1} at {y} for {stamps}"
                            )
                        stack.append((x, hx, idx))
                        x, hx, idx = y, hx + 1, 0

        for x in range(win_lo, end):
            off = x - win_lo
            if cells[off] == prefilled:
                continue
            t = x + ak
            c = min(h0, t // ak)
            while c >= 0 and not (masks[h0 - c] >> (t - c * ak)) & 1:
                c -= 1
            if c < 0:
                continue  # no representation at h0: permanent or a later m-gap
            if c == 0:
                cells[off] = h0
                propagate(x)
            else:
                rem = t - c * ak
                w = c
                while not (masks[w - c] >> rem) & 1:
                    w += 1
                run_end = min(off + (h0 - w), n_cells - 1)
                for j in range(off, run_end + 1):
                    cells[j] = prefilled

        for off, v in enumerate(cells):
            x = win_lo + off
            if v == prefilled:
                classes[x] = PRE_FILLED
            elif v == sentinel:
                classes[x] = PERMANENT
            else:
                classes[x] = m_gap(v)

    result = _assemble(stamps, h0, n0, horizon, classes)
    if verify:
        from .verification import verify_analysis, VerificationError

        failures = [c for c in verify_analysis(result) if not c.passed]
        if failures:
            raise VerificationError(result, failures)
    return result
