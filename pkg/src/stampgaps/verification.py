"""Independent checks of a window classification.

Two layers, both returning plain `CheckResult` lists:

  * `verify_analysis` re-derives the headline numbers of a `GapAnalysis`
    by routes that share no code with the classifiers: a direct scan for
    n0, the threshold bracketing n(h0-1) < a_k <= n(h0), and a recount of
    the gaps above n(h) at every level h0-1 .. h2+1 (each of which must
    equal the m-gaps still open at h plus the permanent gaps).  All three
    use only the recursive search, never the bitmask tables.

  * `theorem_suite` checks the structural invariants the classification
    must satisfy: level ordering, exact window coverage, range growth of
    at least a_k per level, exact growth of a_k from h1 on, d consistency,
    a_k-free first representations, first-fill exactness, the m-1 parent
    of every m-gap above threshold, and spot checks that permanent gaps
    stay unfilled past the horizon.

`classify_A(..., verify=True)` and `classify_B(..., verify=True)` run
`verify_analysis` and raise `VerificationError` on any failure.
"""

from __future__ import annotations

from dataclasses import dataclass

from .analysis import GapAnalysis, gaps_at_level
from .core import ReachTable, _can, max_ck_rep

__all__ = ["CheckResult", "VerificationError", "verify_analysis", "theorem_suite"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def __str__(self) -> str:
        tag = "ok" if self.passed else "FAIL"
        return f"{self.name}: {tag}" + (f" ({self.detail})" if self.detail else "")


class VerificationError(AssertionError):
    """A classification failed one or more independent checks."""

    def __init__(self, analysis: GapAnalysis, failures: list[CheckResult]):
        self.analysis = analysis
        self.failures = failures
        lines = "; ".join(str(f) for f in failures)
        super().__init__(f"verification failed for {analysis.stamps}: {lines}")


# ---------- result checks (recursive route only) ----------


def verify_analysis(analysis: GapAnalysis) -> list[CheckResult]:
    """Re-derive n0, the threshold bracket, and per-level gap counts."""
    a = analysis.stamps.a
    k = analysis.stamps.k
    ak = a[-1]
    h0, n0 = analysis.h0, analysis.n0
    out: list[CheckResult] = []

    # n0 by direct ascending scan at level h0 - 1
    x = 0
    while _can(a, k, x, h0 - 1):
        x += 1
    out.append(
        CheckResult("n0-direct", x - 1 == n0, f"scan gives {x - 1}, analysis has {n0}")
    )

    # n(h0-1) < a_k <= n(h0): the scan above placed n(h0-1); the upper half
    # needs every value 0..a_k coverable at h0
    upper = all(_can(a, k, v, h0) for v in range(ak + 1))
    out.append(
        CheckResult("h0-bracket", n0 < ak and upper, f"h0={h0}, n0={n0}, a_k={ak}")
    )

    # recount gaps at each level: those above n(h) at level h are exactly the
    # m-gaps with m > h plus the permanent gaps
    perms = len(analysis.permanents())
    ms = [m for _x, m in analysis.m_gaps()]
    bad = []
    for h in range(h0 - 1, analysis.h2 + 2):
        expect = sum(1 for m in ms if m > h) + perms
        got = gaps_at_level(analysis.stamps, h)
        if got != expect:
            bad.append((h, got, expect))
    out.append(
        CheckResult(
            "gap-recount",
            not bad,
            f"levels {h0 - 1}..{analysis.h2 + 1}" + (f", mismatches {bad}" if bad else ""),
        )
    )
    return out


# ---------- structural invariants ----------


def _n_series(analysis: GapAnalysis, hmax: int) -> list[int]:
    table = ReachTable(analysis.stamps.a, hmax)
    return [table.first_unreachable(h) - 1 for h in range(hmax + 1)]


def theorem_suite(analysis: GapAnalysis, sample: int = 12) -> list[CheckResult]:
    """Structural invariant checks; `sample` caps the expensive spot checks."""
    a = analysis.stamps.a
    k = analysis.stamps.k
    ak = a[-1]
    h0, h1, h2 = analysis.h0, analysis.h1, analysis.h2
    stamps = analysis.stamps
    out: list[CheckResult] = []

    out.append(
        CheckResult(
            "level-ordering",
            h0 - 1 <= h1 <= h2 <= analysis.horizon,
            f"h0={h0}, h1={h1}, h2={h2}, horizon={analysis.horizon}",
        )
    )

    expected_keys = list(range(analysis.n0 + 1, analysis.window_end))
    out.append(
        CheckResult(
            "window-coverage",
            sorted(analysis.classes) == expected_keys,
            f"{len(analysis.classes)} cells",
        )
    )

    top = max(h1 + 3, h2 + 2)
    ns = _n_series(analysis, top + 1)
    grow = all(ns[h + 1] >= ns[h] + ak for h in range(h0 - 1, top))
    out.append(CheckResult("range-grows-by-ak", grow, f"levels {h0 - 1}..{top - 1}"))

    eq_from = max(h1, h0 - 1)
    stab = all(ns[h + 1] == ns[h] + ak for h in range(eq_from, top))
    if h1 >= h0:
        stab = stab and ns[h1] > ns[h1 - 1] + ak
    out.append(
        CheckResult("h1-stabilises-range", stab, f"equality from {eq_from}, strict below")
    )

    recount: dict[int, int] = {h: 0 for h in range(h0, h2 + 1)}
    ok = True
    for _x, m in analysis.m_gaps():
        if m in recount:
            recount[m] += 1
        else:
            ok = False
    ok = ok and recount == analysis.delta and (h2 == h0 - 1 or recount[h2] >= 1)
    out.append(CheckResult("delta-consistent", ok, f"{sum(recount.values())} m-gaps"))

    # first fill of every m-gap avoids a_k: the maximal-c_k representation of
    # x_m at weight m has c_k = 0
    bad_free: list[int] = []
    for x, m in analysis.m_gaps():
        rep = max_ck_rep(stamps, analysis.shifted(x, m), m)
        if rep is None or rep.counts[-1] != 0:
            bad_free.append(x)
    out.append(
        CheckResult("first-fill-avoids-ak", not bad_free, f"bad at {bad_free[:4]}" if bad_free else "")
    )

    # exactness (sampled): x_{m-1} must not be coverable at m - 1
    gaps = analysis.m_gaps()
    step = max(1, len(gaps) // sample) if gaps else 1
    bad_exact = [
        x
        for x, m in gaps[::step]
        if _can(a, k, analysis.shifted(x, m - 1), m - 1)
    ]
    out.append(
        CheckResult("first-fill-exact", not bad_exact, f"bad at {bad_exact[:4]}" if bad_exact else "")
    )

    # every m-gap above threshold has an (m-1)-gap parent one step up
    bad_parent: list[int] = []
    for x, m in gaps:
        if m == h0:
            continue
        parents = (
            analysis.classes.get(x + ak - ai) for ai in a[:-1]
        )
        if not any(p is not None and p.kind == "m-gap" and p.m == m - 1 for p in parents):
            bad_parent.append(x)
    out.append(
        CheckResult("parent-exists", not bad_parent, f"bad at {bad_parent[:4]}" if bad_parent else "")
    )

    # permanent gaps stay unfilled well past the horizon (sampled)
    perms = analysis.permanents()
    step = max(1, len(perms) // max(1, sample // 2)) if perms else 1
    probe = analysis.horizon + 2
    bad_perm = [
        x for x in perms[::step] if _can(a, k, analysis.shifted(x, probe), probe)
    ]
    out.append(
        CheckResult("permanent-past-horizon", not bad_perm, f"bad at {bad_perm[:4]}" if bad_perm else "")
    )
    return out
