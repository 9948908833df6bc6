"""Small shared utilities for the test suite."""

from __future__ import annotations

import random

from stampgaps.analysis import GapAnalysis


def random_base(rng: random.Random, kmin: int = 2, kmax: int = 6, amax: int = 60) -> list[int]:
    """A random strictly increasing base {1, ...} with k in [kmin, kmax]."""
    k = rng.randint(kmin, kmax)
    return [1] + sorted(rng.sample(range(2, amax + 1), k - 1))


def to_plain(analysis: GapAnalysis) -> dict[int, object]:
    """Window classes in the oracle's plain form (str kind or int m)."""
    out: dict[int, object] = {}
    for x, c in analysis.classes.items():
        out[x] = c.m if c.kind == "m-gap" else c.kind
    return out
