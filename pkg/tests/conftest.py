"""Shared fixtures: frozen expected values for the documented example bases.

Each case freezes the full gap profile (threshold, stabilisation levels,
range below threshold, d vector, rise positions).  `delta` starts at h0.
Cases with extra structure (gap tables, derivation edges) carry it inline.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import pytest


@dataclass(frozen=True)
class GapCase:
    a: tuple[int, ...]
    h0: int
    n0: int
    h1: int
    h2: int
    delta: tuple[int, ...] = ()
    rises: tuple[int, ...] = ()
    # optional extras
    end: int | None = None  # (h0-1)*a_k, frozen where documented
    m_gaps: dict[int, int] = field(default_factory=dict)  # x -> m, where documented
    first_permanent: int | None = None

    @property
    def k(self) -> int:
        return len(self.a)


WORKED_K4 = GapCase(
    a=(1, 4, 26, 35), h0=8, n0=22, h1=9, h2=10,
    delta=(4, 2, 1), end=245,
    m_gaps={23: 8, 120: 9, 129: 8, 151: 8, 155: 10, 164: 9, 173: 8},
    first_permanent=154,
)

# (h, x, x_h, representations as displayed strings) rows of the worked k=4
# gap table, descending h then ascending x
WORKED_K4_TABLE = [
    (10, 155, 260, ["[0, 10, 0, 0]"]),
    (9, 120, 190, ["[0, 7, 2, 0]"]),
    (9, 164, 234, ["[0, 9, 0, 0]"]),
    (8, 23, 58, ["[0, 2, 0, 6]", "[0, 2, 1, 2]"]),
    (8, 129, 164, ["[0, 6, 2, 0]"]),
    (8, 151, 186, ["[0, 7, 1, 0]"]),
    (8, 173, 208, ["[0, 8, 0, 0]"]),
]

WORKED_K6 = GapCase(
    a=(1, 5, 8, 25, 37, 56), h0=4, n0=3, h1=5, h2=6,
    delta=(15, 3, 1), end=168,
    m_gaps={
        54: 6, 29: 5, 49: 5, 73: 5,
        4: 4, 12: 4, 19: 4, 20: 4, 22: 4, 23: 4, 28: 4, 32: 4,
        36: 4, 44: 4, 48: 4, 60: 4, 68: 4, 80: 4, 92: 4,
    },
)

# documented derivation edges for WORKED_K6: m-gap x -> {(derived value, i)}
WORKED_K6_EDGES = {
    54: {(73, 5)},
    73: {(92, 5)},
    29: {(48, 5), (60, 4), (80, 2)},
    49: {(68, 5), (80, 4)},
}

# all 19 rows of the worked k=6 gap table; representation lists are compared
# order-insensitively (the documented ordering differs from ours)
WORKED_K6_TABLE = [
    (6, 54, 222, ["[0, 6, 0, 0, 0, 0]"]),
    (5, 29, 141, ["[0, 3, 1, 0, 1, 0]"]),
    (5, 49, 161, ["[0, 3, 2, 0, 0, 0]"]),
    (5, 73, 185, ["[0, 5, 0, 0, 0, 0]"]),
    (4, 4, 60, ["[0, 0, 2, 0, 2, 0]"]),
    (4, 12, 68, ["[0, 1, 1, 0, 1, 1]"]),
    (4, 19, 75, ["[0, 1, 1, 1, 1, 0]", "[0, 2, 0, 0, 0, 1]", "[0, 0, 3, 0, 0, 0]"]),
    (4, 20, 76, ["[0, 2, 0, 0, 0, 2]", "[0, 0, 3, 0, 0, 1]"]),
    (4, 22, 78, ["[0, 1, 1, 2, 0, 0]"]),
    (4, 23, 79, ["[0, 2, 0, 0, 1, 0]"]),
    (4, 28, 84, ["[0, 2, 0, 0, 2, 0]"]),
    (4, 32, 88, ["[0, 1, 2, 0, 0, 1]"]),
    (4, 36, 92, ["[0, 1, 2, 0, 1, 0]"]),
    (4, 44, 100, ["[0, 2, 1, 0, 0, 1]", "[0, 0, 4, 0, 0, 0]"]),
    (4, 48, 104, ["[0, 2, 1, 0, 1, 0]"]),
    (4, 60, 116, ["[0, 3, 0, 0, 1, 0]"]),
    (4, 68, 124, ["[0, 2, 2, 0, 0, 0]"]),
    (4, 80, 136, ["[0, 3, 1, 0, 0, 0]"]),
    (4, 92, 148, ["[0, 4, 0, 0, 0, 0]"]),
]

EQUALITY_K4 = GapCase(
    a=(1, 5, 18, 19), h0=6, n0=13, h1=13, h2=13,
    delta=(5, 2, 2, 2, 1, 1, 1, 1), end=95,
)

STRUCTURE_K6 = GapCase(
    a=(1, 3, 8, 21, 28, 29), h0=4, n0=12, h1=8, h2=8,
    delta=(12, 5, 4, 2, 1), end=87,
)

COUNTER_K10 = GapCase(
    a=(1, 3, 4, 9, 12, 13, 19, 44, 47, 62), h0=3, n0=10, h1=5, h2=5,
    delta=(14, 5, 6), rises=(5,), end=124,
)

# the seven k=9, h0=3 bases where d rises (all at level 4)
EXCEPTIONS_K9 = [
    GapCase(a=(1, 2, 4, 6, 9, 10, 31, 32, 36), h0=3, n0=16, h1=7, h2=7,
            delta=(9, 10, 6, 2, 1), rises=(4,)),
    GapCase(a=(1, 2, 5, 8, 9, 10, 31, 33, 36), h0=3, n0=20, h1=6, h2=6,
            delta=(9, 10, 5, 2), rises=(4,)),
    GapCase(a=(1, 2, 5, 8, 9, 10, 31, 34, 36), h0=3, n0=20, h1=7, h2=7,
            delta=(9, 10, 5, 3, 1), rises=(4,)),
    GapCase(a=(1, 3, 4, 6, 9, 10, 31, 32, 36), h0=3, n0=16, h1=6, h2=6,
            delta=(9, 10, 6, 2), rises=(4,)),
    GapCase(a=(1, 3, 5, 6, 9, 10, 31, 32, 36), h0=3, n0=16, h1=6, h2=6,
            delta=(9, 10, 6, 2), rises=(4,)),
    GapCase(a=(1, 3, 5, 7, 9, 10, 31, 32, 36), h0=3, n0=20, h1=6, h2=6,
            delta=(9, 10, 5, 1), rises=(4,)),
    GapCase(a=(1, 3, 5, 7, 9, 10, 31, 35, 36), h0=3, n0=20, h1=8, h2=8,
            delta=(9, 10, 6, 3, 2, 1), rises=(4,)),
]

# k=10, h0=3 rise bases where h1 != h2 (the only four among 1031)
SPLIT_K10 = [
    GapCase(a=(1, 3, 5, 12, 13, 15, 34, 53, 70, 75), h0=3, n0=6, h1=8, h2=11,
            delta=(26, 9, 10, 6, 4, 3, 1, 1, 1), rises=(5,)),
    GapCase(a=(1, 3, 7, 8, 12, 15, 18, 43, 54, 58), h0=3, n0=4, h1=6, h2=9,
            delta=(17, 8, 9, 4, 2, 1, 1), rises=(5,)),
    GapCase(a=(1, 3, 7, 8, 12, 18, 19, 43, 54, 58), h0=3, n0=4, h1=6, h2=9,
            delta=(20, 7, 8, 3, 1, 1, 1), rises=(5,)),
    GapCase(a=(1, 3, 7, 12, 15, 18, 19, 43, 54, 58), h0=3, n0=4, h1=6, h2=9,
            delta=(20, 7, 8, 3, 1, 1, 1), rises=(5,)),
]

# k=10, h0=3 bases with a rise of size greater than one
BIG_RISE_K10 = [
    GapCase(a=(1, 3, 4, 6, 7, 21, 35, 50, 64, 67), h0=3, n0=14, h1=16, h2=16,
            delta=(17, 19, 10, 5, 3, 2, 2, 2, 2, 2, 1, 1, 1, 1), rises=(4,)),
    GapCase(a=(1, 3, 4, 9, 10, 24, 38, 53, 67, 73), h0=3, n0=14, h1=10, h2=10,
            delta=(18, 20, 8, 4, 3, 3, 2, 1), rises=(4,)),
    GapCase(a=(1, 3, 5, 7, 8, 24, 38, 57, 71, 73), h0=3, n0=16, h1=10, h2=10,
            delta=(20, 22, 13, 7, 6, 4, 2, 1), rises=(4,)),
    GapCase(a=(1, 4, 7, 8, 14, 15, 18, 48, 52, 55), h0=3, n0=2, h1=9, h2=9,
            delta=(15, 17, 11, 8, 4, 2, 1), rises=(4,)),
]

TALLEST_K10 = GapCase(
    a=(1, 3, 5, 7, 8, 17, 36, 50, 67, 69), h0=3, n0=18, h1=18, h2=18,
    delta=(18, 19, 11, 6, 4, 3, 2, 2, 2, 2, 1, 1, 1, 1, 1, 1), rises=(4,),
)

# documented extreme bases: (a, h0, h1, h2)
EXTREME_H2 = [
    ((1, 6, 41, 42), 10, 35, 35),
    ((1, 6, 7, 36, 37), 5, 29, 29),
    ((1, 8, 11, 69, 70), 7, 58, 58),
    ((1, 5, 9, 10, 41, 42), 4, 31, 31),
    ((1, 3, 8, 10, 11, 34, 35), 3, 23, 23),
    ((1, 4, 7, 10, 11, 34, 35), 3, 23, 23),
]

EXTREME_SPREAD = [
    ((1, 7, 39, 44), 10, 11, 15),
    ((1, 6, 7, 34, 39), 5, 8, 12),
    ((1, 6, 8, 35, 55), 5, 5, 9),
    ((1, 7, 12, 64, 69), 7, 15, 24),
    ((1, 2, 5, 13, 32, 43), 4, 4, 9),
    ((1, 4, 9, 21, 37, 40), 4, 6, 11),
    ((1, 4, 10, 11, 38, 43), 4, 7, 12),
    ((1, 3, 7, 12, 22, 32, 43), 3, 2, 7),
    ((1, 3, 10, 18, 22, 70, 73), 4, 6, 16),
]

ALL_PROFILED = (
    [WORKED_K4, WORKED_K6, EQUALITY_K4, STRUCTURE_K6, COUNTER_K10, TALLEST_K10]
    + EXCEPTIONS_K9 + SPLIT_K10 + BIG_RISE_K10
)


@pytest.fixture(scope="session")
def profiled_cases() -> list[GapCase]:
    return list(ALL_PROFILED)
