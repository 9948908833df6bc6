"""Text renderings of a window classification.

Gap map: one glyph per value, rows of `width` value-columns labelled with
the row's starting value.  Glyphs: '*' pre-filled, '-' permanent gap, and
an m-gap shows its level modulo 10 as a single digit.  Classification is
over the open window (n0, (h0-1)*a_k), but the display includes both
endpoints as '*' (each is representable by definition); values outside
that closed range render as spaces.

The digit convention loses the tens: `parse_gap_map` resolves a digit d to
the unique level in [h0, h2] congruent to d mod 10 and refuses with
`AmbiguousMapError` when a digit that actually occurs has two candidate
levels in range (possible once h2 - h0 >= 10).

Gap table: one row per m-gap, descending m then ascending x, with the
shifted image x_m and every representation of x_m at weight <= m in
display order (largest denomination first).
"""

from __future__ import annotations

from .analysis import GapAnalysis, GapClass, PERMANENT, PRE_FILLED, m_gap
from .core import all_reps

__all__ = [
    "AmbiguousMapError",
    "render_gap_map",
    "parse_gap_map",
    "gap_table_rows",
    "render_gap_table",
]

LABEL_WIDTH = 8


class AmbiguousMapError(ValueError):
    """A rendered digit has more than one candidate level in [h0, h2]."""


def _glyph(c: GapClass) -> str:
    if c.kind == "pre-filled":
        return "*"
    if c.kind == "permanent":
        return "-"
    return str(c.m % 10)


def render_gap_map(analysis: GapAnalysis, width: int = 70) -> str:
    """Multi-row map of the closed display range [n0, (h0-1)*a_k]."""
    n0, end = analysis.n0, analysis.window_end
    tens = "".join(f"{t:<10}" for t in range(0, width, 10))
    header = [tens.rstrip(), ("0123456789" * ((width + 9) // 10))[:width]]
    rows = []
    for row_start in range(0, end + 1, width):
        glyphs = []
        for x in range(row_start, min(row_start + width, end + 1)):
            if x < n0:
                glyphs.append(" ")
            elif x == n0 or x == end:
                glyphs.append("*")
            else:
                glyphs.append(_glyph(analysis.classes[x]))
        rows.append((f"{row_start:<{LABEL_WIDTH}}" + "".join(glyphs)).rstrip())
    head = [" " * LABEL_WIDTH + h for h in header]
    return "\n".join(head + rows)


def parse_gap_map(text: str, h0: int, h2: int) -> dict[int, GapClass]:
    """Recover the open-window class map from a rendered gap map.

    The first and last non-blank glyphs are the display endpoints and are
    dropped.  Digits resolve to the unique matching level in [h0, h2].
    """
    digit_level: dict[str, int] = {}
    for m in range(h0, h2 + 1):
        d = str(m % 10)
        if d in digit_level:
            raise AmbiguousMapError(
                f"digit {d} matches both {digit_level[d]} and {m} in [{h0}, {h2}]"
            )
        digit_level[d] = m

    cells: dict[int, str] = {}
    for line in text.splitlines():
        body = line[LABEL_WIDTH:]
        label = line[:LABEL_WIDTH].strip()
        if not label.isdigit():
            continue  # header/ruler lines
        start = int(label)
        for col, ch in enumerate(body):
            if ch != " ":
                cells[start + col] = ch

    if len(cells) < 2:
        return {}
    lo, hi = min(cells), max(cells)
    out: dict[int, GapClass] = {}
    for x in range(lo + 1, hi):
        ch = cells[x]
        if ch == "*":
            out[x] = PRE_FILLED
        elif ch == "-":
            out[x] = PERMANENT
        elif ch.isdigit():
            if ch not in digit_level:
                raise AmbiguousMapError(f"digit {ch} has no level in [{h0}, {h2}]")
            out[x] = m_gap(digit_level[ch])
        else:
            raise ValueError(f"unexpected glyph {ch!r} at value {x}")
    return out


def gap_table_rows(analysis: GapAnalysis) -> list[tuple[int, int, int, list[str]]]:
    """(m, x, x_m, representation display strings), descending m, ascending x."""
    rows = []
    for x, m in sorted(analysis.m_gaps(), key=lambda t: (-t[1], t[0])):
        x_m = analysis.shifted(x, m)
        reps = [r.display() for r in all_reps(analysis.stamps, x_m, m)]
        rows.append((m, x, x_m, reps))
    return rows


def render_gap_table(analysis: GapAnalysis) -> str:
    lines = ["h\tx\tx_h\th-representation"]
    for m, x, x_m, reps in gap_table_rows(analysis):
        lines.append(f"{m}\t{x}\t{x_m}\t" + ", ".join(reps))
    return "\n".join(lines)
