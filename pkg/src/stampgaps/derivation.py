"""Derivation graph between m-gaps.

If x is an m-gap with m > h0, then for every denomination a_i with c_i > 0
in some representation of x_m at weight <= m, the value x + (a_k - a_i) is
exactly an (m-1)-gap: x_m minus one a_i is a representation of the shifted
image of that value one level lower.  Walking this relation from every m-gap
reaches an h0-gap in exactly m - h0 steps, which is what makes the downward
propagation in `propagation.classify_B` exhaustive.

`build_graph` materialises nodes (one per m-gap) and the edges derived from
all representations.  `shared_parent_stats` reports, per level, the maximal
groups of level-m nodes that are linked by sharing children, and flags any
group with fewer distinct children than members: that local deficit is the
structure that makes a d(h) rise possible.
"""

from __future__ import annotations

from dataclasses import dataclass

from .analysis import GapAnalysis
from .core import all_reps

__all__ = [
    "Edge",
    "DerivationGraph",
    "ShareGroup",
    "parents_of",
    "build_graph",
    "shared_parent_stats",
    "edge_lines",
    "to_dot",
]


@dataclass(frozen=True)
class Edge:
    """x at level m determines child = x + (a_k - a_i) at level m - 1."""

    x: int
    m: int
    child: int
    i: int  # 1-based denomination index with c_i > 0


@dataclass(frozen=True)
class DerivationGraph:
    """Nodes (m, x) ascending, and all determination edges between levels."""

    stamps: tuple[int, ...]
    h0: int
    nodes: tuple[tuple[int, int], ...]  # (m, x), ascending
    edges: tuple[Edge, ...]  # sorted by (m, x, child, i)

    def children_of(self, x: int, m: int) -> list[tuple[int, int]]:
        return [(e.child, e.i) for e in self.edges if e.x == x and e.m == m]

    def levels(self) -> dict[int, list[int]]:
        """m -> ascending list of gap values at that level."""
        out: dict[int, list[int]] = {}
        for m, x in self.nodes:
            out.setdefault(m, []).append(x)
        return out


def parents_of(x: int, m: int, analysis: GapAnalysis) -> set[tuple[int, int]]:
    """(value, i) pairs the m-gap x determines one level down.

    Union over every representation of x_m at weight <= m of the values
    x + (a_k - a_i) for each c_i > 0.  Each returned value is itself an
    (m-1)-gap; callers may assert that against the analysis.
    """
    c = analysis.classes.get(x)
    if c is None or c.kind != "m-gap" or c.m != m:
        raise ValueError(f"{x} is not an {m}-gap of {analysis.stamps}")
    if m <= analysis.h0:
        raise ValueError(f"level {m} is not above the threshold {analysis.h0}")
    a = analysis.stamps.a
    ak = a[-1]
    out: set[tuple[int, int]] = set()
    for rep in all_reps(analysis.stamps, analysis.shifted(x, m), m):
        for idx, count in enumerate(rep.counts):
            if count > 0:
                out.add((x + ak - a[idx], idx + 1))
    return out


def build_graph(analysis: GapAnalysis) -> DerivationGraph:
    """Graph over all m-gaps; edges from every node above the threshold."""
    nodes = sorted((m, x) for x, m in analysis.m_gaps())
    edges: list[Edge] = []
    for m, x in nodes:
        if m == analysis.h0:
            continue
        for child, i in sorted(parents_of(x, m, analysis)):
            edges.append(Edge(x=x, m=m, child=child, i=i))
    edges.sort(key=lambda e: (e.m, e.x, e.child, e.i))
    return DerivationGraph(
        stamps=analysis.stamps.a, h0=analysis.h0, nodes=tuple(nodes), edges=tuple(edges)
    )


@dataclass(frozen=True)
class ShareGroup:
    """Level-m nodes linked through shared children, with those children."""

    m: int
    members: tuple[int, ...]  # ascending gap values at level m
    children: tuple[int, ...]  # ascending distinct child values at level m - 1

    @property
    def flagged(self) -> bool:
        """Fewer distinct children than members: the local-deficit structure."""
        return len(self.children) < len(self.members)


def shared_parent_stats(graph: DerivationGraph) -> list[ShareGroup]:
    """Maximal share-linked groups (size >= 2) per level, ascending (m, members).

    Two level-m nodes are linked when they determine a common child; groups
    are the transitive closure of that relation.  Distinct groups at one
    level have disjoint child sets, so d(m) > d(m-1) forces at least one
    flagged group at level m.
    """
    by_level: dict[int, dict[int, set[int]]] = {}  # m -> child -> {parents}
    children: dict[tuple[int, int], set[int]] = {}  # (m, x) -> child set
    for e in graph.edges:
        by_level.setdefault(e.m, {}).setdefault(e.child, set()).add(e.x)
        children.setdefault((e.m, e.x), set()).add(e.child)

    groups: list[ShareGroup] = []
    for m in sorted(by_level):
        # union-find over the level's parents, merged per shared child
        parent_ids = sorted({p for ps in by_level[m].values() for p in ps})
        root = {p: p for p in parent_ids}

        def find(p: int) -> int:
            while root[p] != p:
                root[p] = root[root[p]]
                p = root[p]
            return p

        for ps in by_level[m].values():
            ordered = sorted(ps)
            for other in ordered[1:]:
                ra, rb = find(ordered[0]), find(other)
                if ra != rb:
                    root[rb] = ra
        comps: dict[int, list[int]] = {}
        for p in parent_ids:
            comps.setdefault(find(p), []).append(p)
        for members in sorted(comps.values()):
            if len(members) < 2:
                continue
            kids = sorted(set().union(*(children[(m, x)] for x in members)))
            groups.append(ShareGroup(m=m, members=tuple(members), children=tuple(kids)))
    return groups


def edge_lines(graph: DerivationGraph) -> list[str]:
    """One line per edge: "m x -> m-1 x' via i"."""
    return [f"{e.m} {e.x} -> {e.m - 1} {e.child} via {e.i}" for e in graph.edges]


def to_dot(graph: DerivationGraph) -> str:
    """dot-compatible digraph; nodes named x_m, labelled "x (m-gap)"."""
    lines = ["digraph gaps {", "  rankdir=TB;"]
    for m, x in graph.nodes:
        lines.append(f'  "g{x}_{m}" [label="{x} ({m}-gap)"];')
    for e in graph.edges:
        lines.append(f'  "g{e.x}_{e.m}" -> "g{e.child}_{e.m - 1}" [label="{e.i}"];')
    lines.append("}")
    return "\n".join(lines)
