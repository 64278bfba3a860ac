"""Empirical distributions of rooted r-neighborhood classes.

``census`` maps every vertex of a graph to the canonical code of its
radius-r ball and counts classes; ``distribution_gap`` is the sup-difference
of two such distributions and ``weak_convergence_report`` tracks its decay
along a sequence of graphs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import ColoredGraph, RootedPattern, ball


@dataclass(frozen=True)
class PatternDistribution:
    """Counts of rooted pattern classes over the vertices of one graph."""

    radius: int
    counts: dict  # canonical code (bytes) -> number of vertices
    total: int

    @property
    def frequencies(self) -> dict:
        return {code: c / self.total for code, c in self.counts.items()}

    def frequency(self, code: bytes) -> float:
        return self.counts.get(code, 0) / self.total


def census(g: ColoredGraph, r: int) -> PatternDistribution:
    """Class counts of radius-r balls, one per vertex."""
    if r < 0:
        raise ValueError("radius must be nonnegative")
    counts: dict[bytes, int] = {}
    for _, code in _vertex_codes(g, r):
        counts[code] = counts.get(code, 0) + 1
    return PatternDistribution(radius=r, counts=counts, total=g.n)


def census_representatives(g: ColoredGraph, r: int) -> dict:
    """One representative ball pattern per class code occurring in g."""
    reps: dict[bytes, RootedPattern] = {}
    for pat, code in _vertex_codes(g, r, keep_patterns=True):
        if code not in reps:
            reps[code] = pat
    return reps


def _vertex_codes(g: ColoredGraph, r: int, keep_patterns: bool = False):
    # Balls are built in BFS-normal form, so byte-identical builds (e.g.
    # translates inside a lattice box) share one canonicalization.
    cache: dict[tuple, bytes] = {}
    for x in range(g.n):
        pat = ball(g, x, r)
        key = (pat.graph.vertex_colors, pat.graph.edges)
        code = cache.get(key)
        if code is None:
            code = pat.code
            cache[key] = code
        yield (pat if keep_patterns else None), code


def distribution_gap(p: PatternDistribution, q: PatternDistribution) -> float:
    """Sup over classes of the frequency difference; lies in [0, 1]."""
    if p.radius != q.radius:
        raise ValueError(f"radius mismatch: {p.radius} != {q.radius}")
    gap = 0.0
    for code in set(p.counts) | set(q.counts):
        gap = max(gap, abs(p.frequency(code) - q.frequency(code)))
    return gap


def gap_witness(p: PatternDistribution, q: PatternDistribution) -> bytes | None:
    """Class code achieving the distribution gap (None for empty supports)."""
    if p.radius != q.radius:
        raise ValueError(f"radius mismatch: {p.radius} != {q.radius}")
    best: bytes | None = None
    gap = -1.0
    for code in sorted(set(p.counts) | set(q.counts)):
        v = abs(p.frequency(code) - q.frequency(code))
        if v > gap:
            gap, best = v, code
    return best


@dataclass(frozen=True)
class GapRow:
    radius: int
    index: int  # position of the later graph in the sequence
    gap: float


def weak_convergence_report(seq: list[ColoredGraph], r_max: int) -> list[GapRow]:
    """Consecutive census gaps for every radius up to r_max.

    Monotone decay of the gaps is evidence of weak convergence; the report
    never extrapolates limits.
    """
    if len(seq) < 2:
        raise ValueError("need at least two graphs")
    rows = []
    for r in range(r_max + 1):
        dists = [census(g, r) for g in seq]
        for i in range(1, len(dists)):
            rows.append(GapRow(radius=r, index=i, gap=distribution_gap(dists[i - 1], dists[i])))
    return rows
