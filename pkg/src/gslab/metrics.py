"""Edit-style distances between colored graphs.

``delta`` compares two graphs on a common vertex set by the fraction of
vertices whose stars differ; ``delta_s`` takes the infimum over relabelings
of one side, and the geometric distance ``delta_rho`` takes a further
infimum over balanced disjoint-copy blowups of two connected graphs.  The
true geometric infimum ranges over infinitely many copy counts, so only
certified upper and lower bounds are exposed.

Star comparison is literal: a vertex agrees when it has the same neighbors,
the same vertex colors on root and neighbors, and the same orientation
colors on every incident edge.  Class-level (isomorphism-only) agreement is
too weak to support the quantitative neighborhood-statistics bounds, and is
used here only to prune the relabeling search.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from .census import census, distribution_gap, gap_witness
from .graphs import (ColoredGraph, ball_size_bound, component_code,
                     connected_components, disjoint_union, permute, star)


@dataclass(frozen=True)
class MetricResult:
    value: float
    kind: str  # "exact" | "upper_bound" | "lower_bound"
    witness: object = None  # permutation tuple or pattern code, when available
    scale: tuple[int, int] | None = None  # copy multipliers (q, r) for rho


def _star_signature(g: ColoredGraph, y: int):
    return (g.vertex_colors[y],
            tuple(sorted((u, g.vertex_colors[u], co, ci) for u, co, ci in g.adjacency[y])))


def star_mismatch_count(g: ColoredGraph, h: ColoredGraph) -> int:
    if g.n != h.n:
        raise ValueError(f"vertex count mismatch: {g.n} != {h.n}")
    return sum(1 for y in range(g.n) if _star_signature(g, y) != _star_signature(h, y))


def delta(g: ColoredGraph, h: ColoredGraph) -> float:
    """Fraction of vertices whose stars differ on the common vertex set."""
    if g.n == 0:
        return 0.0
    return star_mismatch_count(g, h) / g.n


def _iso_class_lower_bound(g: ColoredGraph, h: ColoredGraph) -> int:
    """Mismatches forced already at the level of star isomorphism classes."""
    from collections import Counter
    cg = Counter(star(g, y).code for y in range(g.n))
    ch = Counter(star(h, y).code for y in range(h.n))
    matched = sum(min(cg[c], ch.get(c, 0)) for c in cg)
    return g.n - matched


def delta_s_heuristic(g: ColoredGraph, h: ColoredGraph) -> MetricResult:
    """Upper bound on delta_s from greedy matching of isomorphic components.

    Components with equal unrooted canonical codes are matched pairwise in
    code order and mapped onto each other isomorphically; leftover vertices
    are mapped in index order.
    """
    if g.n != h.n:
        raise ValueError(f"vertex count mismatch: {g.n} != {h.n}")
    sigma = _component_matching_sigma(g, h)
    value = delta(g, permute(h, sigma))
    return MetricResult(value=value, kind="upper_bound", witness=sigma)


def _component_labelings(g: ColoredGraph):
    """Per component: (code, vertices ordered by canonical position)."""
    from .graphs import _canonical, _induced_pattern  # internal reuse
    out = []
    for comp in connected_components(g):
        pat = _induced_pattern(g, {v: 0 for v in comp}, comp[0])
        code, lab = _canonical(pat.graph, None)
        ordered = [0] * len(comp)
        for local, pos in enumerate(lab):
            ordered[pos] = pat.origin[local]
        out.append((code, tuple(ordered)))
    return out


def _component_matching_sigma(g: ColoredGraph, h: ColoredGraph) -> tuple[int, ...]:
    by_code_g: dict[bytes, list[tuple]] = {}
    for code, ordered in _component_labelings(g):
        by_code_g.setdefault(code, []).append(ordered)
    sigma = [-1] * h.n
    used_g: set[int] = set()
    assigned_h: set[int] = set()
    for code, ordered_h in sorted(_component_labelings(h)):
        pool = by_code_g.get(code)
        if pool:
            ordered_g = pool.pop(0)
            for hv, gv in zip(ordered_h, ordered_g):
                sigma[hv] = gv
                used_g.add(gv)
                assigned_h.add(hv)
    free_slots = [v for v in range(g.n) if v not in used_g]
    leftover_h = [v for v in range(h.n) if v not in assigned_h]
    for hv, gv in zip(leftover_h, free_slots):
        sigma[hv] = gv
    return tuple(sigma)


def delta_s_exact(g: ColoredGraph, h: ColoredGraph, max_n: int = 10) -> MetricResult:
    """Exact infimum of delta(g, h^sigma) over all relabelings sigma.

    Branch and bound over assignments of h-vertices to slots: candidate
    slots with star-isomorphic classes are tried first, decided star
    mismatches prune against the best known relabeling, and the class-count
    lower bound allows closing the search early.  Exponential worst case,
    hence the size guard.
    """
    if g.n != h.n:
        raise ValueError(f"vertex count mismatch: {g.n} != {h.n}")
    n = g.n
    if n > max_n:
        raise ValueError(f"exact search limited to n <= {max_n} (got {n})")
    if n == 0:
        return MetricResult(value=0.0, kind="exact", witness=())

    heur = delta_s_heuristic(g, h)
    best_sigma = list(heur.witness)
    best = star_mismatch_count(g, permute(h, best_sigma))
    lower = _iso_class_lower_bound(g, h)
    if best > lower:
        found = _branch_and_bound(g, h, best, lower)
        if found is not None:
            best, best_sigma = found
    return MetricResult(value=best / n, kind="exact", witness=tuple(best_sigma))


def _branch_and_bound(g: ColoredGraph, h: ColoredGraph, best: int, lower: int):
    n = g.n
    adj_h = h.adjacency
    adj_g = g.adjacency
    vc_g, vc_h = g.vertex_colors, h.vertex_colors
    nbr_g = [dict((u, (co, ci)) for u, co, ci in adj_g[y]) for y in range(n)]
    nbrs_h = [tuple(u for u, _, _ in adj_h[x]) for x in range(n)]
    star_code_g = [star(g, y).code for y in range(n)]
    star_code_h = [star(h, x).code for x in range(n)]

    # class-imbalance bound: unassigned vertices of a star class can avoid a
    # mismatch only on unused slots of the same class
    unassigned_h: dict[bytes, int] = {}
    unused_g: dict[bytes, int] = {}
    for x in range(n):
        unassigned_h[star_code_h[x]] = unassigned_h.get(star_code_h[x], 0) + 1
    for y in range(n):
        unused_g[star_code_g[y]] = unused_g.get(star_code_g[y], 0) + 1
    deficit = sum(max(0, cnt - unused_g.get(c, 0)) for c, cnt in unassigned_h.items())

    sigma = [-1] * n
    used = [False] * n
    # closure[x] = unassigned count among {x} + N_h(x); star decided at 0
    closure = [1 + len(nbrs_h[x]) for x in range(n)]
    state = {"best": best, "sigma": None, "deficit": deficit}

    def star_matches(x: int) -> bool:
        y = sigma[x]
        if vc_h[x] != vc_g[y] or len(nbrs_h[x]) != len(adj_g[y]):
            return False
        row = nbr_g[y]
        for u, co, ci in adj_h[x]:
            got = row.get(sigma[u])
            if got != (co, ci) or vc_g[sigma[u]] != vc_h[u]:
                return False
        return True

    def shift_deficit(code: bytes, drop_h: bool) -> int:
        # deficit delta from decrementing one side's count for this class
        a, b = unassigned_h.get(code, 0), unused_g.get(code, 0)
        before = max(0, a - b)
        if drop_h:
            a -= 1
        else:
            b -= 1
        return max(0, a - b) - before

    def assign(x: int, mismatches: int) -> None:
        if mismatches + state["deficit"] >= state["best"]:
            return
        if x == n:
            state["best"] = mismatches
            state["sigma"] = tuple(sigma)
            return
        cx = star_code_h[x]
        compat = []
        other = []
        for y in range(n):
            if used[y]:
                continue
            (compat if star_code_g[y] == cx else other).append(y)
        for y in compat + other:
            cy = star_code_g[y]
            d_delta = shift_deficit(cx, True)
            unassigned_h[cx] -= 1
            d_delta += shift_deficit(cy, False)
            unused_g[cy] -= 1
            state["deficit"] += d_delta
            sigma[x] = y
            used[y] = True
            newly = 0
            add = 0
            for w in (x, *nbrs_h[x]):
                closure[w] -= 1
                if closure[w] == 0:
                    newly += 1
                    if not star_matches(w):
                        add += 1
            assign(x + 1, mismatches + add)
            for w in (x, *nbrs_h[x]):
                closure[w] += 1
            used[y] = False
            sigma[x] = -1
            unused_g[cy] += 1
            unassigned_h[cx] += 1
            state["deficit"] -= d_delta
            if state["best"] <= lower:
                return

    assign(0, 0)
    if state["sigma"] is None:
        return None
    return state["best"], list(state["sigma"])


def delta_rho_upper(g: ColoredGraph, h: ColoredGraph, max_scale: int = 3,
                    exact_threshold: int = 10) -> MetricResult:
    """Certified upper bound on the geometric distance of two connected graphs.

    Builds q copies of g and r copies of h on a common vertex set at the
    smallest balancing multipliers times 1..max_scale and takes the best
    relabeled star distance (exact below the size guard, component-matching
    heuristic above).
    """
    for name, x in (("g", g), ("h", h)):
        if len(connected_components(x)) != 1:
            raise ValueError(f"{name} must be connected")
    L = lcm(g.n, h.n)
    q0, r0 = L // g.n, L // h.n
    best: MetricResult | None = None
    for s in range(1, max_scale + 1):
        q, r = s * q0, s * r0
        big_g = disjoint_union([g] * q)
        big_h = disjoint_union([h] * r)
        if big_g.n <= exact_threshold:
            res = delta_s_exact(big_g, big_h, max_n=exact_threshold)
        else:
            res = delta_s_heuristic(big_g, big_h)
        if best is None or res.value < best.value:
            witness = res.witness if big_g.n <= 512 else None
            best = MetricResult(value=res.value, kind="upper_bound",
                                witness=witness, scale=(q, r))
    assert best is not None
    return best


def delta_rho_lower(g: ColoredGraph, h: ColoredGraph, r: int = 1) -> MetricResult:
    """Lower bound on the geometric distance from neighborhood statistics.

    A star-distance w at any common scale forces class frequencies within
    t(d, r) * w of each other, so gap / (3 t(d, 2r)) never exceeds the
    geometric distance.  The witness is the class code achieving the gap.
    """
    for name, x in (("g", g), ("h", h)):
        if len(connected_components(x)) != 1:
            raise ValueError(f"{name} must be connected")
    d = max(g.d, h.d)
    cg, ch = census(g, r), census(h, r)
    gap = distribution_gap(cg, ch)
    t = ball_size_bound(d, 2 * r)
    return MetricResult(value=gap / (3 * t), kind="lower_bound",
                        witness=gap_witness(cg, ch), scale=None)
