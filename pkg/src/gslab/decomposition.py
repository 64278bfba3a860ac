"""Hyperfinite decomposition certificates and Folner boundary profiles.

``decompose_by_growth`` grows balls until the next shell (and the edge cut
in front of it) is a small fraction of the ball, detaches the ball as a
finished component, and recurses on the rest.  On graph families whose
balls grow subexponentially this terminates with a removed-edge fraction
at most epsilon and a component size bound independent of the graph size.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .generators import AdjacencyOracle
from .graphs import ColoredGraph


@dataclass(frozen=True)
class DecompositionCertificate:
    """Witness that removing ``removed_edges`` splits g into small parts.

    ``k`` is the largest component size; ``edges_removed_fraction`` and the
    exceptional-vertex fraction (vertices losing at least one edge) are both
    recorded since the two epsilon accountings differ by a degree factor.
    """

    epsilon: float
    removed_edges: tuple
    components: tuple
    k: int
    edges_removed_fraction: float
    exceptional_vertex_fraction: float


def decompose_by_growth(g: ColoredGraph, eps: float) -> DecompositionCertificate:
    """Ball-growth decomposition into components of epsilon-bounded cut cost.

    Repeatedly takes the lowest remaining vertex x and grows the remainder
    ball B_r(x) to the smallest radius whose boundary cut satisfies
    cut(B_r) <= eps * (E(B_r) + cut(B_r)); those cut edges are removed,
    B_r(x) is finished, and the shell stays in the remainder.  Charging
    every component's cut against the edges it consumes keeps the total
    removed fraction at most eps, and the stopping radius depends only on
    local geometry, so component sizes on homogeneous families do not grow
    with the graph.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    if eps >= 1:
        comps = _components_after_removal(g, set())
        return _certificate(g, eps, [], comps)

    active = [True] * g.n
    removed: list[tuple[int, int]] = []
    components: list[tuple[int, ...]] = []
    remaining = g.n
    next_start = 0
    while remaining > 0:
        while not active[next_start]:
            next_start += 1
        x = next_start
        ball, cut = _grow_ball(g, active, x, eps)
        removed.extend(cut)
        components.append(tuple(sorted(ball)))
        for v in ball:
            active[v] = False
        remaining -= len(ball)
    return _certificate(g, eps, removed, components)


def _grow_ball(g: ColoredGraph, active: list[bool], x: int, eps: float):
    """Smallest remainder ball around x with an eps-small boundary cut.

    Only the current frontier can touch the next shell, so the cut is
    scanned from the frontier alone.  Exhausting the component makes the
    cut empty, which guarantees termination.
    """
    in_ball = {x}
    internal_edges = 0
    frontier = [x]
    while True:
        shell = set()
        for v in frontier:
            for u in g.neighbors(v):
                if active[u] and u not in in_ball:
                    shell.add(u)
        cut = sorted(set(
            (min(v, u), max(v, u))
            for v in frontier for u in g.neighbors(v) if u in shell))
        if len(cut) <= eps * (internal_edges + len(cut)):
            return in_ball, cut
        shell_internal = sum(1 for v in shell for u in g.neighbors(v)
                             if u in shell and u > v)
        internal_edges += len(cut) + shell_internal
        in_ball |= shell
        frontier = sorted(shell)


def _components_after_removal(g: ColoredGraph, removed: set) -> list[tuple[int, ...]]:
    seen = [False] * g.n
    comps = []
    for v in range(g.n):
        if seen[v]:
            continue
        comp = [v]
        seen[v] = True
        stack = [v]
        while stack:
            w = stack.pop()
            for u in g.neighbors(w):
                if not seen[u] and (min(w, u), max(w, u)) not in removed:
                    seen[u] = True
                    comp.append(u)
                    stack.append(u)
        comps.append(tuple(sorted(comp)))
    return comps


def _certificate(g: ColoredGraph, eps: float, removed, components) -> DecompositionCertificate:
    m_edges = len(g.edges)
    removed = tuple(sorted(set(removed)))
    exceptional = set()
    for u, v in removed:
        exceptional.add(u)
        exceptional.add(v)
    k = max((len(c) for c in components), default=0)
    return DecompositionCertificate(
        epsilon=eps,
        removed_edges=removed,
        components=tuple(sorted(components)),
        k=k,
        edges_removed_fraction=(len(removed) / m_edges) if m_edges else 0.0,
        exceptional_vertex_fraction=(len(exceptional) / g.n) if g.n else 0.0,
    )


def verify_certificate(g: ColoredGraph, cert: DecompositionCertificate,
                       eps: float, k_max: int) -> bool:
    """Recheck a certificate against the graph from scratch.

    True iff the removed edges all exist, removing exactly them yields the
    listed components, the removed fraction is within eps, and every
    component has at most k_max vertices.  Dangling edge references raise.
    """
    removed = set()
    for u, v in cert.removed_edges:
        key = (min(u, v), max(u, v))
        if key not in g.edge_set:
            raise ValueError(f"removed edge {key} not in graph")
        removed.add(key)
    m_edges = len(g.edges)
    fraction = (len(removed) / m_edges) if m_edges else 0.0
    if fraction > eps:
        return False
    comps = _components_after_removal(g, removed)
    if sorted(comps) != sorted(tuple(sorted(c)) for c in cert.components):
        return False
    return all(len(c) <= k_max for c in comps)


def boundary(ambient: AdjacencyOracle, sub) -> set:
    """Vertices of sub with at least one ambient neighbor outside sub."""
    sub = set(sub)
    out = set()
    for v in sub:
        if any(u not in sub for u in ambient.neighbors(v)):
            out.add(v)
    return out


@dataclass(frozen=True)
class FolnerRow:
    size: int
    boundary_size: int
    ratio: float


@dataclass(frozen=True)
class FolnerProfile:
    rows: tuple
    decreasing: bool  # strictly decreasing boundary ratios


def folner_profile(ambient: AdjacencyOracle, subs) -> FolnerProfile:
    rows = []
    for sub in subs:
        sub = set(sub)
        b = len(boundary(ambient, sub))
        rows.append(FolnerRow(size=len(sub), boundary_size=b,
                              ratio=b / len(sub) if sub else 0.0))
    ratios = [r.ratio for r in rows]
    decreasing = all(b < a for a, b in zip(ratios, ratios[1:]))
    return FolnerProfile(rows=tuple(rows), decreasing=decreasing)


# --------------------------------------------------------------------------
# JSON interchange
# --------------------------------------------------------------------------

def certificate_to_json(cert: DecompositionCertificate) -> dict:
    return {
        "epsilon": cert.epsilon,
        "removed_edges": [list(e) for e in cert.removed_edges],
        "components": [list(c) for c in cert.components],
        "k": cert.k,
        "edges_removed_fraction": cert.edges_removed_fraction,
        "exceptional_vertex_fraction": cert.exceptional_vertex_fraction,
    }


def certificate_from_json(obj: dict) -> DecompositionCertificate:
    return DecompositionCertificate(
        epsilon=float(obj["epsilon"]),
        removed_edges=tuple(tuple(e) for e in obj["removed_edges"]),
        components=tuple(tuple(c) for c in obj["components"]),
        k=int(obj["k"]),
        edges_removed_fraction=float(obj["edges_removed_fraction"]),
        exceptional_vertex_fraction=float(obj["exceptional_vertex_fraction"]),
    )
