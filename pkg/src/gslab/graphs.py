"""Finite colored graphs, rooted neighborhoods, stars, and canonical codes.

A graph carries vertex colors from an alphabet of size ``x_alphabet`` and a
color per edge *orientation* from an alphabet of size ``s_alphabet``.  Edges
are stored as ``(u, v, c_uv, c_vu)`` with ``u < v``, where ``c_uv`` colors the
orientation u -> v.  All objects are immutable after construction and every
operation here is a pure function, so results never depend on thread count.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

Edge = tuple[int, int, int, int]

# Rooted/unrooted canonical forms live in separate namespaces so a star code
# can never collide with an unrooted component code.
_ROOTED = b"R"
_UNROOTED = b"U"


@dataclass(frozen=True)
class ColoredGraph:
    """Finite simple graph with vertex colors and per-orientation edge colors.

    ``d`` is the declared degree bound.  Construction normalizes edge
    endpoint order; structural defects (loops, duplicates, degree or color
    overflow) are reported by :func:`validate`, not raised.
    """

    n: int
    d: int
    vertex_colors: tuple[int, ...]
    edges: tuple[Edge, ...]
    x_alphabet: int = 1
    s_alphabet: int = 1

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        if len(self.vertex_colors) != self.n:
            raise ValueError("vertex_colors length differs from n")
        norm = []
        for e in self.edges:
            u, v, cuv, cvu = e
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge endpoint out of range: {e}")
            if u > v:
                u, v, cuv, cvu = v, u, cvu, cuv
            norm.append((u, v, cuv, cvu))
        norm.sort()
        object.__setattr__(self, "vertex_colors", tuple(self.vertex_colors))
        object.__setattr__(self, "edges", tuple(norm))

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, int, int], ...], ...]:
        """Per-vertex tuple of (neighbor, color_out, color_in), neighbor-sorted."""
        adj: list[list[tuple[int, int, int]]] = [[] for _ in range(self.n)]
        for u, v, cuv, cvu in self.edges:
            adj[u].append((v, cuv, cvu))
            if u != v:
                adj[v].append((u, cvu, cuv))
        return tuple(tuple(sorted(a)) for a in adj)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(u for u, _, _ in self.adjacency[v])

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset((u, v) for u, v, _, _ in self.edges)


def validate(g: ColoredGraph) -> list[str]:
    """Return a list of invariant violations; empty iff the graph is sound."""
    problems = []
    seen: set[tuple[int, int]] = set()
    for u, v, cuv, cvu in g.edges:
        if u == v:
            problems.append(f"loop at {u}")
            continue
        if (u, v) in seen:
            problems.append(f"duplicate edge ({u}, {v})")
        seen.add((u, v))
        for c in (cuv, cvu):
            if not (0 <= c < g.s_alphabet):
                problems.append(f"edge color {c} out of range on edge ({u}, {v})")
    for v in range(g.n):
        deg = g.degree(v)
        if deg > g.d:
            problems.append(f"degree {deg} exceeds bound {g.d} at vertex {v}")
        c = g.vertex_colors[v]
        if not (0 <= c < g.x_alphabet):
            problems.append(f"vertex color {c} out of range at vertex {v}")
    return problems


@dataclass(frozen=True)
class RootedPattern:
    """Connected colored graph with a distinguished root.

    Vertices are relabeled in BFS order from the root (ties by source index),
    so the root is always vertex 0 and ``origin[i]`` is the source-graph
    vertex (or oracle id) behind pattern vertex ``i``.  ``radius`` is the
    eccentricity of the root, which is determined by the isomorphism class.
    """

    graph: ColoredGraph
    root: int
    radius: int
    origin: tuple = ()

    @cached_property
    def code(self) -> bytes:
        """Canonical code; equal iff two patterns are rooted color isomorphic."""
        return _canonical(self.graph, self.root)[0]

    @cached_property
    def labeling(self) -> tuple[int, ...]:
        """Map pattern vertex -> position in the canonical ordering."""
        return _canonical(self.graph, self.root)[1]


# Star is a RootedPattern restricted to root-incident edges.
Star = RootedPattern


def _bfs_layers(g: ColoredGraph, x: int, r: int | None) -> dict[int, int]:
    """Distances from x out to radius r (or the whole component if None)."""
    dist = {x: 0}
    frontier = [x]
    level = 0
    while frontier and (r is None or level < r):
        level += 1
        nxt = []
        for v in frontier:
            for u in g.neighbors(v):
                if u not in dist:
                    dist[u] = level
                    nxt.append(u)
        frontier = nxt
    return dist


def _induced_pattern(g: ColoredGraph, dist: dict[int, int], root: int,
                     edge_filter=None) -> RootedPattern:
    order = sorted(dist, key=lambda v: (dist[v], v))
    index = {v: i for i, v in enumerate(order)}
    edges = []
    for u, v, cuv, cvu in g.edges:
        if u in index and v in index:
            if edge_filter is not None and not edge_filter(u, v):
                continue
            edges.append((index[u], index[v], cuv, cvu))
    sub = ColoredGraph(
        n=len(order),
        d=g.d,
        vertex_colors=tuple(g.vertex_colors[v] for v in order),
        edges=tuple(edges),
        x_alphabet=g.x_alphabet,
        s_alphabet=g.s_alphabet,
    )
    radius = max(dist.values()) if dist else 0
    return RootedPattern(graph=sub, root=index[root], radius=radius, origin=tuple(order))


def ball(g: ColoredGraph, x: int, r: int) -> RootedPattern:
    """Induced subgraph on vertices within distance r of x, rooted at x."""
    if not (0 <= x < g.n):
        raise ValueError(f"vertex {x} out of range")
    if r < 0:
        raise ValueError("radius must be nonnegative")
    return _induced_pattern(g, _bfs_layers(g, x, r), x)


def star(g: ColoredGraph, y: int) -> Star:
    """Root y plus its neighbors, keeping only root-incident edges."""
    if not (0 <= y < g.n):
        raise ValueError(f"vertex {y} out of range")
    dist = _bfs_layers(g, y, 1)
    return _induced_pattern(g, dist, y, edge_filter=lambda u, v: u == y or v == y)


def canonical_code(p: RootedPattern) -> bytes:
    return p.code


def canonical_labeling(p: RootedPattern) -> tuple[int, ...]:
    return p.labeling


def rooted_isomorphic(a: RootedPattern, b: RootedPattern) -> bool:
    return a.code == b.code


def pattern_orbits(p: RootedPattern) -> list[tuple[int, ...]]:
    """Orbits of the rooted colored automorphism group on pattern vertices.

    Two vertices share an orbit iff pinning each of them yields the same
    canonical code, so orbits come from n pinned canonicalizations rather
    than from enumerating the automorphism group.
    """
    n = p.graph.n
    if n == 0:
        return []
    # Every rooted automorphism fixes the root; all other orbits are read
    # off equal pinned codes, where the pinned vertex sits at a fixed
    # canonical position.
    groups: dict[bytes, list[int]] = {}
    for v in range(n):
        if v == p.root:
            continue
        code = _canonical(p.graph, p.root, pin=v)[0]
        groups.setdefault(code, []).append(v)
    orbits = [(p.root,)] + [tuple(vs) for vs in groups.values()]
    return sorted(orbits)


# --------------------------------------------------------------------------
# Canonicalization: equitable color refinement plus individualization over
# the smallest non-singleton cell, root cell pinned first.  Branches are
# taken only over one representative per class of interchangeable vertices
# (vertices whose transposition is an automorphism), which removes the
# factorial blowup on star-like cells; patterns are small, so the residual
# exponential worst case is acceptable.  Exactness is what matters.
# --------------------------------------------------------------------------

_canon_cache: dict[bytes, tuple[bytes, tuple[int, ...]]] = {}


def _struct_key(g: ColoredGraph, root: int | None, pin: int | None) -> bytes:
    head = (f"{'r' if root is not None else 'u'}{root if root is not None else ''}"
            f"p{pin if pin is not None else ''}|{g.n}|")
    cols = ",".join(map(str, g.vertex_colors))
    eds = ";".join(f"{u},{v},{a},{b}" for u, v, a, b in g.edges)
    return (head + cols + "|" + eds).encode()


def _serialize(g: ColoredGraph, lab: list[int], rooted: bool) -> bytes:
    inv = [0] * g.n
    for v, pos in enumerate(lab):
        inv[pos] = v
    cols = ",".join(str(g.vertex_colors[inv[p]]) for p in range(g.n))
    out = []
    for u, v, cuv, cvu in g.edges:
        p, q = lab[u], lab[v]
        if p < q:
            out.append((p, q, cuv, cvu))
        else:
            out.append((q, p, cvu, cuv))
    out.sort()
    eds = ";".join(f"{p},{q},{a},{b}" for p, q, a, b in out)
    tag = _ROOTED if rooted else _UNROOTED
    return tag + f"|{g.n}|{cols}|{eds}".encode()


def _refine(adj, cells: list[tuple[int, ...]], n: int) -> list[tuple[int, ...]]:
    pos = [0] * n
    while True:
        for i, cell in enumerate(cells):
            for v in cell:
                pos[v] = i
        new_cells: list[tuple[int, ...]] = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            groups: dict[tuple, list[int]] = {}
            for v in cell:
                sig = tuple(sorted((pos[u], co, ci) for u, co, ci in adj[v]))
                groups.setdefault(sig, []).append(v)
            if len(groups) == 1:
                new_cells.append(cell)
            else:
                changed = True
                for sig in sorted(groups):
                    new_cells.append(tuple(groups[sig]))
        if not changed:
            return new_cells
        cells = new_cells


def _interchangeable(g: ColoredGraph, u: int, v: int) -> bool:
    """True when swapping u and v is an automorphism of g."""
    if g.vertex_colors[u] != g.vertex_colors[v]:
        return False
    au = {w: (co, ci) for w, co, ci in g.adjacency[u]}
    av = {w: (co, ci) for w, co, ci in g.adjacency[v]}
    if len(au) != len(av):
        return False
    uv = au.pop(v, None)
    vu = av.pop(u, None)
    if (uv is None) != (vu is None):
        return False
    if uv is not None and uv[0] != uv[1]:
        # the shared edge must look the same from both ends
        return False
    return au == av


def _canonical(g: ColoredGraph, root: int | None, pin: int | None = None):
    key = _struct_key(g, root, pin)
    hit = _canon_cache.get(key)
    if hit is not None:
        return hit

    n = g.n
    if n == 0:
        res = (_serialize(g, [], root is not None), ())
        _canon_cache[key] = res
        return res

    # Connectivity is required of rooted patterns; unrooted canonicalization
    # is used on connected components only.
    start = root if root is not None else 0
    if len(_bfs_layers(g, start, None)) != n:
        raise ValueError("cannot canonicalize a disconnected pattern")

    adj = g.adjacency
    pinned = [v for v in (root, pin) if v is not None]
    groups: dict[tuple, list[int]] = {}
    for v in range(n):
        if v in pinned:
            continue
        base = (g.vertex_colors[v], len(adj[v]),
                tuple(sorted((co, ci) for _, co, ci in adj[v])))
        groups.setdefault(base, []).append(v)
    cells: list[tuple[int, ...]] = [(v,) for v in dict.fromkeys(pinned)]
    for base in sorted(groups):
        cells.append(tuple(groups[base]))

    best_code: bytes | None = None
    best_lab: list[int] | None = None

    def leaf(cells: list[tuple[int, ...]]) -> None:
        nonlocal best_code, best_lab
        lab = [0] * n
        for i, cell in enumerate(cells):
            lab[cell[0]] = i
        code = _serialize(g, lab, root is not None)
        if best_code is None or code < best_code:
            best_code, best_lab = code, lab

    def descend(cells: list[tuple[int, ...]]) -> None:
        cells = _refine(adj, cells, n)
        target_idx = -1
        for i, cell in enumerate(cells):
            if len(cell) > 1 and (target_idx < 0 or len(cell) < len(cells[target_idx])):
                target_idx = i
        if target_idx < 0:
            leaf(cells)
            return
        target = cells[target_idx]
        reps: list[int] = []
        for v in target:
            if not any(_interchangeable(g, v, u) for u in reps):
                reps.append(v)
        for v in reps:
            rest = tuple(u for u in target if u != v)
            descend(cells[:target_idx] + [(v,), rest] + cells[target_idx + 1:])

    descend(cells)
    assert best_code is not None and best_lab is not None
    res = (best_code, tuple(best_lab))
    _canon_cache[key] = res
    return res


def pattern_from_code(code: bytes) -> RootedPattern:
    """Rebuild a representative pattern from a canonical code."""
    tag, n_s, cols_s, eds_s = code.split(b"|", 3)
    if tag not in (_ROOTED, _UNROOTED):
        raise ValueError("malformed pattern code")
    n = int(n_s)
    colors = tuple(int(c) for c in cols_s.decode().split(",")) if n else ()
    edges = []
    if eds_s:
        for part in eds_s.decode().split(";"):
            u, v, a, b = (int(t) for t in part.split(","))
            edges.append((u, v, a, b))
    degs = [0] * n
    for u, v, _, _ in edges:
        degs[u] += 1
        degs[v] += 1
    g = ColoredGraph(
        n=n,
        d=max(degs, default=0),
        vertex_colors=colors,
        edges=tuple(edges),
        x_alphabet=max(colors, default=0) + 1,
        s_alphabet=max((max(a, b) for _, _, a, b in edges), default=0) + 1,
    )
    dist = _bfs_layers(g, 0, None) if n else {}
    radius = max(dist.values()) if dist else 0
    return RootedPattern(graph=g, root=0, radius=radius, origin=tuple(range(n)))


def component_code(g: ColoredGraph, vertices: tuple[int, ...]) -> bytes:
    """Unrooted canonical code of the induced subgraph on one component."""
    dist = {v: 0 for v in vertices}
    pat = _induced_pattern(g, dist, vertices[0])
    return _canonical(pat.graph, None)[0]


def connected_components(g: ColoredGraph) -> list[tuple[int, ...]]:
    seen: set[int] = set()
    comps = []
    for v in range(g.n):
        if v in seen:
            continue
        comp = sorted(_bfs_layers(g, v, None))
        seen.update(comp)
        comps.append(tuple(comp))
    return comps


def permute(g: ColoredGraph, sigma: tuple[int, ...]) -> ColoredGraph:
    """Relabeled copy: vertex v of g becomes sigma[v], colors carried along."""
    if sorted(sigma) != list(range(g.n)):
        raise ValueError("sigma is not a permutation of the vertex set")
    colors = [0] * g.n
    for v in range(g.n):
        colors[sigma[v]] = g.vertex_colors[v]
    edges = tuple((sigma[u], sigma[v], cuv, cvu) for u, v, cuv, cvu in g.edges)
    return ColoredGraph(n=g.n, d=g.d, vertex_colors=tuple(colors), edges=edges,
                        x_alphabet=g.x_alphabet, s_alphabet=g.s_alphabet)


def disjoint_union(graphs: list[ColoredGraph]) -> ColoredGraph:
    """Disjoint union on a common index space, blocks in argument order."""
    if not graphs:
        raise ValueError("empty union")
    d = max(g.d for g in graphs)
    xa = max(g.x_alphabet for g in graphs)
    sa = max(g.s_alphabet for g in graphs)
    colors: list[int] = []
    edges: list[Edge] = []
    off = 0
    for g in graphs:
        colors.extend(g.vertex_colors)
        edges.extend((u + off, v + off, a, b) for u, v, a, b in g.edges)
        off += g.n
    return ColoredGraph(n=off, d=d, vertex_colors=tuple(colors),
                        edges=tuple(edges), x_alphabet=xa, s_alphabet=sa)


def ball_size_bound(d: int, r: int) -> int:
    """Max vertices of a radius-r ball under degree bound d (Moore bound)."""
    if r <= 0 or d <= 0:
        return 1
    if d == 1:
        return 2
    if d == 2:
        return 2 * r + 1
    return 1 + d * ((d - 1) ** r - 1) // (d - 2)


# --------------------------------------------------------------------------
# JSON interchange
# --------------------------------------------------------------------------

def graph_to_json(g: ColoredGraph) -> dict:
    return {
        "d": g.d,
        "x_alphabet": g.x_alphabet,
        "s_alphabet": g.s_alphabet,
        "vertex_colors": list(g.vertex_colors),
        "edges": [list(e) for e in g.edges],
    }


def graph_from_json(obj: dict) -> ColoredGraph:
    colors = tuple(obj["vertex_colors"])
    return ColoredGraph(
        n=len(colors),
        d=int(obj["d"]),
        vertex_colors=colors,
        edges=tuple(tuple(e) for e in obj["edges"]),
        x_alphabet=int(obj.get("x_alphabet", 1)),
        s_alphabet=int(obj.get("s_alphabet", 1)),
    )


def load_graph(path: str) -> ColoredGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return graph_from_json(json.load(fh))


def save_graph(g: ColoredGraph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(graph_to_json(g), fh, indent=0, sort_keys=True)
        fh.write("\n")
