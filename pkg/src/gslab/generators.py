"""Deterministic graph families and lazy adjacency oracles.

Finite families: paths, cycles, square/cubic lattice boxes, a control
random-regular generator, and an iterated self-similar construction.
Infinite ambient graphs (lattices, the glued two-and-three dimensional
lattice, regular trees) are exposed as pure adjacency oracles over
structured vertex ids and materialized on demand.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .graphs import ColoredGraph, connected_components, validate


def path(n: int) -> ColoredGraph:
    if n < 1:
        raise ValueError("n must be positive")
    edges = tuple((i, i + 1, 0, 0) for i in range(n - 1))
    return ColoredGraph(n=n, d=2, vertex_colors=(0,) * n, edges=edges)


def cycle(n: int) -> ColoredGraph:
    if n < 1:
        raise ValueError("n must be positive")
    if n <= 2:
        # Degenerate cycles collapse to a vertex or a single edge.
        return path(n)
    edges = tuple((i, i + 1, 0, 0) for i in range(n - 1)) + ((0, n - 1, 0, 0),)
    return ColoredGraph(n=n, d=2, vertex_colors=(0,) * n, edges=edges)


def grid2d(n: int) -> ColoredGraph:
    """n-by-n box of the square lattice, row-major vertex order."""
    if n < 1:
        raise ValueError("n must be positive")
    edges = []
    for r in range(n):
        for c in range(n):
            v = r * n + c
            if c + 1 < n:
                edges.append((v, v + 1, 0, 0))
            if r + 1 < n:
                edges.append((v, v + n, 0, 0))
    return ColoredGraph(n=n * n, d=4, vertex_colors=(0,) * (n * n), edges=tuple(edges))


def grid3d(n: int) -> ColoredGraph:
    """n-by-n-by-n box of the cubic lattice."""
    if n < 1:
        raise ValueError("n must be positive")
    edges = []
    for x in range(n):
        for y in range(n):
            for z in range(n):
                v = (x * n + y) * n + z
                if z + 1 < n:
                    edges.append((v, v + 1, 0, 0))
                if y + 1 < n:
                    edges.append((v, v + n, 0, 0))
                if x + 1 < n:
                    edges.append((v, v + n * n, 0, 0))
    return ColoredGraph(n=n ** 3, d=6, vertex_colors=(0,) * n ** 3, edges=tuple(edges))


def random_regular(n: int, d: int, seed: int, max_tries: int = 2000) -> ColoredGraph:
    """Connected random d-regular graph via the pairing model with rejection."""
    if n * d % 2 != 0:
        raise ValueError("n*d must be even")
    rng = np.random.RandomState(seed)
    stubs = np.repeat(np.arange(n), d)
    for _ in range(max_tries):
        perm = rng.permutation(stubs)
        edges = set()
        ok = True
        for i in range(0, len(perm), 2):
            u, v = int(perm[i]), int(perm[i + 1])
            if u == v:
                ok = False
                break
            key = (min(u, v), max(u, v))
            if key in edges:
                ok = False
                break
            edges.add(key)
        if not ok:
            continue
        g = ColoredGraph(n=n, d=d, vertex_colors=(0,) * n,
                         edges=tuple((u, v, 0, 0) for u, v in sorted(edges)))
        if len(connected_components(g)) == 1:
            return g
    raise RuntimeError("failed to sample a connected regular graph")


# --------------------------------------------------------------------------
# Adjacency oracles for infinite ambient graphs
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class AdjacencyOracle:
    """Pure neighbor function over structured, sortable vertex ids."""

    d: int
    neighbors: Callable
    vertex_color: Callable = field(default=lambda v: 0)
    edge_colors: Callable = field(default=lambda u, v: (0, 0))
    x_alphabet: int = 1
    s_alphabet: int = 1


def lattice2d_oracle() -> AdjacencyOracle:
    def nbrs(v):
        x, y = v
        return ((x - 1, y), (x + 1, y), (x, y - 1), (x, y + 1))
    return AdjacencyOracle(d=4, neighbors=nbrs)


def lattice3d_oracle() -> AdjacencyOracle:
    def nbrs(v):
        x, y, z = v
        return ((x - 1, y, z), (x + 1, y, z), (x, y - 1, z),
                (x, y + 1, z), (x, y, z - 1), (x, y, z + 1))
    return AdjacencyOracle(d=6, neighbors=nbrs)


GLUE_ORIGIN = ("o",)


def glued_lattice_oracle() -> AdjacencyOracle:
    """Square and cubic lattices sharing a single identified origin.

    Ids are ("2d", (x, y)) and ("3d", (x, y, z)); the shared origin is the
    distinguished id ("o",) with degree 4 + 6 = 10.
    """

    def norm2(x, y):
        return GLUE_ORIGIN if x == 0 and y == 0 else ("2d", (x, y))

    def norm3(x, y, z):
        return GLUE_ORIGIN if x == y == z == 0 else ("3d", (x, y, z))

    def nbrs(v):
        if v == GLUE_ORIGIN:
            return (norm2(-1, 0), norm2(1, 0), norm2(0, -1), norm2(0, 1),
                    norm3(-1, 0, 0), norm3(1, 0, 0), norm3(0, -1, 0),
                    norm3(0, 1, 0), norm3(0, 0, -1), norm3(0, 0, 1))
        tag, coords = v
        if tag == "2d":
            x, y = coords
            return (norm2(x - 1, y), norm2(x + 1, y), norm2(x, y - 1), norm2(x, y + 1))
        if tag == "3d":
            x, y, z = coords
            return (norm3(x - 1, y, z), norm3(x + 1, y, z), norm3(x, y - 1, z),
                    norm3(x, y + 1, z), norm3(x, y, z - 1), norm3(x, y, z + 1))
        raise ValueError(f"malformed id: {v!r}")

    return AdjacencyOracle(d=10, neighbors=nbrs)


def regular_tree_oracle(degree: int) -> AdjacencyOracle:
    """Infinite degree-regular tree; ids are tuples of child indices."""

    def nbrs(v):
        out = []
        if v == ():
            out = [(i,) for i in range(degree)]
        else:
            out.append(v[:-1])
            out.extend(v + (i,) for i in range(degree - 1))
        return tuple(out)

    return AdjacencyOracle(d=degree, neighbors=nbrs)


def graph_oracle(g: ColoredGraph) -> AdjacencyOracle:
    """View a finite graph as an adjacency oracle over its integer ids."""
    return AdjacencyOracle(
        d=g.d,
        neighbors=lambda v: g.neighbors(v),
        vertex_color=lambda v: g.vertex_colors[v],
        edge_colors=lambda u, v: _finite_edge_colors(g, u, v),
        x_alphabet=g.x_alphabet,
        s_alphabet=g.s_alphabet,
    )


def _finite_edge_colors(g: ColoredGraph, u, v):
    for w, co, ci in g.adjacency[u]:
        if w == v:
            return (co, ci)
    raise ValueError(f"no edge ({u}, {v})")


@dataclass(frozen=True)
class MaterializedSubgraph:
    """Finite induced subgraph of an oracle with its id <-> index maps."""

    graph: ColoredGraph
    ids: tuple

    @property
    def index(self) -> dict:
        return {vid: i for i, vid in enumerate(self.ids)}


def materialize(oracle: AdjacencyOracle, ids) -> MaterializedSubgraph:
    """Induced subgraph on a finite id set, indices in lexicographic id order."""
    order = tuple(sorted(ids))
    index = {vid: i for i, vid in enumerate(order)}
    edges = []
    for vid in order:
        for uid in oracle.neighbors(vid):
            if uid in index and index[vid] < index[uid]:
                co, ci = oracle.edge_colors(vid, uid)
                edges.append((index[vid], index[uid], co, ci))
    g = ColoredGraph(
        n=len(order),
        d=oracle.d,
        vertex_colors=tuple(oracle.vertex_color(v) for v in order),
        edges=tuple(edges),
        x_alphabet=oracle.x_alphabet,
        s_alphabet=oracle.s_alphabet,
    )
    return MaterializedSubgraph(graph=g, ids=order)


def box_ids_2d(n: int):
    ids = [GLUE_ORIGIN]
    for x in range(n):
        for y in range(n):
            if x or y:
                ids.append(("2d", (x, y)))
    return ids


def box_ids_3d(n: int):
    ids = [GLUE_ORIGIN]
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if x or y or z:
                    ids.append(("3d", (x, y, z)))
    return ids


def folner_boxes(oracle: AdjacencyOracle, side: str, sizes) -> list[MaterializedSubgraph]:
    """Boxes growing into one side of the glued lattice.

    Boxes are anchored with the glue point on the corner, so apart from the
    shared origin they never reach into the other side.
    """
    subs = []
    for n in sizes:
        if side == "2d":
            ids = box_ids_2d(n)
        elif side == "3d":
            ids = box_ids_3d(n)
        else:
            raise ValueError(f"unknown side {side!r}")
        subs.append(materialize(oracle, ids))
    return subs


# --------------------------------------------------------------------------
# Self-similar construction
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class LevelRule:
    """Inter-copy edges and the next connecting set for one growth level.

    Endpoints are (copy, slot) pairs: copy 1 is the previous-level graph and
    slot i addresses the i-th current connecting vertex of that copy.  The
    next connecting set must avoid copy 1.
    """

    edges: tuple
    next_connectors: tuple


@dataclass(frozen=True)
class SelfSimilarSpec:
    base: ColoredGraph
    connectors: tuple[int, ...]
    copies: int
    d: int
    rules: tuple  # rule for level i is rules[min(i, len-1)]


def default_chain_spec() -> SelfSimilarSpec:
    """Path chain: each level lays three copies end to end as c2-c1-c3.

    Grows paths of 4 * 3**(level-1) vertices with the two extreme endpoints
    as connecting set, which keeps the connecting fraction shrinking and the
    previous level's boundary inside its connecting set.
    """
    rule = LevelRule(
        edges=(((2, 1), (1, 0)), ((1, 1), (3, 0))),
        next_connectors=((2, 0), (3, 1)),
    )
    return SelfSimilarSpec(base=path(4), connectors=(0, 3), copies=3, d=2, rules=(rule,))


def self_similar_sequence(spec: SelfSimilarSpec, levels: int):
    """All levels ``(graph, connectors)`` of the iterated construction.

    Level n+1 consists of ``copies`` disjoint copies of level n (the first
    copy keeps its vertex ids) plus the rule's edges between connecting
    vertices; degree bound, connectivity, and disjointness of the new
    connecting set from the first copy are all enforced.
    """
    if levels < 1:
        raise ValueError("levels must be positive")
    g, conn = spec.base, tuple(spec.connectors)
    if any(not (0 <= v < g.n) for v in conn):
        raise ValueError("connector outside base graph")
    out = [(g, conn)]
    for level in range(1, levels):
        rule = spec.rules[min(level - 1, len(spec.rules) - 1)]
        m = g.n
        copies = [g] * spec.copies
        from .graphs import disjoint_union
        big = disjoint_union(copies)

        def resolve(ref, conn=conn, m=m):
            copy, slot = ref
            if not (1 <= copy <= spec.copies):
                raise ValueError(f"copy index {copy} out of range")
            if not (0 <= slot < len(conn)):
                raise ValueError(f"connector slot {slot} out of range")
            return (copy - 1) * m + conn[slot]

        degs = {v: big.degree(v) for v in range(big.n)}
        new_edges = []
        for a_ref, b_ref in rule.edges:
            a, b = resolve(a_ref), resolve(b_ref)
            for v in (a, b):
                if degs[v] + 1 > spec.d:
                    raise ValueError(
                        f"level {level + 1}: adding edge at vertex {v} exceeds degree bound {spec.d}")
            degs[a] += 1
            degs[b] += 1
            new_edges.append((a, b, 0, 0))
        nxt = []
        for ref in rule.next_connectors:
            if ref[0] == 1:
                raise ValueError("next connecting set must avoid the first copy")
            nxt.append(resolve(ref))
        g = ColoredGraph(n=big.n, d=spec.d, vertex_colors=big.vertex_colors,
                         edges=big.edges + tuple(new_edges),
                         x_alphabet=big.x_alphabet, s_alphabet=big.s_alphabet)
        if len(connected_components(g)) != 1:
            raise ValueError(f"level {level + 1} is disconnected")
        bad = validate(g)
        if bad:
            raise ValueError(f"level {level + 1} invalid: {bad[0]}")
        conn = tuple(nxt)
        if set(conn) & set(range(m)):
            raise ValueError("next connecting set intersects the previous level")
        out.append((g, conn))
    return out


def self_similar(spec: SelfSimilarSpec, levels: int):
    """Final level of :func:`self_similar_sequence`."""
    return self_similar_sequence(spec, levels)[-1]


def spec_to_json(spec: SelfSimilarSpec) -> dict:
    from .graphs import graph_to_json
    return {
        "base": graph_to_json(spec.base),
        "connectors": list(spec.connectors),
        "copies": spec.copies,
        "d": spec.d,
        "rules": [
            {"edges": [[list(a), list(b)] for a, b in r.edges],
             "next_connectors": [list(c) for c in r.next_connectors]}
            for r in spec.rules
        ],
    }


def spec_from_json(obj: dict) -> SelfSimilarSpec:
    from .graphs import graph_from_json
    rules = tuple(
        LevelRule(
            edges=tuple((tuple(a), tuple(b)) for a, b in r["edges"]),
            next_connectors=tuple(tuple(c) for c in r["next_connectors"]),
        )
        for r in obj["rules"]
    )
    return SelfSimilarSpec(
        base=graph_from_json(obj["base"]),
        connectors=tuple(obj["connectors"]),
        copies=int(obj["copies"]),
        d=int(obj["d"]),
        rules=rules,
    )
