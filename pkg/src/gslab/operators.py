"""Finite-range operator kernels driven by local pattern rules.

A kernel stores sparse real entries A(x, y) supported within a distance
bound on its graph.  Rules assign to every radius-s pattern class a value
vector over the canonically labeled pattern vertices; building a kernel
from a rule makes row x a function of the class of the ball around x only.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import fsum

import numpy as np

from .generators import AdjacencyOracle, MaterializedSubgraph
from .graphs import (ColoredGraph, RootedPattern, ball, ball_size_bound,
                     pattern_from_code, pattern_orbits)


@dataclass(frozen=True)
class OperatorKernel:
    """Sparse symmetric-support kernel with a range and magnitude bound."""

    graph: ColoredGraph
    radius: int  # entries vanish beyond this graph distance
    entries: dict  # (x, y) -> nonzero float
    bound_m: float  # max absolute entry, recomputed on construction

    @staticmethod
    def build(graph: ColoredGraph, radius: int, entries: dict) -> "OperatorKernel":
        clean = {k: float(v) for k, v in entries.items() if v != 0.0}
        bound = max((abs(v) for v in clean.values()), default=0.0)
        return OperatorKernel(graph=graph, radius=radius, entries=clean, bound_m=bound)

    def rows(self) -> dict:
        out: dict[int, dict[int, float]] = {}
        for (x, y), v in self.entries.items():
            out.setdefault(x, {})[y] = v
        return out

    def to_dense(self) -> np.ndarray:
        a = np.zeros((self.graph.n, self.graph.n))
        for (x, y), v in self.entries.items():
            a[x, y] = v
        return a


@dataclass(frozen=True)
class InvariantRule:
    """Value vectors per pattern class, indexed by canonical vertex position.

    A rule is rejected at load time unless every vector is constant on the
    orbits of the pattern's rooted colored automorphism group; anything else
    would make rows depend on the labeling rather than the class.
    """

    radius: int
    table: dict  # canonical code (bytes) -> tuple of values


def validate_rule(rule: InvariantRule) -> None:
    for code, values in rule.table.items():
        pat = pattern_from_code(code)
        if len(values) != pat.graph.n:
            raise ValueError("value vector length differs from pattern size")
        if pat.radius > rule.radius:
            raise ValueError("pattern radius exceeds rule radius")
        lab = pat.labeling
        for orbit in pattern_orbits(pat):
            vals = {values[lab[v]] for v in orbit}
            if len(vals) > 1:
                raise ValueError(
                    f"rule not automorphism-invariant on orbit {orbit} of class {code.hex()[:24]}")


def laplacian(g: ColoredGraph) -> OperatorKernel:
    """Degree on the diagonal, -1 across every edge; range 1."""
    entries: dict[tuple[int, int], float] = {}
    for v in range(g.n):
        deg = g.degree(v)
        if deg:
            entries[(v, v)] = float(deg)
        for u, _, _ in g.adjacency[v]:
            entries[(v, u)] = -1.0
    return OperatorKernel.build(g, 1, entries)


def laplacian_rule(g: ColoredGraph) -> InvariantRule:
    """The degree/-1 rule expressed over the radius-1 classes of g."""
    table: dict[bytes, tuple] = {}
    for x in range(g.n):
        pat = ball(g, x, 1)
        if pat.code in table:
            continue
        table[pat.code] = _laplacian_values(pat)
    return InvariantRule(radius=1, table=table)


def _laplacian_values(pat: RootedPattern) -> tuple:
    lab = pat.labeling
    vals = [0.0] * pat.graph.n
    vals[lab[0]] = float(pat.graph.degree(0))
    for u in pat.graph.neighbors(0):
        vals[lab[u]] = -1.0
    return tuple(vals)


def kernel_from_rule(g: ColoredGraph, rule: InvariantRule) -> OperatorKernel:
    """Kernel whose row at x is the rule's vector for the class of B_s(x)."""
    validate_rule(rule)
    entries: dict[tuple[int, int], float] = {}
    for x in range(g.n):
        pat = ball(g, x, rule.radius)
        values = rule.table.get(pat.code)
        if values is None:
            raise KeyError(
                f"rule has no class for vertex {x} (code {pat.code.hex()[:24]})")
        lab = pat.labeling
        for local, orig in enumerate(pat.origin):
            v = values[lab[local]]
            if v != 0.0:
                entries[(x, orig)] = float(v)
    return OperatorKernel.build(g, rule.radius, entries)


def extract_rule(g: ColoredGraph, kernel: OperatorKernel, s: int) -> InvariantRule:
    """Read the local rule back off a pattern-invariant kernel."""
    rows = kernel.rows()
    table: dict[bytes, tuple] = {}
    for x in range(g.n):
        pat = ball(g, x, s)
        if pat.code in table:
            continue
        lab = pat.labeling
        vals = [0.0] * pat.graph.n
        row = rows.get(x, {})
        for local, orig in enumerate(pat.origin):
            vals[lab[local]] = row.get(orig, 0.0)
        table[pat.code] = tuple(vals)
    return InvariantRule(radius=s, table=table)


def add(a: OperatorKernel, b: OperatorKernel) -> OperatorKernel:
    _same_graph(a, b)
    entries = dict(a.entries)
    for k, v in b.entries.items():
        entries[k] = entries.get(k, 0.0) + v
    return OperatorKernel.build(a.graph, max(a.radius, b.radius), entries)


def multiply(a: OperatorKernel, b: OperatorKernel) -> OperatorKernel:
    """Matrix product; ranges add and the magnitude bound multiplies by the
    ball-size factor t(d, s_a)."""
    _same_graph(a, b)
    rows_b = b.rows()
    entries: dict[tuple[int, int], float] = {}
    acc: dict[int, dict[int, list[float]]] = {}
    for (x, z), av in sorted(a.entries.items()):
        row = rows_b.get(z)
        if not row:
            continue
        dest = acc.setdefault(x, {})
        for y, bv in row.items():
            dest.setdefault(y, []).append(av * bv)
    for x, dest in acc.items():
        for y, parts in dest.items():
            v = fsum(parts)
            if v != 0.0:
                entries[(x, y)] = v
    return OperatorKernel.build(a.graph, a.radius + b.radius, entries)


def adjoint(a: OperatorKernel) -> OperatorKernel:
    entries = {(y, x): v for (x, y), v in a.entries.items()}
    return OperatorKernel.build(a.graph, a.radius, entries)


def identity_kernel(g: ColoredGraph) -> OperatorKernel:
    return OperatorKernel.build(g, 0, {(v, v): 1.0 for v in range(g.n)})


def _same_graph(a: OperatorKernel, b: OperatorKernel) -> None:
    if a.graph is not b.graph and a.graph != b.graph:
        raise ValueError("kernels live on different graphs")


def product_bound(a: OperatorKernel, b: OperatorKernel) -> float:
    """Entrywise bound m_a * m_b * t(d, s_a) for the product kernel."""
    return a.bound_m * b.bound_m * ball_size_bound(a.graph.d, a.radius)


def operator_norm_bound(a: OperatorKernel) -> float:
    """Bound 2 m t(d, s) on the spectral radius of a symmetric kernel."""
    return 2.0 * a.bound_m * ball_size_bound(a.graph.d, a.radius)


def check_pattern_invariance(g: ColoredGraph, kernel: OperatorKernel, s: int) -> bool:
    """True iff rows agree across vertices with equal radius-s ball classes."""
    rows = kernel.rows()
    seen: dict[bytes, dict] = {}
    for x in range(g.n):
        pat = ball(g, x, s)
        lab = pat.labeling
        row = rows.get(x, {})
        in_ball = set(pat.origin)
        if any(y not in in_ball for y in row):
            return False  # support escapes the radius-s ball
        canon = {}
        for local, orig in enumerate(pat.origin):
            v = row.get(orig, 0.0)
            if v != 0.0:
                canon[lab[local]] = v
        ref = seen.setdefault(pat.code, canon)
        if ref is not canon and ref != canon:
            return False
    return True


# --------------------------------------------------------------------------
# Ambient restriction (finite volume approximation)
# --------------------------------------------------------------------------

def oracle_ball(oracle: AdjacencyOracle, center, r: int) -> RootedPattern:
    """Radius-r ball of an ambient oracle, materialized as a rooted pattern."""
    dist = {center: 0}
    frontier = [center]
    for level in range(1, r + 1):
        nxt = []
        for v in frontier:
            for u in oracle.neighbors(v):
                if u not in dist:
                    dist[u] = level
                    nxt.append(u)
        frontier = nxt
    order = sorted(dist, key=lambda v: (dist[v], v))
    index = {v: i for i, v in enumerate(order)}
    edges = []
    for vid in order:
        for uid in oracle.neighbors(vid):
            if uid in index and index[vid] < index[uid]:
                co, ci = oracle.edge_colors(vid, uid)
                edges.append((index[vid], index[uid], co, ci))
    g = ColoredGraph(n=len(order), d=oracle.d,
                     vertex_colors=tuple(oracle.vertex_color(v) for v in order),
                     edges=tuple(edges), x_alphabet=oracle.x_alphabet,
                     s_alphabet=oracle.s_alphabet)
    radius = max(dist.values()) if dist else 0
    return RootedPattern(graph=g, root=0, radius=radius, origin=tuple(order))


def ambient_laplacian_rule(oracle: AdjacencyOracle, ids) -> InvariantRule:
    """Degree/-1 rule over the ambient radius-1 classes seen from ids."""
    table: dict[bytes, tuple] = {}
    for vid in sorted(ids):
        pat = oracle_ball(oracle, vid, 1)
        if pat.code not in table:
            table[pat.code] = _laplacian_values(pat)
    return InvariantRule(radius=1, table=table)


def restrict(rule: InvariantRule, oracle: AdjacencyOracle,
             sub: MaterializedSubgraph) -> OperatorKernel:
    """Compression of the ambient rule kernel to a finite subgraph.

    Rows are determined by ambient balls, not subgraph balls, and entries
    leading outside the subgraph are dropped.
    """
    validate_rule(rule)
    index = sub.index
    entries: dict[tuple[int, int], float] = {}
    for i, vid in enumerate(sub.ids):
        pat = oracle_ball(oracle, vid, rule.radius)
        values = rule.table.get(pat.code)
        if values is None:
            raise KeyError(f"rule has no class for ambient vertex {vid!r}")
        lab = pat.labeling
        for local, orig in enumerate(pat.origin):
            j = index.get(orig)
            if j is None:
                continue
            v = values[lab[local]]
            if v != 0.0:
                entries[(i, j)] = float(v)
    return OperatorKernel.build(sub.graph, rule.radius, entries)


# --------------------------------------------------------------------------
# JSON interchange
# --------------------------------------------------------------------------

def rule_to_json(rule: InvariantRule) -> dict:
    return {
        "radius": rule.radius,
        "table": {code.hex(): list(vals) for code, vals in sorted(rule.table.items())},
    }


def rule_from_json(obj: dict) -> InvariantRule:
    table = {bytes.fromhex(code): tuple(float(v) for v in vals)
             for code, vals in obj["table"].items()}
    rule = InvariantRule(radius=int(obj["radius"]), table=table)
    validate_rule(rule)
    return rule


def load_rule(path: str) -> InvariantRule:
    with open(path, "r", encoding="utf-8") as fh:
        return rule_from_json(json.load(fh))


def save_rule(rule: InvariantRule, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(rule_to_json(rule), fh, indent=0, sort_keys=True)
        fh.write("\n")
