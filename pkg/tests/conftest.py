"""Shared helpers: seeded random colored graphs and brute-force oracles."""

from __future__ import annotations

from itertools import permutations

import numpy as np

from gslab.graphs import ColoredGraph, connected_components, permute
from gslab.metrics import star_mismatch_count


def random_colored_graph(rng: np.random.RandomState, n: int, x: int = 2,
                         s: int = 2, edge_tries: int | None = None) -> ColoredGraph:
    edges = []
    seen = set()
    tries = edge_tries if edge_tries is not None else int(rng.randint(0, n + 4))
    for _ in range(tries):
        u, v = int(rng.randint(0, n)), int(rng.randint(0, n))
        if u == v:
            continue
        key = (min(u, v), max(u, v))
        if key in seen:
            continue
        seen.add(key)
        edges.append((key[0], key[1], int(rng.randint(0, s)), int(rng.randint(0, s))))
    degs = [0] * n
    for u, v, _, _ in edges:
        degs[u] += 1
        degs[v] += 1
    g = ColoredGraph(n=n, d=max(degs, default=0) or 1,
                     vertex_colors=tuple(int(c) for c in rng.randint(0, x, size=n)),
                     edges=tuple(edges), x_alphabet=x, s_alphabet=s)
    return g


def random_connected_graph(rng: np.random.RandomState, n: int, x: int = 2,
                           s: int = 2) -> ColoredGraph:
    while True:
        g = random_colored_graph(rng, n, x=x, s=s, edge_tries=int(rng.randint(n, 2 * n + 2)))
        if len(connected_components(g)) == 1:
            return g


def brute_force_min_mismatch(g: ColoredGraph, h: ColoredGraph) -> int:
    """Reference evaluation of the relabeled star distance by full enumeration."""
    return min(star_mismatch_count(g, permute(h, sigma))
               for sigma in permutations(range(g.n)))
