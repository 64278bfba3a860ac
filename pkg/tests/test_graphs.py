import numpy as np
import pytest

from gslab.graphs import (ColoredGraph, ball, ball_size_bound, canonical_code,
                          disjoint_union, graph_from_json, graph_to_json,
                          pattern_from_code, pattern_orbits, permute,
                          rooted_isomorphic, star, validate)
from gslab.generators import cycle, grid2d, path

from conftest import random_colored_graph, random_connected_graph


def test_validate_clean_single_vertex():
    g = ColoredGraph(n=1, d=3, vertex_colors=(0,), edges=())
    assert validate(g) == []


def test_validate_reports_loop():
    g = ColoredGraph(n=2, d=3, vertex_colors=(0, 0), edges=((0, 0, 0, 0),))
    assert any("loop at 0" in v for v in validate(g))


def test_validate_reports_degree_overflow():
    # star K_{1,4} with declared bound 3
    edges = tuple((0, i, 0, 0) for i in range(1, 5))
    g = ColoredGraph(n=5, d=3, vertex_colors=(0,) * 5, edges=edges)
    assert any("degree 4 exceeds bound 3 at vertex 0" in v for v in validate(g))


def test_validate_reports_color_range():
    g = ColoredGraph(n=2, d=2, vertex_colors=(0, 5), edges=((0, 1, 0, 3),),
                     x_alphabet=2, s_alphabet=2)
    msgs = validate(g)
    assert any("vertex color 5" in m for m in msgs)
    assert any("edge color 3" in m for m in msgs)


def test_ball_radius_zero_is_colored_root():
    g = ColoredGraph(n=3, d=2, vertex_colors=(0, 1, 0), edges=((0, 1, 0, 0), (1, 2, 0, 0)),
                     x_alphabet=2)
    p = ball(g, 1, 0)
    assert p.graph.n == 1
    assert p.graph.vertex_colors == (1,)
    assert p.radius == 0


def test_ball_of_path_center_covers_path():
    g = path(3)
    p = ball(g, 1, 1)
    assert p.graph.n == 3
    assert len(p.graph.edges) == 2


def test_ball_in_grid_has_13_vertices():
    # BFS oracle in the square lattice: |B_2| = 1 + 4 + 8
    g = grid2d(10)
    center = 5 * 10 + 5
    p = ball(g, center, 2)
    assert p.graph.n == 13


def test_ball_rejects_bad_vertex():
    with pytest.raises(ValueError):
        ball(path(3), 7, 1)


def test_ball_vertices_within_radius():
    rng = np.random.RandomState(0)
    for _ in range(25):
        g = random_connected_graph(rng, int(rng.randint(2, 9)))
        x = int(rng.randint(0, g.n))
        r = int(rng.randint(0, 3))
        p = ball(g, x, r)
        # recheck by BFS in the pattern itself
        from gslab.graphs import _bfs_layers
        dist = _bfs_layers(p.graph, 0, None)
        assert max(dist.values()) <= r


def test_star_isolated_vertex():
    g = ColoredGraph(n=1, d=2, vertex_colors=(0,), edges=())
    p = star(g, 0)
    assert p.graph.n == 1 and p.graph.edges == ()


def test_star_of_path_center():
    p = star(path(3), 1)
    assert p.graph.n == 3 and len(p.graph.edges) == 2


def test_star_excludes_non_root_edges():
    tri = cycle(3)
    assert star(tri, 0).code != ball(tri, 0, 1).code
    assert len(star(tri, 0).graph.edges) == 2
    assert star(tri, 0).code == ball(path(3), 1, 1).code


def test_code_invariant_under_relabeling():
    rng = np.random.RandomState(1)
    g = random_connected_graph(rng, 7)
    base = ball(g, 0, 7)
    for k in range(100):
        sigma = tuple(int(v) for v in np.random.RandomState(k).permutation(g.n))
        relabeled = permute(g, sigma)
        assert ball(relabeled, sigma[0], 7).code == base.code


def test_code_distinguishes_root_position():
    g = path(3)
    assert ball(g, 0, 2).code != ball(g, 1, 2).code


def test_rooted_p3_two_colorings_give_six_codes():
    # brute-force orbit count: the only nontrivial rooted automorphism of
    # the center-rooted path swaps the two ends
    codes = set()
    for c0 in (0, 1):
        for c1 in (0, 1):
            for c2 in (0, 1):
                g = ColoredGraph(n=3, d=2, vertex_colors=(c0, c1, c2),
                                 edges=((0, 1, 0, 0), (1, 2, 0, 0)), x_alphabet=2)
                codes.add(ball(g, 1, 1).code)
    assert len(codes) == 6


def test_directed_edge_colors_respected():
    a = ColoredGraph(n=2, d=1, vertex_colors=(0, 0), edges=((0, 1, 0, 1),), s_alphabet=2)
    b = ColoredGraph(n=2, d=1, vertex_colors=(0, 0), edges=((0, 1, 1, 0),), s_alphabet=2)
    assert ball(a, 0, 1).code != ball(b, 0, 1).code
    # but rooting b at the far end flips the orientation back
    assert ball(a, 0, 1).code == ball(b, 1, 1).code


def test_rooted_isomorphic_trivial_cases():
    p = ball(path(5), 2, 2)
    assert rooted_isomorphic(p, p)
    q = ball(path(4), 1, 2)
    assert p.graph.n != q.graph.n and not rooted_isomorphic(p, q)


def test_grid_ball_differs_from_triangular_ball():
    # degree sequences differ, confirmed by code inequality
    g = grid2d(7)
    tri_edges = []
    n = 5
    for r in range(n):
        for c in range(n):
            v = r * n + c
            if c + 1 < n:
                tri_edges.append((v, v + 1, 0, 0))
            if r + 1 < n:
                tri_edges.append((v, v + n, 0, 0))
                if c + 1 < n:
                    tri_edges.append((v, v + n + 1, 0, 0))
    tri = ColoredGraph(n=n * n, d=6, vertex_colors=(0,) * (n * n), edges=tuple(tri_edges))
    assert ball(g, 3 * 7 + 3, 2).code != ball(tri, 2 * 5 + 2, 2).code


def test_equivalence_relation_spot_checks():
    rng = np.random.RandomState(5)
    pats = []
    for _ in range(12):
        g = random_connected_graph(rng, int(rng.randint(2, 7)))
        pats.append(ball(g, 0, 6))
    for a in pats:
        assert rooted_isomorphic(a, a)
        for b in pats:
            assert rooted_isomorphic(a, b) == rooted_isomorphic(b, a)
            for c in pats:
                if rooted_isomorphic(a, b) and rooted_isomorphic(b, c):
                    assert rooted_isomorphic(a, c)


def test_star_equals_ball_with_nonroot_edges_removed():
    rng = np.random.RandomState(9)
    for _ in range(20):
        g = random_colored_graph(rng, int(rng.randint(2, 8)))
        y = int(rng.randint(0, g.n))
        st = star(g, y)
        bl = ball(g, y, 1)
        kept = tuple(e for e in bl.graph.edges if 0 in (e[0], e[1]))
        stripped = ColoredGraph(n=bl.graph.n, d=bl.graph.d,
                                vertex_colors=bl.graph.vertex_colors, edges=kept,
                                x_alphabet=bl.graph.x_alphabet,
                                s_alphabet=bl.graph.s_alphabet)
        from gslab.graphs import RootedPattern
        assert RootedPattern(graph=stripped, root=0, radius=bl.radius).code == st.code


def test_pattern_decode_roundtrip():
    rng = np.random.RandomState(11)
    for _ in range(20):
        g = random_connected_graph(rng, int(rng.randint(1, 8)))
        p = ball(g, 0, 7)
        q = pattern_from_code(p.code)
        assert q.code == p.code


def test_pattern_orbits_center_rooted_path():
    p = ball(path(3), 1, 1)
    assert pattern_orbits(p) == [(0,), (1, 2)]


def test_pattern_orbits_marked_colors_break_symmetry():
    g = ColoredGraph(n=3, d=2, vertex_colors=(0, 0, 1),
                     edges=((0, 1, 0, 0), (1, 2, 0, 0)), x_alphabet=2)
    p = ball(g, 1, 1)
    assert all(len(o) == 1 for o in pattern_orbits(p))


def test_ball_size_bound_values():
    assert ball_size_bound(2, 2) == 5
    assert ball_size_bound(3, 1) == 4
    assert ball_size_bound(3, 2) == 10
    assert ball_size_bound(4, 1) == 5
    assert ball_size_bound(2, 0) == 1
    assert ball_size_bound(1, 3) == 2


def test_disjoint_union_and_permute_roundtrip():
    g = disjoint_union([path(2), cycle(3)])
    assert g.n == 5 and len(g.edges) == 4
    sigma = (4, 3, 2, 1, 0)
    h = permute(g, sigma)
    assert sorted(h.degree(v) for v in range(5)) == sorted(g.degree(v) for v in range(5))


def test_graph_json_roundtrip():
    rng = np.random.RandomState(13)
    g = random_colored_graph(rng, 6)
    assert graph_from_json(graph_to_json(g)) == g
