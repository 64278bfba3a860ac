import numpy as np
import pytest

from gslab.census import census, distribution_gap
from gslab.decomposition import boundary, folner_profile
from gslab.generators import (cycle, default_chain_spec, folner_boxes,
                              glued_lattice_oracle, graph_oracle, grid2d,
                              grid3d, materialize, path, random_regular,
                              self_similar, self_similar_sequence,
                              spec_from_json, spec_to_json, GLUE_ORIGIN)
from gslab.graphs import validate
from gslab.operators import oracle_ball


def test_path_and_cycle_counts():
    assert path(1).n == 1 and path(1).edges == ()
    p = path(5)
    assert p.n == 5 and len(p.edges) == 4 and p.d == 2
    c = cycle(5)
    assert c.n == 5 and len(c.edges) == 5
    assert all(c.degree(v) == 2 for v in range(5))


def test_generators_reject_zero():
    for fn in (path, cycle, grid2d, grid3d):
        with pytest.raises(ValueError):
            fn(0)


def test_grid_counts():
    g = grid2d(3)
    assert g.n == 9 and len(g.edges) == 12
    h = grid3d(3)
    assert h.n == 27 and len(h.edges) == 3 * 9 * 2


def test_generators_validate_clean():
    for g in (path(7), cycle(7), grid2d(4), grid3d(3)):
        assert validate(g) == []


def test_glued_origin_degree():
    oracle = glued_lattice_oracle()
    assert len(oracle.neighbors(GLUE_ORIGIN)) == 10
    assert len(oracle.neighbors(("2d", (1, 0)))) == 4
    assert len(oracle.neighbors(("3d", (0, 0, 1)))) == 6


def test_glued_origin_ball_has_11_vertices():
    oracle = glued_lattice_oracle()
    assert oracle_ball(oracle, GLUE_ORIGIN, 1).graph.n == 11


def test_glued_neighbor_symmetry():
    oracle = glued_lattice_oracle()
    probes = [GLUE_ORIGIN, ("2d", (1, 0)), ("2d", (0, 1)), ("3d", (1, 0, 0)),
              ("3d", (2, 1, 0))]
    for v in probes:
        for u in oracle.neighbors(v):
            assert v in oracle.neighbors(u)


def test_folner_boxes_boundary_ratio_decreases():
    oracle = glued_lattice_oracle()
    subs = folner_boxes(oracle, "2d", [10, 20])
    prof = folner_profile(oracle, (s.ids for s in subs))
    assert prof.decreasing


def test_folner_box_3d_size():
    oracle = glued_lattice_oracle()
    sub = folner_boxes(oracle, "3d", [10])[0]
    assert sub.graph.n == 1000
    assert validate(sub.graph) == []


def test_two_sides_have_different_local_statistics():
    oracle = glued_lattice_oracle()
    b2 = folner_boxes(oracle, "2d", [12])[0]
    b3 = folner_boxes(oracle, "3d", [6])[0]
    gap = distribution_gap(census(b2.graph, 1), census(b3.graph, 1))
    assert gap > 0.3  # degree-4 interiors vs degree-6 interiors


def test_materialize_orders_ids():
    oracle = glued_lattice_oracle()
    sub = materialize(oracle, [("2d", (0, 1)), GLUE_ORIGIN, ("2d", (1, 0))])
    assert sub.ids == (("2d", (0, 1)), ("2d", (1, 0)), GLUE_ORIGIN)
    assert sub.graph.degree(sub.index[GLUE_ORIGIN]) == 2


def test_self_similar_first_level_is_base():
    spec = default_chain_spec()
    g, conn = self_similar(spec, 1)
    assert g == spec.base and conn == spec.connectors


def test_self_similar_chain_sizes_and_ratio():
    spec = default_chain_spec()
    levels = self_similar_sequence(spec, 7)
    for i, (g, conn) in enumerate(levels):
        assert g.n == 4 * 3 ** i
        assert len(conn) == 2
        assert validate(g) == []
    ratios = [len(c) / g.n for g, c in levels]
    assert all(b < a for a, b in zip(ratios, ratios[1:]))


def test_self_similar_chain_is_path():
    spec = default_chain_spec()
    g, conn = self_similar(spec, 4)
    degs = sorted(g.degree(v) for v in range(g.n))
    assert degs[0] == degs[1] == 1 and all(d == 2 for d in degs[2:])
    assert all(g.degree(v) == 1 for v in conn)


def test_self_similar_connectors_avoid_previous_level():
    spec = default_chain_spec()
    levels = self_similar_sequence(spec, 6)
    for (g_prev, _), (_, conn) in zip(levels, levels[1:]):
        assert not (set(conn) & set(range(g_prev.n)))


def test_self_similar_boundary_inside_connectors():
    spec = default_chain_spec()
    levels = self_similar_sequence(spec, 6)
    for (g_prev, conn_prev), (g_next, _) in zip(levels, levels[1:]):
        bnd = boundary(graph_oracle(g_next), set(range(g_prev.n)))
        assert bnd <= set(conn_prev)


def test_self_similar_rejects_degree_violation():
    from gslab.generators import LevelRule, SelfSimilarSpec
    spec = SelfSimilarSpec(
        base=path(2), connectors=(0, 1), copies=2, d=1,
        rules=(LevelRule(edges=(((1, 0), (2, 0)),), next_connectors=((2, 1),)),))
    with pytest.raises(ValueError, match="degree bound"):
        self_similar(spec, 2)


def test_self_similar_rejects_first_copy_connectors():
    from gslab.generators import LevelRule, SelfSimilarSpec
    spec = SelfSimilarSpec(
        base=path(4), connectors=(0, 3), copies=2, d=3,
        rules=(LevelRule(edges=(((1, 1), (2, 0)),), next_connectors=((1, 0),)),))
    with pytest.raises(ValueError, match="first copy"):
        self_similar(spec, 2)


def test_self_similar_spec_json_roundtrip():
    spec = default_chain_spec()
    again = spec_from_json(spec_to_json(spec))
    assert again == spec
    g1, _ = self_similar(spec, 4)
    g2, _ = self_similar(again, 4)
    assert g1 == g2


def test_random_regular_is_regular_connected_deterministic():
    g = random_regular(40, 3, seed=5)
    assert all(g.degree(v) == 3 for v in range(40))
    from gslab.graphs import connected_components
    assert len(connected_components(g)) == 1
    assert g == random_regular(40, 3, seed=5)
    assert g != random_regular(40, 3, seed=6)


def test_random_regular_rejects_odd_product():
    with pytest.raises(ValueError):
        random_regular(5, 3, seed=0)
