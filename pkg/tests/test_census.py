import numpy as np
import pytest

from gslab.census import census, distribution_gap, weak_convergence_report
from gslab.generators import cycle, grid2d, path
from gslab.graphs import ColoredGraph

from conftest import random_colored_graph


def test_radius_zero_is_color_histogram():
    g = ColoredGraph(n=4, d=2, vertex_colors=(0, 1, 1, 1),
                     edges=((0, 1, 0, 0),), x_alphabet=2)
    c = census(g, 0)
    assert sorted(c.frequencies.values()) == [0.25, 0.75]


def test_cycle_is_single_class_at_radius_one():
    c = census(cycle(12), 1)
    assert len(c.counts) == 1
    assert list(c.frequencies.values()) == [1.0]


def test_path_two_classes():
    c = census(path(10), 1)
    assert sorted(c.frequencies.values()) == [0.2, 0.8]


def test_frequencies_sum_to_one():
    rng = np.random.RandomState(2)
    for _ in range(20):
        g = random_colored_graph(rng, int(rng.randint(1, 10)))
        for r in (0, 1, 2):
            c = census(g, r)
            assert abs(sum(c.frequencies.values()) - 1.0) < 1e-12
            assert all(v >= 1 for v in c.counts.values())
            assert sum(c.counts.values()) == c.total


def test_gap_identical_is_zero():
    c = census(path(10), 1)
    assert distribution_gap(c, c) == 0.0


def test_gap_path_vs_cycle():
    # end class has frequency 2/10 in the path and 0 in the cycle
    assert distribution_gap(census(path(10), 1), census(cycle(10), 1)) == pytest.approx(0.2)


def test_gap_disjoint_supports():
    a = ColoredGraph(n=2, d=1, vertex_colors=(0, 0), edges=(), x_alphabet=2)
    b = ColoredGraph(n=2, d=1, vertex_colors=(1, 1), edges=(), x_alphabet=2)
    ca, cb = census(a, 0), census(b, 0)
    assert distribution_gap(ca, cb) == max(max(ca.frequencies.values()),
                                           max(cb.frequencies.values()))


def test_gap_radius_mismatch_raises():
    with pytest.raises(ValueError):
        distribution_gap(census(path(5), 1), census(path(5), 2))


def test_gap_metric_axioms_on_random_triples():
    rng = np.random.RandomState(3)
    for _ in range(30):
        n = int(rng.randint(2, 9))
        dists = [census(random_colored_graph(rng, n), 1) for _ in range(3)]
        a, b, c = dists
        assert distribution_gap(a, a) == 0.0
        assert distribution_gap(a, b) == pytest.approx(distribution_gap(b, a))
        assert distribution_gap(a, c) <= distribution_gap(a, b) + distribution_gap(b, c) + 1e-12


def test_report_constant_sequence_is_zero():
    rows = weak_convergence_report([path(8), path(8), path(8)], 1)
    assert all(r.gap == 0.0 for r in rows)


def test_report_grid_boxes_gaps_decrease():
    # boundary fraction 4(n-1)/n^2 decreases
    rows = weak_convergence_report([grid2d(10), grid2d(20), grid2d(40)], 1)
    for r in (0, 1):
        gaps = [row.gap for row in rows if row.radius == r]
        assert all(b < a or (a == b == 0) for a, b in zip(gaps, gaps[1:]))


def test_report_mixed_path_cycle_oscillates():
    seq = [path(20), cycle(20), path(40), cycle(40)]
    rows = [r for r in weak_convergence_report(seq, 1) if r.radius == 1]
    # each consecutive pair differs in the end class, at scale 2/n
    assert rows[0].gap == pytest.approx(0.1)
    assert rows[1].gap == pytest.approx(0.05)
    assert rows[2].gap == pytest.approx(0.05)


def test_report_rejects_short_sequences():
    with pytest.raises(ValueError):
        weak_convergence_report([path(5)], 1)
