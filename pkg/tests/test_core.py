from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import all_pairs, diamond, laakso1221, theta, unit_cycle
from slashpow.constructions import build_path, uniform_laakso
from slashpow.core import (
    StGraph,
    brute_force_distance,
    concat_paths,
    enumerate_cycles,
    enumerate_st_paths,
    geodesic_metric,
    is_normalized_geodesic_st,
    normalize,
    path_length,
    st_path_length_range,
    validate_st_graph,
)
from slashpow.errors import CapExceeded, InputError, InvalidPath, NotGeodesicStGraph

fractions = st.builds(F, st.integers(1, 12), st.integers(1, 12))


def test_stgraph_rejects_loops_and_parallels():
    with pytest.raises(InputError):
        StGraph(names=("a", "b"), edges=((0, 0),), weights=(F(1),), s=0, t=1)
    with pytest.raises(InputError):
        StGraph(names=("a", "b"), edges=((0, 1), (1, 0)),
                weights=(F(1), F(1)), s=0, t=1)
    with pytest.raises(InputError):
        StGraph(names=("a", "a"), edges=((0, 1),), weights=(F(1),), s=0, t=1)


def test_validate_single_edge():
    g = StGraph(names=("s", "t"), edges=((0, 1),), weights=(F(1),), s=0, t=1)
    assert validate_st_graph(g).ok


def test_validate_diamond():
    assert validate_st_graph(diamond().graph).ok


def test_validate_flags_backward_edge():
    # Triangle s->a, s->b, a->b with t=b, plus an edge oriented back into s:
    # the backward edge lies on no directed s-t path and must be the only
    # failure the report names.
    g = StGraph(names=("s", "a", "b", "c"),
                edges=((0, 1), (0, 2), (1, 2), (3, 0)),
                weights=(F(1), F(1), F(1), F(1)), s=0, t=2)
    report = validate_st_graph(g)
    assert not report.ok
    assert report.failing_edges == (3,)
    assert report.connected


def test_validate_exhaustive_fallback():
    # s->a->b->t plus b->s: a directed cycle s,a,b,s. Every edge except b->s
    # lies on the simple path; b->s can never, since s starts every path.
    g = StGraph(names=("s", "a", "b", "t"),
                edges=((0, 1), (1, 2), (2, 3), (2, 0)),
                weights=(F(1),) * 4, s=0, t=3)
    report = validate_st_graph(g)
    assert report.failing_edges == (3,)


def test_geodesic_metric_examples():
    p = build_path([F(1, 3)] * 3).graph
    assert geodesic_metric(p).d(p.s, p.t) == 1

    d = diamond().graph
    m = geodesic_metric(d)
    assert m.d(1, 2) == 1  # the two branch midpoints route via s or t

    c = unit_cycle(4)
    mc = geodesic_metric(c)
    assert mc.d(0, 2) == 2
    assert mc.d(1, 3) == 2


def test_metric_matches_brute_force_small():
    for mg in (diamond(), laakso1221(), theta()):
        g = mg.graph
        m = geodesic_metric(g)
        for u, v in all_pairs(g.vertex_count):
            assert m.d(u, v) == brute_force_distance(g, u, v)
    c = unit_cycle(6)
    m = geodesic_metric(c)
    for u, v in all_pairs(6):
        assert m.d(u, v) == brute_force_distance(c, u, v)


def test_metric_axioms_all_fixtures():
    import slashpow

    graphs = [diamond().graph, laakso1221().graph, theta().graph,
              slashpow.slash_power(diamond(), 3).graph.graph]
    for g in graphs:
        m = geodesic_metric(g)
        n = g.vertex_count
        for u in range(n):
            assert m.d(u, u) == 0
        for u, v in all_pairs(n):
            assert m.d(u, v) == m.d(v, u) > 0
        for u in range(n):
            for v in range(n):
                for w in range(n):
                    assert m.d(u, w) <= m.d(u, v) + m.d(v, w)


def test_is_normalized():
    assert is_normalized_geodesic_st(diamond().graph)
    assert is_normalized_geodesic_st(laakso1221().graph)
    uneven = StGraph(names=("s", "a", "b", "t"),
                     edges=((0, 1), (1, 3), (0, 2), (2, 3)),
                     weights=(F(1, 2), F(1, 2), F(1, 3), F(1, 3)), s=0, t=3)
    assert not is_normalized_geodesic_st(uneven)


def test_normalize():
    two = StGraph(names=("a", "b", "c"), edges=((0, 1), (1, 2)),
                  weights=(F(1), F(1)), s=0, t=2)
    assert normalize(two).weights == (F(1, 2), F(1, 2))

    d = diamond().graph.with_weights((F(1),) * 4)
    assert set(normalize(d).weights) == {F(1, 2)}

    bad = StGraph(names=("s", "a", "t"), edges=((0, 1), (1, 2), (0, 2)),
                  weights=(F(1), F(1), F(1)), s=0, t=2)
    with pytest.raises(NotGeodesicStGraph):
        normalize(bad)


def test_normalize_idempotent():
    for g in (diamond().graph.with_weights((F(3, 7),) * 4),
              unit_cycle(4), laakso1221().graph):
        once = normalize(g)
        assert normalize(once).weights == once.weights


def test_st_path_partial_sums():
    # Along any s-t path of a geodesic s-t graph, distances telescope.
    for mg in (diamond(), laakso1221(), theta(), uniform_laakso((2, 3, 3, 1))):
        g = mg.graph
        m = geodesic_metric(g)
        for p in enumerate_st_paths(g):
            acc = [F(0)]
            for a, b in zip(p, p[1:]):
                acc.append(acc[-1] + g.weight_between(a, b))
            for i in range(len(p)):
                for j in range(i + 1, len(p)):
                    assert m.d(p[i], p[j]) == acc[j] - acc[i]


def test_path_length():
    c = unit_cycle(4)
    assert path_length(c, (0, 1, 2)) == 2
    d = diamond().graph
    assert path_length(d, (0, 1, 3)) == 1
    assert path_length(d, (0,)) == 0
    with pytest.raises(InvalidPath):
        path_length(d, (0, 3))
    with pytest.raises(InvalidPath):
        path_length(d, (0, 1, 0))


def test_concat_paths():
    assert concat_paths((0, 1), (1, 2)) == (0, 1, 2)
    with pytest.raises(InvalidPath):
        concat_paths((0, 1), (2, 3))
    with pytest.raises(InvalidPath):
        concat_paths((0, 1), (1, 0))


def test_enumerate_st_paths():
    assert len(enumerate_st_paths(diamond().graph)) == 2
    assert len(enumerate_st_paths(laakso1221().graph)) == 2
    assert enumerate_st_paths(build_path([F(1)] * 3).graph) == ((0, 1, 2, 3),)
    paths = enumerate_st_paths(diamond().graph)
    assert paths == tuple(sorted(paths))


def test_enumerate_st_paths_cap_names_count():
    g = diamond().graph
    with pytest.raises(CapExceeded) as err:
        enumerate_st_paths(g, cap=1)
    assert "2" in str(err.value)


def test_st_path_length_range():
    assert st_path_length_range(diamond().graph) == (F(1), F(1))
    uneven = StGraph(names=("s", "a", "b", "t"),
                     edges=((0, 1), (1, 3), (0, 2), (2, 3)),
                     weights=(F(1, 2), F(1, 2), F(1, 3), F(1, 3)), s=0, t=3)
    assert st_path_length_range(uneven) == (F(2, 3), F(1))


def test_enumerate_cycles():
    assert enumerate_cycles(build_path([F(1)] * 2).graph) == ()
    assert len(enumerate_cycles(diamond().graph)) == 1
    assert len(enumerate_cycles(theta().graph)) == 1
    # Three parallel 2-edge branches pair up into three cycles.
    from helpers import three_branch
    assert len(enumerate_cycles(three_branch().graph)) == 3


@given(st.lists(fractions, min_size=1, max_size=6))
@settings(max_examples=60)
def test_normalize_path_property(weights):
    g = build_path(weights).graph
    norm = normalize(g)
    assert is_normalized_geodesic_st(norm)
    assert normalize(norm).weights == norm.weights
