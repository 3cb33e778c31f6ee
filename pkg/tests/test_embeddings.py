import random
from fractions import Fraction as F

import pytest

import slashpow as sp
from helpers import diamond, laakso1221, unit_cycle
from slashpow.core import geodesic_metric
from slashpow.embeddings import (
    GeodesicTree,
    StochasticTreeEmbedding,
    TreeMap,
    check_expansive,
    cycle_embedding_witness,
    distortion_report,
    expected_distortion,
    frt_embed,
    frt_tree,
    identity_tree_map,
    lower_bound_c_nu,
    oracle_min_expected_distortion,
    path_tree,
    stochastic_distortion_of,
    truncated_distortion_bound,
    truncated_expected_stretch,
)
from slashpow.errors import EdgeSizeViolation, InputError, NotExpansive
from slashpow.laakso import enumerate_max_cycles
from slashpow.slash import slash_power


def diamond_path_tree():
    """Path x0 - y1_1 - z0 - y2_1 with weights 1/2 each, identity names."""
    tree = path_tree(("x0", "y1_1", "z0", "y2_1"), (F(1, 2), F(1, 2), F(1, 2)))
    # diamond vertex ids: x0=0, y1_1=1, y2_1=2, z0=3
    return tree, TreeMap(vertex_map=(0, 1, 3, 2))


def test_expected_distortion_identity_path():
    mg = sp.build_path([F(1, 3)] * 3)
    tree = path_tree(mg.graph.names, mg.graph.weights)
    assert expected_distortion(mg, tree, identity_tree_map(4)) == 1


def test_expected_distortion_diamond_path_tree():
    tree, tmap = diamond_path_tree()
    assert expected_distortion(diamond(), tree, tmap) == F(3, 2)
    ok, _ = check_expansive(geodesic_metric(diamond().graph), tree, tmap)
    assert ok


def test_expected_distortion_at_least_one_for_expansive():
    mg = diamond()
    metric = geodesic_metric(mg.graph)
    for seed in range(10):
        tree, tmap = frt_tree(metric, random.Random(seed))
        assert expected_distortion(mg, tree, tmap) >= 1


def test_check_expansive_collapse():
    # Collapsing everything onto one tree vertex contracts the first pair.
    mg = diamond()
    tree = path_tree(("a", "b"), (F(1),))
    tmap = TreeMap(vertex_map=(0, 0, 0, 0))
    ok, witness = check_expansive(geodesic_metric(mg.graph), tree, tmap)
    assert not ok
    assert witness == (0, 1)


def test_stochastic_distortion_identity():
    mg = sp.build_path([F(1, 2)] * 2)
    tree = path_tree(mg.graph.names, mg.graph.weights)
    emb = StochasticTreeEmbedding(((tree, identity_tree_map(3), F(1)),))
    assert stochastic_distortion_of(mg.graph, emb) == 1


def test_stochastic_distortion_two_tree_mixture():
    # Two expansive trees on the diamond, each a path stretching a different
    # edge; the per-pair averages are checked against a hand evaluation.
    t1, m1 = diamond_path_tree()                       # stretches {x0, y2_1}
    t2 = path_tree(("x0", "y2_1", "z0", "y1_1"), (F(1, 2),) * 3)
    m2 = TreeMap(vertex_map=(0, 3, 1, 2))              # stretches {x0, y1_1}
    g = diamond().graph
    emb = StochasticTreeEmbedding(((t1, m1, F(1, 2)), (t2, m2, F(1, 2))))

    metric = geodesic_metric(g)
    # Hand evaluation: pairs (u, v) with mean tree distance.
    # d_T1 over (0,1),(0,2),(0,3),(1,2),(1,3),(2,3):
    #   1/2, 3/2, 1, 1, 1/2, 1/2
    # d_T2 swaps the roles of y1_1 and y2_1: 3/2, 1/2, 1, 1, 1/2, 1/2
    means = {(0, 1): F(1), (0, 2): F(1), (0, 3): F(1),
             (1, 2): F(1), (1, 3): F(1, 2), (2, 3): F(1, 2)}
    worst = max(means[p] / metric.d(*p) for p in means)
    assert stochastic_distortion_of(g, emb) == worst == F(2)


def test_stochastic_distortion_rejects_contraction():
    g = diamond().graph
    tree = path_tree(("a", "b"), (F(1),))
    emb = StochasticTreeEmbedding(((tree, TreeMap((0, 0, 0, 1)), F(1)),))
    with pytest.raises(NotExpansive):
        stochastic_distortion_of(g, emb)


def test_cycle_witness_unit_cycles():
    c4 = unit_cycle(4)
    tree = path_tree(c4.names, (F(1),) * 3)
    ei, (u, v) = cycle_embedding_witness(c4, tree, identity_tree_map(4))
    metric = geodesic_metric(c4)
    c0 = sum((metric.edge_distance(i) for i in range(4)), F(0))
    assert tree.distance(u, v) >= (c0 - metric.d(u, v)) / 8


def test_cycle_witness_weighted_two_arc():
    g = sp.cycle_st_graph([1, 1], [1, 1])
    # Star with center s: legs to the other three vertices.
    tree = GeodesicTree(names=("x0", "x1", "x2", "x3"),
                        edges=((0, 1), (0, 2), (0, 3)),
                        weights=(F(1), F(2), F(1)))
    tmap = identity_tree_map(4)
    ok, _ = check_expansive(geodesic_metric(g), tree, tmap)
    assert ok
    ei, (u, v) = cycle_embedding_witness(g, tree, tmap)
    metric = geodesic_metric(g)
    c0 = sum((metric.edge_distance(i) for i in range(4)), F(0))
    assert tree.distance(u, v) >= (c0 - metric.d(u, v)) / 8


def test_cycle_witness_requires_expansive():
    c4 = unit_cycle(4)
    tree = path_tree(c4.names, (F(1, 8),) * 3)
    with pytest.raises(NotExpansive):
        cycle_embedding_witness(c4, tree, identity_tree_map(4))


def test_tree_type_rejects_graphs_with_cycles():
    # The diamond's four edges are one too many for a tree on 4 vertices.
    with pytest.raises(InputError):
        GeodesicTree(names=("a", "b", "c", "d"),
                     edges=((0, 1), (1, 3), (0, 2), (2, 3)),
                     weights=(F(1, 2),) * 4)


def test_truncated_stretch_diamond_oracle_tree():
    mg = diamond()
    power = slash_power(mg, 1)
    res = oracle_min_expected_distortion(mg)
    value = truncated_expected_stretch(power, res.tree, res.tree_map)
    # Every edge ratio is at least 1 and the truncation cap is
    # (3/32) * 2 / (1/2) = 3/8, so the expectation is exactly 3/8.
    assert value == F(3, 8)
    out = truncated_distortion_bound(power, res.tree, res.tree_map)
    assert out.holds and out.bound == F(3, 64)


def test_truncated_stretch_oracle_tree_second_base():
    mg = laakso1221()
    power = slash_power(mg, 1)
    res = oracle_min_expected_distortion(mg)
    out = truncated_distortion_bound(power, res.tree, res.tree_map)
    assert out.holds


def test_truncated_stretch_edge_size_violation():
    skew = sp.build_laakso((0, 2, 2, 0), branch1=[F(3, 4), F(1, 4)],
                           branch2=[F(3, 4), F(1, 4)])
    power = slash_power(skew, 1)
    res_tree = path_tree(("a", "b"), (F(1),))
    with pytest.raises(EdgeSizeViolation):
        truncated_expected_stretch(power, res_tree, TreeMap((0,) * 4))


def test_truncated_bound_seeded_trees_both_bases():
    for mg in (diamond(), laakso1221()):
        for n in (1, 2):
            power = slash_power(mg, n)
            metric = power.metric
            cycles = enumerate_max_cycles(power)
            for seed in range(8):
                tree, tmap = frt_tree(metric, random.Random(seed))
                out = truncated_distortion_bound(power, tree, tmap, cycles=cycles)
                assert out.holds
                assert len(out.cycle_witnesses) == len(cycles)


def test_lower_bound_report():
    rep = lower_bound_c_nu(diamond())
    assert rep.steiner_free == F(3, 2)
    assert rep.general == F(3, 16)
    path = sp.build_path([F(1, 2)] * 2)
    assert lower_bound_c_nu(path).steiner_free == 1


def test_distortion_report_rows():
    mg = diamond()
    emb = frt_embed(geodesic_metric(mg.graph), seed=3, samples=4)
    rep = distortion_report(mg, emb)
    assert len(rep.rows) == 6
    assert rep.worst_stretch >= 1
    assert all(stretch >= 1 for *_, stretch in rep.rows)
