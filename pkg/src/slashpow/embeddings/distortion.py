"""Expected distortion, expansiveness checks, stochastic distortion, and the
exact lower-bound certificates for tree embeddings of cycles and of powers
of balanced Laakso graphs."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from ..constructions import MeasuredGraph
from ..core import GeodesicMetric, StGraph, cycle_edge_indices, geodesic_metric
from ..errors import EdgeSizeViolation, InputError, NotExpansive
from ..laakso import LaaksoBase, enumerate_max_cycles
from ..slash import SlashPower
from .oracle import ORACLE_VERTEX_CAP, OracleResult, oracle_min_expected_distortion
from .trees import GeodesicTree, StochasticTreeEmbedding, TreeMap

ZERO = Fraction(0)

# Constants of the truncated-stretch argument: any expansive tree embedding
# of the n-th power loses at least LOWER_COEFF * c0 * n in expectation, and
# every maximal cycle has an edge stretched to at least WITNESS_COEFF * c0.
TRUNCATION_COEFF = Fraction(3, 32)
WITNESS_COEFF = Fraction(3, 32)
LOWER_COEFF = Fraction(3, 128)


def expected_distortion(mg: MeasuredGraph, tree: GeodesicTree,
                        tmap: TreeMap) -> Fraction:
    """Measure-weighted average over edges of d_T(f(e)) / d_G(e), exact."""
    g = mg.graph
    if len(tmap.vertex_map) != g.vertex_count:
        raise InputError("map must cover every vertex")
    metric = geodesic_metric(g)
    total = ZERO
    for ei, (u, v) in enumerate(g.edges):
        stretch = tree.distance(tmap(u), tmap(v)) / metric.d(u, v)
        total += mg.nu[ei] * stretch
    return total


def check_expansive(metric: GeodesicMetric, tree: GeodesicTree,
                    tmap: TreeMap) -> tuple[bool, Optional[tuple[int, int]]]:
    """Exhaustive over vertex pairs; returns the first contracted pair."""
    n = metric.source.vertex_count
    for u in range(n):
        for v in range(u + 1, n):
            if tree.distance(tmap(u), tmap(v)) < metric.d(u, v):
                return False, (u, v)
    return True, None


def stochastic_distortion_of(g: StGraph, emb: StochasticTreeEmbedding) -> Fraction:
    """Worst pair's expected image distance over its own distance.

    Every component must be expansive; a contracted pair raises NotExpansive.
    """
    metric = geodesic_metric(g)
    for idx, (tree, tmap, _) in enumerate(emb):
        ok, witness = check_expansive(metric, tree, tmap)
        if not ok:
            raise NotExpansive(f"component {idx} contracts pair {witness}")
    worst = ZERO
    n = g.vertex_count
    for u in range(n):
        for v in range(u + 1, n):
            mean = sum((p * tree.distance(tmap(u), tmap(v))
                        for tree, tmap, p in emb), ZERO)
            worst = max(worst, mean / metric.d(u, v))
    return worst


@dataclass(frozen=True)
class DistortionReport:
    """Per-pair expected stretch of an embedding, with the worst witnesses."""

    expected_distortion: tuple[Fraction, ...]  # per component
    worst_pair: tuple[int, int]
    worst_stretch: Fraction
    rows: tuple[tuple[int, int, Fraction, Fraction, Fraction], ...]
    # rows: (u, v, d_X, mean d_T, stretch)


def distortion_report(mg: MeasuredGraph, emb: StochasticTreeEmbedding) -> DistortionReport:
    g = mg.graph
    metric = geodesic_metric(g)
    per_component = tuple(expected_distortion(mg, tree, tmap)
                          for tree, tmap, _ in emb)
    rows: list[tuple[int, int, Fraction, Fraction, Fraction]] = []
    worst = (ZERO, (0, 0))
    for u in range(g.vertex_count):
        for v in range(u + 1, g.vertex_count):
            mean = sum((p * tree.distance(tmap(u), tmap(v))
                        for tree, tmap, p in emb), ZERO)
            stretch = mean / metric.d(u, v)
            rows.append((u, v, metric.d(u, v), mean, stretch))
            if stretch > worst[0]:
                worst = (stretch, (u, v))
    return DistortionReport(expected_distortion=per_component,
                            worst_pair=worst[1], worst_stretch=worst[0],
                            rows=tuple(rows))


def cycle_embedding_witness(cycle_graph: StGraph, tree: GeodesicTree,
                            tmap: TreeMap) -> tuple[int, tuple[int, int]]:
    """Edge of a geodesic cycle stretched to at least (c0 - d(e)) / 8.

    Every expansive tree map admits one; failing to find one would disprove
    that, so the search raises instead of returning quietly.
    """
    g = cycle_graph
    metric = geodesic_metric(g)
    ok, witness = check_expansive(metric, tree, tmap)
    if not ok:
        raise NotExpansive(f"map contracts pair {witness}")
    c0 = sum((metric.edge_distance(ei) for ei in range(g.edge_count)), ZERO)
    for ei, (u, v) in enumerate(g.edges):
        if 8 * tree.distance(tmap(u), tmap(v)) >= c0 - metric.d(u, v):
            return ei, (u, v)
    raise AssertionError("no witness edge: the cycle lower bound failed")


def _check_edge_size_condition(base: LaaksoBase) -> None:
    quarter = base.c0 / 4
    if quarter > Fraction(1, 2):
        raise EdgeSizeViolation(f"cycle length {base.c0} exceeds 2")
    g = base.graph
    for ei in base.cycle_edge_ids:
        if g.weights[ei] > quarter:
            raise EdgeSizeViolation(
                f"branch edge {ei} weighs {g.weights[ei]} > {quarter}")


def truncated_expected_stretch(power: SlashPower, tree: GeodesicTree,
                               tmap: TreeMap) -> Fraction:
    """Expectation of min(d_T(f(e))/d(e), (3/32) c0 / d(e)) over the power's
    edge measure.

    Requires the base's branch edges to weigh at most c0/4 <= 1/2 and the
    map to be expansive.
    """
    base = LaaksoBase.from_measured(power.base)
    _check_edge_size_condition(base)
    mg = power.graph
    g = mg.graph
    ok, witness = check_expansive(power.metric, tree, tmap)
    if not ok:
        raise NotExpansive(f"map contracts pair {witness}")
    cap_num = TRUNCATION_COEFF * base.c0
    total = ZERO
    for ei, (u, v) in enumerate(g.edges):
        w = g.weights[ei]
        total += mg.nu[ei] * min(tree.distance(tmap(u), tmap(v)) / w, cap_num / w)
    return total


@dataclass(frozen=True)
class TruncatedBoundResult:
    value: Fraction
    bound: Fraction
    holds: bool
    cycle_witnesses: tuple[int, ...]  # one edge index per maximal cycle


def truncated_distortion_bound(power: SlashPower, tree: GeodesicTree,
                               tmap: TreeMap,
                               cycles: Optional[Sequence] = None
                               ) -> TruncatedBoundResult:
    """Assert the (3/128) c0 n lower bound and, per maximal cycle, find an
    edge stretched to at least (c0 - d(e))/8 >= (3/32) c0."""
    base = LaaksoBase.from_measured(power.base)
    value = truncated_expected_stretch(power, tree, tmap)
    bound = LOWER_COEFF * base.c0 * power.n
    if cycles is None:
        cycles = enumerate_max_cycles(power)
    g = power.graph.graph
    witnesses: list[int] = []
    threshold = WITNESS_COEFF * base.c0
    for c in cycles:
        found = -1
        for ei in cycle_edge_indices(g, c):
            u, v = g.edges[ei]
            dt = tree.distance(tmap(u), tmap(v))
            if 8 * dt >= base.c0 - g.weights[ei] and dt >= threshold:
                found = ei
                break
        if found < 0:
            raise AssertionError("maximal cycle without a stretched edge")
        witnesses.append(found)
    return TruncatedBoundResult(value=value, bound=bound,
                                holds=value >= bound,
                                cycle_witnesses=tuple(witnesses))


@dataclass(frozen=True)
class LowerBoundReport:
    """Certified lower bound for stochastic tree distortion.

    `steiner_free` is exact over trees on the graph's own vertices;
    `general` divides by the factor-8 cost of removing Steiner points and is
    valid against arbitrary geodesic trees.
    """

    steiner_free: Fraction
    general: Fraction
    oracle: OracleResult


def lower_bound_c_nu(mg: MeasuredGraph,
                     vertex_cap: int = ORACLE_VERTEX_CAP) -> LowerBoundReport:
    result = oracle_min_expected_distortion(mg, vertex_cap=vertex_cap)
    return LowerBoundReport(steiner_free=result.value,
                            general=result.value / 8, oracle=result)
