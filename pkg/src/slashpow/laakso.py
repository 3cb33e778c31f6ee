"""Maximal-cycle combinatorics in powers of balanced Laakso graphs, the
balanced-subgraph finder for unbalanced ones, and the end-to-end pipeline
that turns any normalized geodesic s-t graph with a cycle into a balanced
Laakso s-t subgraph of one of its slash powers with small edges and a
restricted edge measure."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Optional, Sequence

from .constructions import (
    LaaksoParams,
    LaaksoStructure,
    LaaksoSubgraph,
    MeasuredGraph,
    as_laakso,
    build_laakso_subgraph,
    laakso_from_cycle,
    laakso_measure,
)
from .core import (
    CycleSeq,
    PathSeq,
    StGraph,
    cycle_edge_indices,
    enumerate_cycles,
    enumerate_st_paths,
    geodesic_metric,
    is_normalized_geodesic_st,
    is_strictly_geodesic_st,
    path_cap,
    shortest_path_lex,
    single_source_distances,
)
from .errors import (
    CapExceeded,
    InputError,
    NoCycle,
    NotLaakso,
    NotNormalized,
    SelectorError,
)
from .slash import EdgeLabel, SlashPower, lift_cycle, lift_path, slash_power

ZERO = Fraction(0)


@dataclass(frozen=True)
class LaaksoBase:
    """A measured Laakso graph with its recognized segment structure."""

    measured: MeasuredGraph
    structure: LaaksoStructure

    @classmethod
    def from_measured(cls, mg: MeasuredGraph) -> "LaaksoBase":
        return cls(measured=mg, structure=as_laakso(mg.graph))

    @property
    def graph(self) -> StGraph:
        return self.measured.graph

    @cached_property
    def cycle_edge_ids(self) -> frozenset[int]:
        ids: set[int] = set()
        for seg in (self.structure.branch1, self.structure.branch2):
            for a, b in zip(seg, seg[1:]):
                ids.add(self.graph.edge_index(a, b))
        return frozenset(ids)

    @cached_property
    def c0(self) -> Fraction:
        """Metric length of the branch cycle."""
        total = ZERO
        for ei in self.cycle_edge_ids:
            total += self.graph.weights[ei]
        return total


def _require_balanced(p: LaaksoParams) -> tuple[int, int]:
    """Return (l, k+l+m): branch length and s-t route graph length."""
    if not p.balanced:
        raise InputError(f"parameters {p.as_tuple()} are not balanced")
    return p.l1, p.k + p.l1 + p.m


def max_cycle_edge_count(params: LaaksoParams, n: int) -> int:
    """Edge count of any maximal-length cycle in the n-th power: every lift
    multiplies the count by the graph length of an s-t route."""
    l, route = _require_balanced(params)
    if n < 1:
        raise InputError("power must be at least 1")
    return 2 * l * route ** (n - 1)


def count_max_cycles(params: LaaksoParams, n: int) -> int:
    """Number of maximal-length cycles in the n-th power (exact big integer)."""
    l, route = _require_balanced(params)
    if n < 1:
        raise InputError("power must be at least 1")
    geometric = (route ** (n - 1) - 1) // (route - 1)
    return 2 ** (2 * l * geometric)


def count_max_cycles_through_edge(base: LaaksoBase, label: EdgeLabel) -> int:
    """Number of maximal-length cycles containing the edge with this label.

    Zero when the coarsest coordinate lies off the branch cycle.  Finer
    coordinates contribute a doubling factor per level, halved when the
    coordinate is itself a branch edge (the route through that copy is then
    forced to one branch).
    """
    p = base.structure.params
    l, route = _require_balanced(p)
    if not label:
        raise InputError("empty edge label")
    for e in label:
        if not (0 <= e < base.graph.edge_count):
            raise InputError(f"bad edge coordinate in {label}")
    if label[0] not in base.cycle_edge_ids:
        return 0
    total = 1
    for j in range(2, len(label) + 1):
        exponent = 2 * l * route ** (j - 2)
        if label[j - 1] in base.cycle_edge_ids:
            exponent -= 1
        total *= 2 ** exponent
    return total


def enumerate_max_cycles(power: SlashPower,
                         cap: Optional[int] = None) -> tuple[CycleSeq, ...]:
    """All maximal-length cycles of a balanced Laakso power, as vertex
    sequences of the materialized graph.

    Cycles at each level arise from the previous level by routing every
    cycle edge through one of the two s-t routes of the base; enumeration
    walks choice vectors in deterministic order.
    """
    base = LaaksoBase.from_measured(power.base)
    expected = count_max_cycles(base.structure.params, power.n)
    if cap is None:
        cap = path_cap()
    if expected > cap:
        raise CapExceeded(f"{expected} cycles exceed cap {cap}")
    routes = (base.structure.route1(), base.structure.route2())
    cycles: list[CycleSeq] = [base.structure.cycle]
    for level in range(1, power.n):
        lifted: list[CycleSeq] = []
        for c in cycles:
            for choice in itertools.product(routes, repeat=len(c)):
                lifted.append(lift_cycle(power, level, c, choice))
        cycles = lifted
    assert len(cycles) == expected
    return tuple(cycles)


def selector_identity_sum(power: SlashPower,
                          selector: Callable[[CycleSeq], int],
                          cycles: Optional[Sequence[CycleSeq]] = None) -> Fraction:
    """Sum over maximal cycles C of nu(e)/(d(e) |cycles through e|) at
    e = selector(C).

    The selector must return an edge of C whose coarsest label coordinate is
    a branch edge of the base; the sum is selector-independent and equals 1/2
    exactly.
    """
    base = LaaksoBase.from_measured(power.base)
    mg = power.graph
    if cycles is None:
        cycles = enumerate_max_cycles(power)
    total = ZERO
    for c in cycles:
        eidx = selector(c)
        if eidx not in cycle_edge_indices(mg.graph, c):
            raise SelectorError(f"selected edge {eidx} is not on the cycle")
        label = power.edge_label(eidx)
        if label[0] not in base.cycle_edge_ids:
            raise SelectorError(
                f"selected edge {eidx} has coarse coordinate off the branch cycle")
        through = count_max_cycles_through_edge(base, label)
        total += Fraction(1, through) * mg.nu[eidx] / mg.graph.weights[eidx]
    return total


@dataclass(frozen=True)
class BalancedLaaksoWitness:
    """A balanced Laakso s-t subgraph found inside a power of an unbalanced
    base, with the two equal-length lifted arcs and attachment paths."""

    base: LaaksoBase
    n0: int
    i: int
    power: SlashPower
    q1: PathSeq
    q2: PathSeq
    r1: PathSeq
    r2: PathSeq
    subgraph: LaaksoSubgraph


def _branch_routes(st: LaaksoStructure) -> tuple[PathSeq, PathSeq, PathSeq, PathSeq]:
    """(small branch, big branch, small route, big route) by graph length."""
    b1, b2 = st.branch1, st.branch2
    r1, r2 = st.route1(), st.route2()
    if len(b1) <= len(b2):
        return b1, b2, r1, r2
    return b2, b1, r2, r1


def balancing_power(params: LaaksoParams) -> int:
    """Smallest power whose lifted arcs can be made equal in graph length.

    Computed by exact integer comparison of the two arc growth sequences;
    agrees with the closed logarithmic form.
    """
    if params.balanced:
        return 1
    l_small, l_big = sorted((params.l1, params.l2))
    km = params.k + params.m

    def m_len(n: int) -> int:
        return (km + l_big) ** (n - 1) * l_small

    def n_len(n: int) -> int:
        return (km + l_small) ** (n - 1) * l_big

    n = 1
    while m_len(n + 1) <= n_len(n + 1):
        n += 1
    return n + 1


def find_balanced_laakso(mg: MeasuredGraph,
                         cap: Optional[int] = None) -> BalancedLaaksoWitness:
    """Find a balanced Laakso s-t subgraph inside a power of a Laakso graph.

    The shorter branch is lifted through the longer route and vice versa; at
    the last level a computed number i of steps switch route so the two arcs
    land on the same graph length.  A balanced input is returned unchanged as
    its own witness.  The witness cycle always has the metric length of the
    base cycle.
    """
    base = LaaksoBase.from_measured(mg)
    st = base.structure
    p = st.params

    if p.balanced:
        power = slash_power(mg, 1, cap)
        sub = build_laakso_subgraph(mg.graph, st.stem, st.branch1, st.branch2, st.tail)
        return BalancedLaaksoWitness(base=base, n0=1, i=0, power=power,
                                     q1=st.branch1, q2=st.branch2,
                                     r1=st.stem, r2=st.tail, subgraph=sub)

    branch_small, branch_big, route_small, route_big = _branch_routes(st)
    l_small, l_big = len(branch_small) - 1, len(branch_big) - 1
    km = p.k + p.m
    n0 = balancing_power(p)
    m_prev = (km + l_big) ** (n0 - 2) * l_small
    n_target = (km + l_small) ** (n0 - 1) * l_big
    num = n_target - (km + l_small) * m_prev
    if num % (l_big - l_small):
        raise InputError("arc lengths cannot be balanced (non-integral switch count)")
    i = num // (l_big - l_small)
    if not (0 <= i <= m_prev):
        raise InputError(f"switch count {i} out of range [0, {m_prev}]")

    power = slash_power(mg, n0, cap)

    q1: PathSeq = branch_small
    for level in range(1, n0 - 1):
        q1 = lift_path(power, level, q1, [route_big] * (len(q1) - 1))
    mixed = [route_big] * i + [route_small] * (len(q1) - 1 - i)
    q1 = lift_path(power, n0 - 1, q1, mixed)

    q2: PathSeq = branch_big
    for level in range(1, n0):
        q2 = lift_path(power, level, q2, [route_small] * (len(q2) - 1))

    if len(q1) != len(q2):
        raise InputError(f"arc graph lengths differ: {len(q1) - 1} vs {len(q2) - 1}")
    g = power.graph.graph
    u, v = st.branch1[0], st.tail[0]
    assert (q1[0], q1[-1]) == (u, v) and (q2[0], q2[-1]) == (u, v)

    def metric_len(path: PathSeq) -> Fraction:
        return sum((g.weights[g.edge_index(a, b)] for a, b in zip(path, path[1:])), ZERO)

    half = base.c0 / 2
    if metric_len(q1) != half or metric_len(q2) != half:
        raise InputError("lifted arcs do not halve the base cycle length")

    cycle: CycleSeq = tuple(q1[:-1]) + tuple(reversed(q2[1:]))
    from_s = single_source_distances(g, g.s)
    to_t = single_source_distances(g, g.t)
    y = min(cycle, key=lambda x: (from_s[x], x))
    z = min(cycle, key=lambda x: (to_t[x], x))
    assert y == u and z == v, "junctions are no longer the nearest cycle vertices"
    r1 = shortest_path_lex(g, g.s, u, dist_to_v=single_source_distances(g, u))
    r2 = shortest_path_lex(g, v, g.t, dist_to_v=to_t)

    sub = build_laakso_subgraph(g, r1, q1, q2, r2)
    assert sub.structure.params.balanced
    return BalancedLaaksoWitness(base=base, n0=n0, i=i, power=power,
                                 q1=q1, q2=q2, r1=r1, r2=r2, subgraph=sub)


@dataclass(frozen=True)
class PipelineResult:
    """Power index N, the materialized N-th power, a balanced Laakso s-t
    subgraph with all edge weights at most a quarter of its cycle length, and
    the measure supported on the subgraph (explicit zeros elsewhere)."""

    n: int
    power: SlashPower
    subgraph: LaaksoSubgraph
    measure: MeasuredGraph
    c0: Fraction


def balanced_laakso_pipeline(mg: MeasuredGraph,
                             cap: Optional[int] = None) -> PipelineResult:
    """Find N and a balanced Laakso s-t subgraph of the N-th power whose
    cycle realizes the maximal cycle length of the input and whose edges all
    weigh at most a quarter of it; attach the standard stem/branch measure,
    vanishing off the subgraph.

    Raises NoCycle when the input is a path.
    """
    g = mg.graph
    if not is_normalized_geodesic_st(g):
        raise NotNormalized("pipeline input must be a normalized geodesic s-t graph")
    if not is_strictly_geodesic_st(g, cap):
        # Zig-zag s-t paths of other lengths void the isometric-subgraph
        # guarantees the construction rests on.
        raise NotNormalized(
            "some s-t path has a different length when orientation is ignored")
    cycles = enumerate_cycles(g, cap)
    if not cycles:
        raise NoCycle("input graph is a path")
    metric = geodesic_metric(g)

    def cycle_len(c: CycleSeq) -> Fraction:
        return sum((metric.edge_distance(ei) for ei in cycle_edge_indices(g, c)), ZERO)

    c0 = max(cycle_len(c) for c in cycles)
    cycle0 = min((c for c in cycles if cycle_len(c) == c0))
    quarter = c0 / 4

    # Already small and balanced: nothing to do beyond attaching the measure.
    try:
        st = as_laakso(g)
    except NotLaakso:
        st = None
    if (st is not None and st.params.balanced
            and max(g.weights) <= quarter):
        power = slash_power(mg, 1, cap)
        sub = build_laakso_subgraph(g, st.stem, st.branch1, st.branch2, st.tail)
        measure = laakso_measure(g, st)
        return PipelineResult(n=1, power=power, subgraph=sub,
                              measure=measure, c0=c0)

    route = next((p for p in enumerate_st_paths(g) if len(p) >= 3), None)
    assert route is not None, "a graph with a cycle has an s-t path of length >= 2"

    pw2 = slash_power(mg, 2, cap)
    c1 = lift_cycle(pw2, 1, cycle0, [route] * len(cycle0))
    extraction = laakso_from_cycle(pw2.graph.graph, c1)
    if max(extraction.graph.weights) >= 1:
        raise InputError("extracted subgraph has an edge of full length")
    inner = laakso_measure(extraction.graph, extraction.structure)

    witness = find_balanced_laakso(inner, cap)
    n_star = witness.n0
    inner_power = witness.power
    segments = [witness.r1, witness.q1, witness.q2, witness.r2]
    least_route = enumerate_st_paths(inner.graph)[0]

    def seg_max_weight(power: SlashPower, segs: Sequence[PathSeq]) -> Fraction:
        gg = power.graph.graph
        worst = ZERO
        for seg in segs:
            for a, b in zip(seg, seg[1:]):
                worst = max(worst, gg.weights[gg.edge_index(a, b)])
        return worst

    while seg_max_weight(inner_power, segments) > quarter:
        n_star += 1
        inner_power = slash_power(inner, n_star, cap)
        segments = [lift_path(inner_power, n_star - 1, seg,
                              [least_route] * (len(seg) - 1))
                    for seg in segments]

    n_final = 2 * n_star
    power = slash_power(mg, n_final, cap)
    final_segments = _transport_segments(power, pw2, extraction, inner_power, segments)
    sub = build_laakso_subgraph(power.graph.graph, *final_segments)
    assert sub.structure.params.balanced

    small = laakso_measure(sub.graph, sub.structure)
    nu = [ZERO] * power.graph.graph.edge_count
    for sub_ei, parent_ei in enumerate(sub.parent_edges):
        nu[parent_ei] = small.nu[sub_ei]
    measure = MeasuredGraph(graph=power.graph.graph, nu=tuple(nu), restricted=True)

    sub_cycle_len = sum(
        (sub.graph.weights[ei]
         for ei in cycle_edge_indices(sub.graph, sub.structure.cycle)), ZERO)
    if sub_cycle_len != c0:
        raise InputError(f"subgraph cycle has length {sub_cycle_len}, expected {c0}")
    if max(sub.graph.weights) > quarter:
        raise InputError("subgraph still has an edge above a quarter of the cycle")
    _spot_check_isometry(power.graph.graph, sub)
    return PipelineResult(n=n_final, power=power, subgraph=sub,
                          measure=measure, c0=c0)


def _spot_check_isometry(big: StGraph, sub: LaaksoSubgraph,
                         sources: int = 8) -> None:
    """Induced distances from a few subgraph vertices must equal the ambient
    restriction; deterministic choice of sources spread over the segments."""
    small_metric = geodesic_metric(sub.graph)
    nv = sub.graph.vertex_count
    step = max(1, nv // sources)
    for u in range(0, nv, step):
        ambient = single_source_distances(big, sub.parent_vertices[u])
        for v in range(nv):
            if small_metric.d(u, v) != ambient[sub.parent_vertices[v]]:
                raise InputError(
                    f"subgraph is not isometric at pair ({u}, {v})")


def _transport_segments(power: SlashPower, pw2: SlashPower,
                        extraction: LaaksoSubgraph, inner_power: SlashPower,
                        segments: Sequence[PathSeq]) -> list[PathSeq]:
    """Map segment paths from a power of the extracted subgraph into the
    corresponding power of the original base, via flattened edge labels.

    Expects segments in (stem, arc1, arc2, tail) order: the arcs both start
    at the stem's end and both finish at the tail's start.
    """
    final_g = power.graph.graph
    inner_g = inner_power.graph.graph

    def walk(seg: PathSeq, start: int) -> PathSeq:
        mapped = [start]
        cursor = start
        for a, b in zip(seg, seg[1:]):
            inner_ei = inner_g.edge_index(a, b)
            label = inner_power.edge_label(inner_ei)
            flat: list[int] = []
            for sub_edge in label:
                flat.extend(pw2.edge_label(extraction.parent_edges[sub_edge]))
            final_ei = power.edge_by_label[tuple(flat)]
            x, y = final_g.edges[final_ei]
            if x == cursor:
                cursor = y
            elif y == cursor:
                cursor = x
            else:
                raise AssertionError("transported edge does not chain")
            mapped.append(cursor)
        return tuple(mapped)

    stem = walk(segments[0], final_g.s)
    arc1 = walk(segments[1], stem[-1])
    arc2 = walk(segments[2], stem[-1])
    if arc2[-1] != arc1[-1]:
        raise AssertionError("transported arcs do not meet")
    tail = walk(segments[3], arc1[-1])
    if tail[-1] != final_g.t:
        raise AssertionError("transported tail misses t")
    return [stem, arc1, arc2, tail]
