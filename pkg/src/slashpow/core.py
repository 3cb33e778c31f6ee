"""Weighted s-t graphs, exact geodesic metrics, and path primitives.

All weights and distances are `fractions.Fraction`; nothing in this module
touches floating point.  Vertices are integer indices into a name table;
display names travel through constructions for debugging but are excluded
from equality.
"""

from __future__ import annotations

import heapq
import os
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

from .errors import (
    CapExceeded,
    DisconnectedGraph,
    InputError,
    InvalidPath,
    NotGeodesicStGraph,
)

PathSeq = tuple[int, ...]
# A cycle is stored open: k >= 3 distinct vertices, consecutive pairs and the
# wrap-around pair being edges.
CycleSeq = tuple[int, ...]

DEFAULT_EDGE_CAP = 10**6
DEFAULT_PATH_CAP = 1 << 20

_ONE = Fraction(1)


def edge_cap() -> int:
    """Materialization cap, overridable via SLASHPOW_MAX_EDGES."""
    raw = os.environ.get("SLASHPOW_MAX_EDGES")
    return int(raw) if raw else DEFAULT_EDGE_CAP


def path_cap() -> int:
    raw = os.environ.get("SLASHPOW_MAX_PATHS")
    return int(raw) if raw else DEFAULT_PATH_CAP


def as_weight(value) -> Fraction:
    w = Fraction(value)
    if w <= 0:
        raise InputError(f"weights must be positive, got {w}")
    return w


@dataclass(frozen=True)
class StGraph:
    """Simple weighted graph with distinguished s, t and per-edge orientation.

    ``edges[i] = (tail, head)`` stores the orientation; the undirected simple
    graph is implied.  Whether every edge actually lies on a directed s-t path
    is a semantic property checked by :func:`validate_st_graph`, not a
    construction-time invariant.
    """

    names: tuple[str, ...] = field(compare=False)
    edges: tuple[tuple[int, int], ...]
    weights: tuple[Fraction, ...]
    s: int
    t: int

    def __post_init__(self):
        n = len(self.names)
        if len(self.edges) != len(self.weights):
            raise InputError("edges and weights differ in length")
        if len(set(self.names)) != n:
            raise InputError("vertex names must be unique")
        if not (0 <= self.s < n and 0 <= self.t < n):
            raise InputError("s or t out of range")
        if self.s == self.t:
            raise InputError("s and t must be distinct")
        seen: set[frozenset[int]] = set()
        for (u, v), w in zip(self.edges, self.weights):
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u},{v}) out of range")
            if u == v:
                raise InputError(f"loop at vertex {u}")
            key = frozenset((u, v))
            if key in seen:
                raise InputError(f"parallel edge between {u} and {v}")
            seen.add(key)
            if not isinstance(w, Fraction) or w <= 0:
                raise InputError(f"edge ({u},{v}) has non-positive weight {w}")

    @property
    def vertex_count(self) -> int:
        return len(self.names)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def out_adj(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per vertex: sorted (neighbor, edge index) pairs along orientation."""
        adj: list[list[tuple[int, int]]] = [[] for _ in self.names]
        for i, (u, v) in enumerate(self.edges):
            adj[u].append((v, i))
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def in_adj(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        adj: list[list[tuple[int, int]]] = [[] for _ in self.names]
        for i, (u, v) in enumerate(self.edges):
            adj[v].append((u, i))
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def und_adj(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        adj: list[list[tuple[int, int]]] = [[] for _ in self.names]
        for i, (u, v) in enumerate(self.edges):
            adj[u].append((v, i))
            adj[v].append((u, i))
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def edge_ids(self) -> dict[frozenset[int], int]:
        return {frozenset(e): i for i, e in enumerate(self.edges)}

    def edge_index(self, u: int, v: int) -> int:
        try:
            return self.edge_ids[frozenset((u, v))]
        except KeyError:
            raise InvalidPath(f"no edge between {u} and {v}") from None

    def has_edge(self, u: int, v: int) -> bool:
        return frozenset((u, v)) in self.edge_ids

    def weight_between(self, u: int, v: int) -> Fraction:
        return self.weights[self.edge_index(u, v)]

    def with_weights(self, weights: Sequence[Fraction]) -> "StGraph":
        return replace(self, weights=tuple(weights))

    def edge_name(self, i: int) -> str:
        u, v = self.edges[i]
        return f"{self.names[u]}->{self.names[v]}"


@dataclass(frozen=True)
class ValidationReport:
    """Per-edge s-t path membership plus connectivity."""

    connected: bool
    edge_on_st_path: tuple[bool, ...]

    @property
    def ok(self) -> bool:
        return self.connected and all(self.edge_on_st_path)

    @property
    def failing_edges(self) -> tuple[int, ...]:
        return tuple(i for i, ok in enumerate(self.edge_on_st_path) if not ok)


def is_connected(g: StGraph) -> bool:
    if g.vertex_count == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for v, _ in g.und_adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == g.vertex_count


def _directed_reach(g: StGraph, start: int, forward: bool) -> set[int]:
    adj = g.out_adj if forward else g.in_adj
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v, _ in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


def topological_order(g: StGraph) -> Optional[tuple[int, ...]]:
    """Topological order of the orientation, or None if it has a directed cycle."""
    indeg = [0] * g.vertex_count
    for _, v in g.edges:
        indeg[v] += 1
    ready = sorted(u for u in range(g.vertex_count) if indeg[u] == 0)
    heapq.heapify(ready)
    order: list[int] = []
    while ready:
        u = heapq.heappop(ready)
        order.append(u)
        for v, _ in g.out_adj[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                heapq.heappush(ready, v)
    if len(order) != g.vertex_count:
        return None
    return tuple(order)


def _simple_st_path_through(g: StGraph, eidx: int) -> bool:
    """Exhaustive check that edge eidx lies on a simple directed s-t path.

    Only used when the orientation has a directed cycle, which cannot happen
    for geodesic s-t graphs with positive weights; kept fully general for
    arbitrary validation inputs.
    """
    u, v = g.edges[eidx]
    target_first, target_second = u, v

    def extend(w: int, used: set[int]) -> bool:
        # Reached v's side: search v -> t avoiding `used`.
        if w == g.t:
            return True
        for x, _ in g.out_adj[w]:
            if x not in used:
                used.add(x)
                if extend(x, used):
                    return True
                used.remove(x)
        return False

    def to_u(w: int, used: set[int]) -> bool:
        if w == target_first:
            if target_second in used:
                return False
            used.add(target_second)
            ok = extend(target_second, used)
            used.remove(target_second)
            return ok
        for x, _ in g.out_adj[w]:
            if x not in used:
                used.add(x)
                if to_u(x, used):
                    return True
                used.remove(x)
        return False

    return to_u(g.s, {g.s})


def validate_st_graph(g: StGraph) -> ValidationReport:
    """Report, per edge, whether it lies on a directed s-t path.

    Passes overall iff the graph is connected and every edge does.
    """
    connected = is_connected(g)
    if topological_order(g) is not None:
        # In a DAG, s->u and v->t reachability suffices: the two paths cannot
        # share a vertex without creating a directed cycle.
        fwd = _directed_reach(g, g.s, forward=True)
        bwd = _directed_reach(g, g.t, forward=False)
        flags = tuple(u in fwd and v in bwd for u, v in g.edges)
    else:
        flags = tuple(_simple_st_path_through(g, i) for i in range(g.edge_count))
    return ValidationReport(connected=connected, edge_on_st_path=flags)


@dataclass(frozen=True)
class GeodesicMetric:
    """All-pairs shortest-path distances of a weighted graph, exact."""

    source: StGraph = field(compare=False)
    dist: tuple[tuple[Fraction, ...], ...]

    def d(self, u: int, v: int) -> Fraction:
        return self.dist[u][v]

    def __call__(self, u: int, v: int) -> Fraction:
        return self.dist[u][v]

    def edge_distance(self, eidx: int) -> Fraction:
        u, v = self.source.edges[eidx]
        return self.dist[u][v]

    @cached_property
    def diameter(self) -> Fraction:
        return max(max(row) for row in self.dist)


def single_source_distances(g: StGraph, src: int) -> tuple[Fraction, ...]:
    """Dijkstra over the undirected graph; ties resolve by smallest vertex id."""
    dist: list[Optional[Fraction]] = [None] * g.vertex_count
    heap: list[tuple[Fraction, int]] = [(Fraction(0), src)]
    while heap:
        d, u = heapq.heappop(heap)
        if dist[u] is not None:
            continue
        dist[u] = d
        for v, ei in g.und_adj[u]:
            if dist[v] is None:
                heapq.heappush(heap, (d + g.weights[ei], v))
    if any(d is None for d in dist):
        raise DisconnectedGraph("graph is not connected")
    return tuple(dist)  # type: ignore[arg-type]


def geodesic_metric(g: StGraph) -> GeodesicMetric:
    rows = tuple(single_source_distances(g, u) for u in range(g.vertex_count))
    return GeodesicMetric(source=g, dist=rows)


def shortest_path_lex(g: StGraph, u: int, v: int,
                      dist_to_v: Optional[Sequence[Fraction]] = None) -> PathSeq:
    """Lexicographically smallest among minimum-weight u-v paths (undirected)."""
    if dist_to_v is None:
        dist_to_v = single_source_distances(g, v)
    path = [u]
    w = u
    while w != v:
        remaining = dist_to_v[w]
        for x, ei in g.und_adj[w]:  # ascending, so first hit is lex-least
            if g.weights[ei] + dist_to_v[x] == remaining:
                path.append(x)
                w = x
                break
        else:  # pragma: no cover - unreachable on a connected graph
            raise DisconnectedGraph(f"no path from {u} to {v}")
    return tuple(path)


def is_path_in(g: StGraph, p: Sequence[int]) -> bool:
    if len(p) == 0:
        return False
    if len(set(p)) != len(p):
        return False
    return all(g.has_edge(a, b) for a, b in zip(p, p[1:]))


def require_path(g: StGraph, p: Sequence[int]) -> PathSeq:
    if not is_path_in(g, p):
        raise InvalidPath(f"{tuple(p)} is not a path of the graph")
    return tuple(p)


def path_length(g: StGraph, p: Sequence[int]) -> Fraction:
    """Sum of edge weights along a path; a single vertex has length 0."""
    require_path(g, p)
    return sum((g.weights[g.edge_index(a, b)] for a, b in zip(p, p[1:])),
               Fraction(0))


def concat_paths(a: Sequence[int], b: Sequence[int]) -> PathSeq:
    """Concatenate two paths sharing exactly the junction a[-1] == b[0]."""
    if not a or not b or a[-1] != b[0]:
        raise InvalidPath("paths do not share a junction vertex")
    joined = tuple(a) + tuple(b[1:])
    if len(set(joined)) != len(joined):
        raise InvalidPath("concatenation revisits a vertex")
    return joined


def is_cycle_in(g: StGraph, c: Sequence[int]) -> bool:
    if len(c) < 3 or len(set(c)) != len(c):
        return False
    return all(g.has_edge(c[i], c[(i + 1) % len(c)]) for i in range(len(c)))


def cycle_edge_indices(g: StGraph, c: Sequence[int]) -> tuple[int, ...]:
    if not is_cycle_in(g, c):
        raise InvalidPath(f"{tuple(c)} is not a cycle of the graph")
    return tuple(g.edge_index(c[i], c[(i + 1) % len(c)]) for i in range(len(c)))


def cycle_metric_length(metric: GeodesicMetric, c: Sequence[int]) -> Fraction:
    """Sum of metric edge lengths around the cycle."""
    g = metric.source
    total = Fraction(0)
    for i in cycle_edge_indices(g, c):
        total += metric.edge_distance(i)
    return total


def enumerate_st_paths(g: StGraph, cap: Optional[int] = None) -> tuple[PathSeq, ...]:
    """All simple directed s-t paths in lexicographic vertex order.

    Raises CapExceeded (naming the count) when more than `cap` paths exist.
    """
    if cap is None:
        cap = path_cap()
    if topological_order(g) is not None:
        # Exact count first so the error can name it.
        count = _count_dag_st_paths(g)
        if count > cap:
            raise CapExceeded(f"{count} s-t paths exceed cap {cap}")
    out: list[PathSeq] = []
    stack: list[tuple[int, tuple[int, ...]]] = [(g.s, (g.s,))]
    # Manual DFS keeps lexicographic order: push neighbors descending.
    while stack:
        u, path = stack.pop()
        if u == g.t:
            out.append(path)
            if len(out) > cap:
                raise CapExceeded(f"more than {cap} s-t paths")
            continue
        for v, _ in reversed(g.out_adj[u]):
            if v not in path:
                stack.append((v, path + (v,)))
    return tuple(out)


def _count_dag_st_paths(g: StGraph) -> int:
    order = topological_order(g)
    assert order is not None
    count = [0] * g.vertex_count
    count[g.s] = 1
    for u in order:
        if count[u]:
            for v, _ in g.out_adj[u]:
                count[v] += count[u]
    return count[g.t]


def st_path_length_range(g: StGraph,
                         cap: Optional[int] = None) -> tuple[Fraction, Fraction]:
    """(min, max) metric length over all directed s-t paths."""
    order = topological_order(g)
    if order is not None:
        report = validate_st_graph(g)
        if not report.ok:
            raise NotGeodesicStGraph("graph fails s-t validation")
        lo: dict[int, Fraction] = {g.s: Fraction(0)}
        hi: dict[int, Fraction] = {g.s: Fraction(0)}
        for u in order:
            if u not in lo:
                continue
            for v, ei in g.out_adj[u]:
                w = g.weights[ei]
                if v not in lo or lo[u] + w < lo[v]:
                    lo[v] = lo[u] + w
                if v not in hi or hi[u] + w > hi[v]:
                    hi[v] = hi[u] + w
        if g.t not in lo:
            raise NotGeodesicStGraph("t unreachable from s along the orientation")
        return lo[g.t], hi[g.t]
    paths = enumerate_st_paths(g, cap=cap)
    if not paths:
        raise NotGeodesicStGraph("no directed s-t path")
    lengths = [path_length(g, p) for p in paths]
    return min(lengths), max(lengths)


def is_normalized_geodesic_st(g: StGraph) -> bool:
    """True iff the graph validates and every directed s-t path has length 1."""
    if not validate_st_graph(g).ok:
        return False
    lo, hi = st_path_length_range(g)
    return lo == hi == _ONE


def undirected_st_path_length_range(g: StGraph,
                                    cap: Optional[int] = None
                                    ) -> tuple[Fraction, Fraction]:
    """(min, max) metric length over all simple s-t paths, orientation
    ignored.  Exponential in the worst case; capped."""
    if cap is None:
        cap = path_cap()
    lo: Optional[Fraction] = None
    hi: Optional[Fraction] = None
    found = 0

    def dfs(u: int, acc: Fraction, used: set[int]) -> None:
        nonlocal lo, hi, found
        if u == g.t:
            found += 1
            if found > cap:
                raise CapExceeded(f"more than {cap} s-t paths")
            lo = acc if lo is None or acc < lo else lo
            hi = acc if hi is None or acc > hi else hi
            return
        for v, ei in g.und_adj[u]:
            if v not in used:
                used.add(v)
                dfs(v, acc + g.weights[ei], used)
                used.remove(v)

    dfs(g.s, Fraction(0), {g.s})
    if lo is None or hi is None:
        raise DisconnectedGraph("no s-t path")
    return lo, hi


def is_strictly_geodesic_st(g: StGraph, cap: Optional[int] = None) -> bool:
    """True iff every simple s-t path, with or against the orientation, has
    the same metric length.

    Strictly stronger than the directed check: a graph can have all directed
    s-t paths of length 1 while a zig-zag path is longer, and such graphs
    break the isometric-subgraph guarantees downstream.
    """
    if not validate_st_graph(g).ok:
        return False
    lo, hi = undirected_st_path_length_range(g, cap)
    return lo == hi


def normalize(g: StGraph) -> StGraph:
    """Divide all weights by the common s-t path length.

    Raises NotGeodesicStGraph when s-t paths disagree in length.
    """
    if not validate_st_graph(g).ok:
        raise NotGeodesicStGraph("graph fails s-t validation")
    lo, hi = st_path_length_range(g)
    if lo != hi:
        raise NotGeodesicStGraph(f"s-t path lengths range from {lo} to {hi}")
    if lo == _ONE:
        return g
    return g.with_weights(tuple(w / lo for w in g.weights))


def brute_force_distance(g: StGraph, u: int, v: int) -> Fraction:
    """Minimum over all simple u-v paths, by exhaustive DFS (test oracle)."""
    best: list[Optional[Fraction]] = [None]

    def rec(w: int, acc: Fraction, used: set[int]) -> None:
        if best[0] is not None and acc >= best[0]:
            return
        if w == v:
            best[0] = acc
            return
        for x, ei in g.und_adj[w]:
            if x not in used:
                used.add(x)
                rec(x, acc + g.weights[ei], used)
                used.remove(x)

    rec(u, Fraction(0), {u})
    if best[0] is None:
        raise DisconnectedGraph(f"no path from {u} to {v}")
    return best[0]


def enumerate_cycles(g: StGraph, cap: Optional[int] = None) -> tuple[CycleSeq, ...]:
    """All simple cycles, canonicalized: smallest vertex first, smaller
    neighbor second.  Deterministic order; capped."""
    if cap is None:
        cap = path_cap()
    cycles: list[CycleSeq] = []

    def search(start: int, path: list[int], used: set[int]) -> None:
        u = path[-1]
        for v, _ in g.und_adj[u]:
            if v == start and len(path) >= 3:
                if path[1] < path[-1]:  # canonical direction
                    cycles.append(tuple(path))
                    if len(cycles) > cap:
                        raise CapExceeded(f"more than {cap} cycles")
            elif v > start and v not in used:
                used.add(v)
                path.append(v)
                search(start, path, used)
                path.pop()
                used.remove(v)

    for start in range(g.vertex_count):
        search(start, [start], {start})
    return tuple(cycles)
