"""Brute-force lower-bound oracle: enumerate every labeled tree topology on
the graph's own vertex set (Prüfer sequences), give each one optimal edge
weights by an exact LP, and take the best expected distortion.

Steiner points are deliberately excluded so the search stays finite; a
Steiner-free optimum over-estimates the unrestricted infimum by at most a
factor 8, and callers report both numbers.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from ..constructions import MeasuredGraph
from ..core import GeodesicMetric, geodesic_metric
from ..errors import CapExceeded, InputError
from .lp import solve_min
from .trees import GeodesicTree, TreeMap, identity_tree_map

ORACLE_VERTEX_CAP = 8


def prufer_to_edges(seq: Sequence[int], n: int) -> tuple[tuple[int, int], ...]:
    """Labeled tree on {0..n-1} from a Prufer sequence of length n-2."""
    if n < 2:
        raise InputError("need at least two vertices")
    if len(seq) != n - 2:
        raise InputError("sequence length must be n-2")
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges: list[tuple[int, int]] = []
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((min(leaf, x), max(leaf, x)))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append((min(u, v), max(u, v)))
    return tuple(edges)


def iter_labeled_trees(n: int) -> Iterator[tuple[tuple[int, ...], tuple[tuple[int, int], ...]]]:
    """(prufer sequence, edge list) for all n^(n-2) labeled trees, in
    lexicographic sequence order."""
    for seq in itertools.product(range(n), repeat=max(n - 2, 0)):
        yield seq, prufer_to_edges(seq, n)


def tree_pair_paths(edges: Sequence[tuple[int, int]], n: int
                    ) -> dict[tuple[int, int], tuple[int, ...]]:
    """For every pair u<v, the edge indices on the unique tree path."""
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for i, (u, v) in enumerate(edges):
        adj[u].append((v, i))
        adj[v].append((u, i))
    paths: dict[tuple[int, int], tuple[int, ...]] = {}
    for src in range(n):
        stack = [(src, ())]
        seen = {src}
        while stack:
            x, used = stack.pop()
            for y, ei in adj[x]:
                if y not in seen:
                    seen.add(y)
                    through = used + (ei,)
                    if src < y:
                        paths[(src, y)] = through
                    stack.append((y, through))
    return paths


def optimal_tree_weights(metric: GeodesicMetric, nu: Sequence[Fraction],
                         edges: Sequence[tuple[int, int]]
                         ) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Cheapest expansive weights for one topology.

    Minimizes the nu-weighted expected stretch of graph edges subject to
    every vertex pair's tree path dominating its graph distance; exact.
    """
    g = metric.source
    n = g.vertex_count
    paths = tree_pair_paths(edges, n)
    nvar = len(edges)

    cost = [Fraction(0)] * nvar
    for gi, (u, v) in enumerate(g.edges):
        key = (min(u, v), max(u, v))
        coeff = nu[gi] / metric.d(u, v)
        for ei in paths[key]:
            cost[ei] += coeff

    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for (u, v), through in sorted(paths.items()):
        row = [Fraction(0)] * nvar
        for ei in through:
            row[ei] = Fraction(1)
        rows.append(row)
        rhs.append(metric.d(u, v))
    result = solve_min(cost, rows, rhs)
    return result.value, result.x


@dataclass(frozen=True)
class OracleResult:
    value: Fraction
    tree: GeodesicTree
    tree_map: TreeMap
    prufer: tuple[int, ...]


def oracle_min_expected_distortion(mg: MeasuredGraph,
                                   vertex_cap: int = ORACLE_VERTEX_CAP
                                   ) -> OracleResult:
    """Minimum expected distortion over expansive Steiner-free trees.

    Exhaustive over the n^(n-2) labeled topologies; ties between topologies
    break toward the smaller Prufer sequence.
    """
    g = mg.graph
    n = g.vertex_count
    if n > vertex_cap:
        raise CapExceeded(f"{n} vertices exceed the oracle cap {vertex_cap}")
    if n < 2:
        raise InputError("need at least two vertices")
    metric = geodesic_metric(g)

    best: Optional[tuple[Fraction, tuple[int, ...], tuple[tuple[int, int], ...],
                         tuple[Fraction, ...]]] = None
    for seq, edges in iter_labeled_trees(n):
        value, weights = optimal_tree_weights(metric, mg.nu, edges)
        if best is None or value < best[0]:
            best = (value, seq, edges, weights)
    assert best is not None
    value, seq, edges, weights = best
    tree = GeodesicTree(names=g.names, edges=edges, weights=weights,
                        steiner=(False,) * n)
    return OracleResult(value=value, tree=tree,
                        tree_map=identity_tree_map(n), prufer=seq)
