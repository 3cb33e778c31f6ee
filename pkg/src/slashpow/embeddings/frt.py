"""Random dominating trees by hierarchical ball partitioning.

A seeded run draws a radius scale from a dyadic rational grid and a vertex
permutation, then refines the point set level by level: each point joins the
first permutation vertex whose ball of the current radius covers it.  The
laminar family becomes a tree with level-proportional edge weights, and a
final exact scaling pass makes every tree dominate the source metric, so
expansiveness never depends on luck.  All arithmetic stays rational.
"""

from __future__ import annotations

import random
from fractions import Fraction

from ..core import GeodesicMetric
from ..errors import DegenerateMetric, InputError
from .trees import GeodesicTree, StochasticTreeEmbedding, TreeMap

TWO = Fraction(2)
RADIUS_GRID = 1 << 20  # grid resolution for the random scale in [1/2, 1)


def _scale_power(delta: Fraction) -> int:
    """Smallest integer p with 2^p >= delta (p may be negative)."""
    p = 0
    while TWO ** p < delta:
        p += 1
    while TWO ** (p - 1) >= delta:
        p -= 1
    return p


def frt_tree(metric: GeodesicMetric, rng: random.Random
             ) -> tuple[GeodesicTree, TreeMap]:
    """One sampled dominating tree and the map into its leaves."""
    g = metric.source
    n = g.vertex_count
    for u in range(n):
        for v in range(u + 1, n):
            if metric.d(u, v) == 0:
                raise DegenerateMetric(f"vertices {u} and {v} coincide")
    if n == 1:
        tree = GeodesicTree(names=(g.names[0],), edges=(), weights=(),
                            steiner=(False,))
        return tree, TreeMap(vertex_map=(0,))
    if n == 2:
        tree = GeodesicTree(names=g.names, edges=((0, 1),),
                            weights=(metric.d(0, 1),), steiner=(False, False))
        return tree, TreeMap(vertex_map=(0, 1))

    beta = Fraction(rng.randrange(RADIUS_GRID // 2, RADIUS_GRID), RADIUS_GRID)
    order = list(range(n))
    rng.shuffle(order)

    top = _scale_power(metric.diameter)
    names: list[str] = ["c0"]
    steiner: list[bool] = [True]
    edges: list[tuple[int, int]] = []
    weights: list[Fraction] = []
    vertex_node = [-1] * n

    # (node id, members in fixed order); singletons retire immediately.
    active: list[tuple[int, tuple[int, ...]]] = [(0, tuple(range(n)))]
    level = top - 1
    while active:
        radius = beta * TWO ** level
        next_active: list[tuple[int, tuple[int, ...]]] = []
        for parent_node, members in active:
            groups: dict[int, list[int]] = {}
            for u in members:
                for c in order:
                    if metric.d(u, c) <= radius:
                        groups.setdefault(c, []).append(u)
                        break
            for center in sorted(groups):
                part = tuple(groups[center])
                node = len(names)
                if len(part) == 1:
                    names.append(g.names[part[0]])
                    steiner.append(False)
                    vertex_node[part[0]] = node
                else:
                    names.append(f"c{node}")
                    steiner.append(True)
                    next_active.append((node, part))
                edges.append((node, parent_node))
                weights.append(TWO ** (level + 1))
        active = next_active
        level -= 1

    tree = GeodesicTree(names=tuple(names), edges=tuple(edges),
                        weights=tuple(weights), steiner=tuple(steiner))
    tmap = TreeMap(vertex_map=tuple(vertex_node))

    # Exact domination pass: one global scale factor suffices.
    factor = Fraction(1)
    for u in range(n):
        for v in range(u + 1, n):
            ratio = metric.d(u, v) / tree.distance(tmap(u), tmap(v))
            if ratio > factor:
                factor = ratio
    if factor > 1:
        tree = tree.scaled(factor)
    return tree, tmap


def frt_embed(metric: GeodesicMetric, seed: int, samples: int
              ) -> StochasticTreeEmbedding:
    """Uniform mixture of `samples` seeded dominating trees."""
    if samples < 1:
        raise InputError("need at least one sample")
    p = Fraction(1, samples)
    components = []
    for k in range(samples):
        rng = random.Random(seed * 1_000_003 + k)
        tree, tmap = frt_tree(metric, rng)
        components.append((tree, tmap, p))
    return StochasticTreeEmbedding(components=tuple(components))
