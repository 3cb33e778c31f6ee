"""Weighted trees, vertex maps into them, and stochastic tree embeddings."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from ..errors import InputError

ZERO = Fraction(0)


@dataclass(frozen=True)
class GeodesicTree:
    """Tree with positive rational edge weights; the metric is the unique
    path weight sum.  Vertices flagged Steiner are helper points that carry
    no source vertex."""

    names: tuple[str, ...] = field(compare=False)
    edges: tuple[tuple[int, int], ...]
    weights: tuple[Fraction, ...]
    steiner: tuple[bool, ...] = ()

    def __post_init__(self):
        n = len(self.names)
        if self.steiner == ():
            object.__setattr__(self, "steiner", (False,) * n)
        if len(self.steiner) != n:
            raise InputError("steiner flags must cover every vertex")
        if len(self.edges) != n - 1 or len(self.weights) != n - 1:
            raise InputError("a tree on n vertices has exactly n-1 weighted edges")
        for (u, v), w in zip(self.edges, self.weights):
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise InputError(f"bad tree edge ({u},{v})")
            if not isinstance(w, Fraction) or w <= 0:
                raise InputError(f"tree edge ({u},{v}) has weight {w}")
        # Connected with n-1 edges == acyclic.
        seen = {0} if n else set()
        stack = [0] if n else []
        while stack:
            x = stack.pop()
            for y, _ in self.adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != n:
            raise InputError("tree edges do not connect all vertices")

    @property
    def vertex_count(self) -> int:
        return len(self.names)

    @cached_property
    def adj(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        adj: list[list[tuple[int, int]]] = [[] for _ in self.names]
        for i, (u, v) in enumerate(self.edges):
            adj[u].append((v, i))
            adj[v].append((u, i))
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def _rooted(self) -> tuple[tuple[int, ...], tuple[int, ...], tuple[Fraction, ...]]:
        """(parent, depth, dist-to-root) rooted at vertex 0."""
        n = self.vertex_count
        parent = [-1] * n
        depth = [0] * n
        dist = [ZERO] * n
        stack = [0]
        seen = {0}
        while stack:
            x = stack.pop()
            for y, ei in self.adj[x]:
                if y not in seen:
                    seen.add(y)
                    parent[y] = x
                    depth[y] = depth[x] + 1
                    dist[y] = dist[x] + self.weights[ei]
                    stack.append(y)
        return tuple(parent), tuple(depth), tuple(dist)

    def distance(self, u: int, v: int) -> Fraction:
        parent, depth, dist = self._rooted
        total = dist[u] + dist[v]
        while depth[u] > depth[v]:
            u = parent[u]
        while depth[v] > depth[u]:
            v = parent[v]
        while u != v:
            u, v = parent[u], parent[v]
        return total - 2 * dist[u]

    def scaled(self, factor: Fraction) -> "GeodesicTree":
        if factor <= 0:
            raise InputError("scale factor must be positive")
        return replace(self, weights=tuple(w * factor for w in self.weights))


@dataclass(frozen=True)
class TreeMap:
    """Total map from the source graph's vertices into a tree's vertices."""

    vertex_map: tuple[int, ...]

    def __call__(self, v: int) -> int:
        return self.vertex_map[v]


def identity_tree_map(n: int) -> TreeMap:
    return TreeMap(vertex_map=tuple(range(n)))


@dataclass(frozen=True)
class StochasticTreeEmbedding:
    """Finite mixture of tree maps; probabilities are exact and sum to 1."""

    components: tuple[tuple[GeodesicTree, TreeMap, Fraction], ...]

    def __post_init__(self):
        if not self.components:
            raise InputError("embedding needs at least one component")
        total = ZERO
        for _, _, p in self.components:
            if not isinstance(p, Fraction) or p <= 0:
                raise InputError(f"component probability {p} out of range")
            total += p
        if total != 1:
            raise InputError(f"probabilities sum to {total}, not 1")

    def __iter__(self):
        return iter(self.components)

    def __len__(self) -> int:
        return len(self.components)


def path_tree(names: Sequence[str], weights: Sequence[Fraction]) -> GeodesicTree:
    """Convenience: tree whose edges chain the vertices in the given order."""
    return GeodesicTree(names=tuple(names),
                        edges=tuple((i, i + 1) for i in range(len(names) - 1)),
                        weights=tuple(weights))
