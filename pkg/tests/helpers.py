"""Shared fixture graphs and independent little oracles for the tests."""

from fractions import Fraction as F

from slashpow.constructions import MeasuredGraph, cycle_st_graph, uniform_laakso
from slashpow.core import StGraph


def diamond() -> MeasuredGraph:
    return uniform_laakso((0, 2, 2, 0))


def laakso1221() -> MeasuredGraph:
    return uniform_laakso((1, 2, 2, 1))


def laakso0230() -> MeasuredGraph:
    return uniform_laakso((0, 2, 3, 0))


def unit_cycle(n: int) -> StGraph:
    m = n // 2
    return cycle_st_graph([1] * m, [1] * (n - m))


def unit_cycle_measured(n: int) -> MeasuredGraph:
    g = unit_cycle(n)
    return MeasuredGraph(graph=g, nu=tuple(F(1, n) for _ in range(n)))


def theta() -> MeasuredGraph:
    """Normalized s-t graph with a direct s-t edge and a two-edge detour."""
    g = StGraph(names=("s", "a", "t"), edges=((0, 1), (1, 2), (0, 2)),
                weights=(F(1, 2), F(1, 2), F(1)), s=0, t=2)
    return MeasuredGraph(graph=g, nu=(F(1, 3), F(1, 3), F(1, 3)))


def three_branch() -> MeasuredGraph:
    """Diamond plus a third parallel two-edge branch; normalized."""
    g = StGraph(
        names=("s", "a", "b", "c", "t"),
        edges=((0, 1), (1, 4), (0, 2), (2, 4), (0, 3), (3, 4)),
        weights=(F(1, 2),) * 6,
        s=0, t=4)
    nu = (F(1, 6),) * 6
    return MeasuredGraph(graph=g, nu=nu)


def all_pairs(n: int):
    for u in range(n):
        for v in range(u + 1, n):
            yield u, v
