"""JSON graph schema and DOT export.

Schema::

    {"vertices": [names],
     "edges": [[tail, head, "num/den"], ...],
     "s": name, "t": name,
     "orientation": [[tail, head], ...]}

Weights are exact rational strings and round-trip bit-for-bit.  A measured
graph adds ``"measure": ["num/den", ...]`` aligned with ``edges`` and an
optional ``"restricted": true`` marker for measures that vanish on part of
the edge set.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .constructions import MeasuredGraph
from .core import StGraph
from .errors import SchemaError


def fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(raw: Any) -> Fraction:
    if isinstance(raw, str):
        try:
            return Fraction(raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"bad rational {raw!r}") from exc
    if isinstance(raw, int):
        return Fraction(raw)
    raise SchemaError(f"rational must be a string or integer, got {type(raw).__name__}")


def graph_to_dict(g: StGraph) -> dict:
    return {
        "vertices": list(g.names),
        "edges": [[g.names[u], g.names[v], fraction_str(w)]
                  for (u, v), w in zip(g.edges, g.weights)],
        "s": g.names[g.s],
        "t": g.names[g.t],
        "orientation": [[g.names[u], g.names[v]] for u, v in g.edges],
    }


def measured_to_dict(mg: MeasuredGraph) -> dict:
    doc = graph_to_dict(mg.graph)
    doc["measure"] = [fraction_str(x) for x in mg.nu]
    if mg.restricted:
        doc["restricted"] = True
    return doc


def _require(doc: dict, key: str) -> Any:
    if key not in doc:
        raise SchemaError(f"missing key {key!r}")
    return doc[key]


def graph_from_dict(doc: dict) -> StGraph:
    if not isinstance(doc, dict):
        raise SchemaError("top-level JSON value must be an object")
    names = _require(doc, "vertices")
    if not isinstance(names, list) or not all(isinstance(x, str) for x in names):
        raise SchemaError("vertices must be a list of names")
    if len(set(names)) != len(names):
        raise SchemaError("vertex names must be unique")
    index = {name: i for i, name in enumerate(names)}

    def vid(name: Any) -> int:
        if name not in index:
            raise SchemaError(f"unknown vertex {name!r}")
        return index[name]

    raw_edges = _require(doc, "edges")
    if not isinstance(raw_edges, list):
        raise SchemaError("edges must be a list")
    pair_weight: dict[frozenset[int], Fraction] = {}
    for row in raw_edges:
        if not isinstance(row, list) or len(row) != 3:
            raise SchemaError(f"edge row must be [u, v, weight], got {row!r}")
        u, v = vid(row[0]), vid(row[1])
        key = frozenset((u, v))
        if key in pair_weight:
            raise SchemaError(f"duplicate edge {row[0]!r}-{row[1]!r}")
        pair_weight[key] = parse_fraction(row[2])

    orientation = _require(doc, "orientation")
    if not isinstance(orientation, list) or len(orientation) != len(raw_edges):
        raise SchemaError("orientation must list every edge exactly once")
    edges: list[tuple[int, int]] = []
    weights: list[Fraction] = []
    seen: set[frozenset[int]] = set()
    for row in orientation:
        if not isinstance(row, list) or len(row) != 2:
            raise SchemaError(f"orientation row must be [tail, head], got {row!r}")
        u, v = vid(row[0]), vid(row[1])
        key = frozenset((u, v))
        if key not in pair_weight:
            raise SchemaError(f"orientation names a non-edge {row!r}")
        if key in seen:
            raise SchemaError(f"orientation repeats edge {row!r}")
        seen.add(key)
        edges.append((u, v))
        weights.append(pair_weight[key])

    try:
        return StGraph(names=tuple(names), edges=tuple(edges),
                       weights=tuple(weights),
                       s=vid(_require(doc, "s")), t=vid(_require(doc, "t")))
    except Exception as exc:
        raise SchemaError(str(exc)) from exc


def measured_from_dict(doc: dict) -> MeasuredGraph:
    g = graph_from_dict(doc)
    raw = _require(doc, "measure")
    if not isinstance(raw, list) or len(raw) != g.edge_count:
        raise SchemaError("measure must align with edges")
    nu = tuple(parse_fraction(x) for x in raw)
    try:
        return MeasuredGraph(graph=g, nu=nu,
                             restricted=bool(doc.get("restricted", False)))
    except Exception as exc:
        raise SchemaError(str(exc)) from exc


def dumps(obj: StGraph | MeasuredGraph, indent: int | None = 2) -> str:
    doc = measured_to_dict(obj) if isinstance(obj, MeasuredGraph) else graph_to_dict(obj)
    return json.dumps(doc, indent=indent)


def loads(text: str) -> StGraph | MeasuredGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    if isinstance(doc, dict) and "measure" in doc:
        return measured_from_dict(doc)
    return graph_from_dict(doc)


def export_dot(g: StGraph) -> str:
    """DOT digraph honoring the orientation; labels carry exact weights."""
    lines = ["digraph g {"]
    for name in g.names:
        attrs = []
        if name == g.names[g.s]:
            attrs.append("role=s")
        if name == g.names[g.t]:
            attrs.append("role=t")
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f'  "{name}"{suffix};')
    for (u, v), w in zip(g.edges, g.weights):
        lines.append(f'  "{g.names[u]}" -> "{g.names[v]}" [label="{fraction_str(w)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
