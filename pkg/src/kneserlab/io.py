"""File formats: DIMACS graphs with JSON label sidecars, and JSON records."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .errors import InvalidParameter
from .types import Coloring, Graph, SetSystem


def dumps(obj: Any) -> str:
    """Canonical JSON text used for every file this package writes."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _tupled(value: Any) -> Any:
    # JSON has no tuples; labels are restored as nested tuples
    if isinstance(value, list):
        return tuple(_tupled(v) for v in value)
    return value


def to_dimacs(graph: Graph) -> str:
    lines = [f"p edge {graph.vertex_count} {graph.edge_count}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in graph.edges())
    return "\n".join(lines) + "\n"


def from_dimacs(text: str, labels=None, provenance: dict | None = None) -> Graph:
    n = None
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        parts = line.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise InvalidParameter(f"line {lineno}: malformed problem line {line!r}")
            n = int(parts[2])
        elif parts[0] == "e":
            if n is None or len(parts) != 3:
                raise InvalidParameter(f"line {lineno}: malformed edge line {line!r}")
            edges.append((int(parts[1]) - 1, int(parts[2]) - 1))
        else:
            raise InvalidParameter(f"line {lineno}: unknown line type {parts[0]!r}")
    if n is None:
        raise InvalidParameter("missing 'p edge' line")
    return Graph.from_edges(n, edges, labels=labels, provenance=provenance)


def graph_sidecar(graph: Graph) -> dict:
    return {"labels": list(graph.labels), "provenance": graph.provenance}


def graph_to_json(graph: Graph) -> dict:
    return {
        "vertex_count": graph.vertex_count,
        "edges": [[u + 1, v + 1] for u, v in graph.edges()],
        **graph_sidecar(graph),
    }


def graph_from_json(data: dict) -> Graph:
    edges = [(u - 1, v - 1) for u, v in data["edges"]]
    labels = [_tupled(x) for x in data["labels"]] if "labels" in data else None
    return Graph.from_edges(data["vertex_count"], edges, labels=labels, provenance=data.get("provenance", {}))


def sidecar_path(path: Path) -> Path:
    return path.with_suffix(".json")


def write_graph(graph: Graph, path, fmt: str = "dimacs") -> list[Path]:
    """Write ``graph``; DIMACS output gets a ``.json`` sidecar with labels and provenance."""
    path = Path(path)
    if fmt == "dimacs":
        path.write_text(to_dimacs(graph))
        side = sidecar_path(path)
        side.write_text(dumps(graph_sidecar(graph)))
        return [path, side]
    if fmt == "json":
        path.write_text(dumps(graph_to_json(graph)))
        return [path]
    raise InvalidParameter(f"unknown graph format {fmt!r}")


def read_graph(path) -> Graph:
    path = Path(path)
    if path.suffix == ".json":
        return graph_from_json(json.loads(path.read_text()))
    side = sidecar_path(path)
    labels, provenance = None, {}
    if side.exists():
        meta = json.loads(side.read_text())
        labels = [_tupled(x) for x in meta["labels"]]
        provenance = meta.get("provenance", {})
    return from_dimacs(path.read_text(), labels=labels, provenance=provenance)


def system_to_json(system: SetSystem) -> dict:
    return {"ground": system.ground, "sets": [list(m) for m in system.members()]}


def system_from_json(data: dict) -> SetSystem:
    return SetSystem.from_lists(data["ground"], data["sets"])


def read_system(path) -> SetSystem:
    return system_from_json(json.loads(Path(path).read_text()))


def coloring_to_json(coloring: Coloring) -> dict:
    return {"palette": coloring.palette, "colors": list(coloring.colors)}


def coloring_from_json(data: dict) -> Coloring:
    return Coloring(data["palette"], tuple(data["colors"]))


def read_coloring(path) -> Coloring:
    return coloring_from_json(json.loads(Path(path).read_text()))
