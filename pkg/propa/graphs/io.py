"""Graph and scale text/JSON formats, generator specs and DOT export."""

from __future__ import annotations

import json
from collections.abc import Callable, Iterable
from pathlib import Path
from typing import Any

from propa.errors import InvalidGraphError, InvalidScaleError
from propa.graphs import generators
from propa.graphs.base import Graph, Scale
from propa.graphs.metric import ball_scale


def parse_graph_text(text: str) -> Graph:
    """Parse the ``p <n>`` / ``e <u> <v>`` line format; ``c`` lines are comments."""
    vertex_count: int | None = None
    edges: list[tuple[int, int]] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        try:
            if fields[0] == "p" and len(fields) == 2:
                if vertex_count is not None:
                    raise InvalidGraphError(f"Line {number}: repeated 'p' line")
                vertex_count = int(fields[1])
            elif fields[0] == "e" and len(fields) == 3:
                edges.append((int(fields[1]), int(fields[2])))
            else:
                raise InvalidGraphError(f"Line {number}: cannot parse {line!r}")
        except ValueError as exc:
            if isinstance(exc, InvalidGraphError):
                raise
            raise InvalidGraphError(f"Line {number}: {exc}") from exc
    if vertex_count is None:
        raise InvalidGraphError("Missing 'p <vertex_count>' line")
    return Graph.from_edges(vertex_count, edges)


def format_graph_text(g: Graph) -> str:
    """Render ``g`` in the line format, one sorted edge per line."""
    lines = [f"c {g.name}"] if g.name else []
    lines.append(f"p {g.vertex_count}")
    lines.extend(f"e {u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def graph_from_json(data: dict[str, Any]) -> Graph:
    """Build a graph from ``{"vertices": n, "edges": [[u, v], ...], "name": str}``."""
    try:
        return Graph.from_edges(
            int(data["vertices"]), data.get("edges", []), name=data.get("name")
        )
    except (KeyError, TypeError) as exc:
        raise InvalidGraphError(f"Malformed graph JSON: {exc}") from exc


def graph_to_json(g: Graph) -> dict[str, Any]:
    """JSON-ready dictionary for ``g``."""
    return {
        "vertices": g.vertex_count,
        "edges": [list(edge) for edge in g.edges],
        "name": g.name,
    }


def read_graph(path: Path) -> Graph:
    """Read a graph file; ``.json`` files use the JSON form."""
    text = path.read_text()
    if path.suffix == ".json":
        try:
            return graph_from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise InvalidGraphError(f"{path}: {exc}") from exc
    return parse_graph_text(text)


def scale_from_json(data: dict[str, Any], g: Graph) -> Scale:
    """Scale from ``{"radius": s}`` or ``{"sets": [[...], ...]}``."""
    if "radius" in data:
        return ball_scale(g, int(data["radius"]))
    if "sets" in data:
        scale = Scale.from_sets(data["sets"])
        scale.check(g)
        return scale
    raise InvalidScaleError("Scale JSON needs a 'radius' or a 'sets' entry")


def scale_to_json(sc: Scale) -> dict[str, Any]:
    """JSON-ready dictionary; ball scales keep their radius alongside the sets."""
    data: dict[str, Any] = {"sets": [sorted(s) for s in sc.sets]}
    if sc.radius is not None:
        data["radius"] = sc.radius
    return data


def _int_args(name: str, raw: str, count: int, separator: str = ":") -> list[int]:
    parts = raw.split(separator) if raw else []
    if len(parts) != count:
        raise InvalidGraphError(f"Generator '{name}' expects {count} parameter(s)")
    try:
        return [int(part) for part in parts]
    except ValueError as exc:
        raise InvalidGraphError(f"Generator '{name}': {exc}") from exc


_SIMPLE: dict[str, Callable[..., Graph]] = {
    "hypercube": generators.hypercube,
    "ladder": generators.circular_ladder,
    "cycle": generators.cycle,
    "path": generators.path,
    "wheel": generators.wheel,
}


def parse_generator_spec(spec: str) -> Graph:
    """Build a graph from a generator spec.

    Forms: ``hypercube:N``, ``grid:RxC``, ``ladder:K``, ``heawood``,
    ``petersen``, ``cycle:K``, ``path:K``, ``wheel:K``,
    ``random:N:EXTRA:SEED``, ``isolated:<spec>`` and ``union:<spec>+<spec>...``.
    """
    spec = spec.strip()
    name, _, rest = spec.partition(":")
    if name == "union":
        parts = [part for part in rest.split("+") if part]
        if not parts:
            raise InvalidGraphError("Generator 'union' needs at least one part")
        return generators.disjoint_union([parse_generator_spec(p) for p in parts])
    if name == "isolated":
        return generators.with_isolated_vertex(parse_generator_spec(rest))
    if name in ("heawood", "petersen"):
        if rest:
            raise InvalidGraphError(f"Generator '{name}' takes no parameters")
        return generators.heawood() if name == "heawood" else generators.petersen()
    if name == "grid":
        rows, cols = _int_args(name, rest, 2, separator="x")
        return generators.grid(rows, cols)
    if name == "random":
        n, extra, seed = _int_args(name, rest, 3)
        return generators.random_connected(n, extra, seed)
    if name in _SIMPLE:
        (value,) = _int_args(name, rest, 1)
        return _SIMPLE[name](value)
    raise InvalidGraphError(f"Unknown generator spec {spec!r}")


def witness_to_dot(g: Graph, witness: Iterable[int], label: str = "witness") -> str:
    """DOT source drawing ``g`` with the witness set filled and its boundary bold."""
    members = set(witness)
    lines = [f'graph "{g.name or "G"}" {{', f'  label="{label}";']
    for v in range(g.vertex_count):
        style = ' [style=filled, fillcolor="lightblue"]' if v in members else ""
        lines.append(f"  {v}{style};")
    for u, v in g.edges:
        style = " [penwidth=3]" if (u in members) != (v in members) else ""
        lines.append(f"  {u} -- {v}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"


__all__ = [
    "parse_graph_text",
    "format_graph_text",
    "graph_from_json",
    "graph_to_json",
    "read_graph",
    "scale_from_json",
    "scale_to_json",
    "parse_generator_spec",
    "witness_to_dot",
]
