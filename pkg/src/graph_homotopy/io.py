"""JSON and DOT serialisation for graphs, vertex maps, homotopies and walks.

Graph document::

    {"vertices": ["a", "b"], "edges": [["a", "b"], ["a", "a"]]}

A loop is an edge with a repeated endpoint; unordered pairs are deduplicated
on load.  Maps, homotopies and walks refer to graphs either inline (a graph
document) or by a file path, resolved relative to the referring file.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .errors import ParseError
from .graph import Graph, VertexMap, vertex_label
from .groupoid import Walk
from .homotopy import Homotopy


def _load_json(data: bytes | str, what: str) -> Any:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"{what} is not UTF-8 ({exc.reason})", f"byte {exc.start}") from None
    try:
        return json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON in {what}: {exc.msg}", f"line {exc.lineno} column {exc.colno}") from None


def _vertex_id(v: Any, location: str) -> str:
    if isinstance(v, bool) or not isinstance(v, (str, int)):
        raise ParseError(f"vertex identifiers must be strings or integers, got {v!r}", location)
    return str(v)


def graph_from_doc(doc: Any, where: str = "graph") -> Graph:
    if not isinstance(doc, dict):
        raise ParseError("graph document must be a JSON object", where)
    if "vertices" not in doc:
        raise ParseError("missing 'vertices'", where)
    verts_raw = doc["vertices"]
    edges_raw = doc.get("edges", [])
    if not isinstance(verts_raw, list):
        raise ParseError("'vertices' must be a list", f"{where}.vertices")
    if not isinstance(edges_raw, list):
        raise ParseError("'edges' must be a list", f"{where}.edges")
    verts: list[str] = []
    seen: dict[str, int] = {}
    for i, v in enumerate(verts_raw):
        vid = _vertex_id(v, f"{where}.vertices[{i}]")
        if vid in seen:
            raise ParseError(f"duplicate vertex {vid!r} (first at index {seen[vid]})", f"{where}.vertices[{i}]")
        seen[vid] = i
        verts.append(vid)
    edges = []
    for k, e in enumerate(edges_raw):
        loc = f"{where}.edges[{k}]"
        if not isinstance(e, list) or len(e) != 2:
            raise ParseError("an edge must be a list of two vertices", loc)
        u, v = (_vertex_id(x, loc) for x in e)
        for x in (u, v):
            if x not in seen:
                raise ParseError(f"edge endpoint {x!r} is not a declared vertex", loc)
        edges.append((u, v))
    return Graph(verts, edges)


def parse_graph(data: bytes | str) -> Graph:
    return graph_from_doc(_load_json(data, "graph document"))


def graph_to_doc(g: Graph) -> dict:
    return {
        "vertices": [vertex_label(v) for v in g.vertices],
        "edges": [[vertex_label(u), vertex_label(v)] for u, v in g.edges],
    }


def emit_graph(g: Graph) -> bytes:
    doc = graph_to_doc(g)
    text = (
        "{\n"
        f'  "vertices": {json.dumps(doc["vertices"])},\n'
        f'  "edges": {json.dumps(doc["edges"])}\n'
        "}\n"
    )
    return text.encode("utf-8")


def emit_dot(g: Graph, name: str = "G") -> bytes:
    lines = [f"graph {json.dumps(name)} {{"]
    for v in g.vertices:
        lines.append(f"  {json.dumps(vertex_label(v))};")
    for u, v in g.edges:
        lines.append(f"  {json.dumps(vertex_label(u))} -- {json.dumps(vertex_label(v))};")
    lines.append("}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def load_graph(path: str | Path) -> Graph:
    p = Path(path)
    try:
        data = p.read_bytes()
    except OSError as exc:
        raise ParseError(f"cannot read graph file: {exc.strerror}", str(p)) from None
    return graph_from_doc(_load_json(data, str(p)), str(p))


def _resolve_graph(ref: Any, base_dir: Path | None, where: str) -> Graph:
    if isinstance(ref, dict):
        return graph_from_doc(ref, where)
    if isinstance(ref, str):
        p = Path(ref)
        if base_dir is not None and not p.is_absolute():
            p = base_dir / p
        return load_graph(p)
    raise ParseError("graph reference must be an inline graph or a file path", where)


def map_from_doc(doc: Any, *, source: Graph | None = None, target: Graph | None = None,
                 base_dir: Path | None = None, where: str = "map") -> VertexMap:
    """Explicit ``source``/``target`` graphs override references in the document."""
    if not isinstance(doc, dict) or "map" not in doc:
        raise ParseError("map document must be an object with a 'map' field", where)
    if source is None:
        if "source" not in doc:
            raise ParseError("no source graph given", where)
        source = _resolve_graph(doc["source"], base_dir, f"{where}.source")
    if target is None:
        if "target" not in doc:
            raise ParseError("no target graph given", where)
        target = _resolve_graph(doc["target"], base_dir, f"{where}.target")
    assignment = doc["map"]
    if not isinstance(assignment, dict):
        raise ParseError("'map' must be an object from source to target vertices", f"{where}.map")
    for k, v in assignment.items():
        if k not in source:
            raise ParseError(f"{k!r} is not a source vertex", f"{where}.map")
        if _vertex_id(v, f"{where}.map[{k!r}]") not in target:
            raise ParseError(f"image {v!r} is not a target vertex", f"{where}.map[{k!r}]")
    missing = [v for v in source.vertices if v not in assignment]
    if missing:
        raise ParseError(f"map has no image for {missing[0]!r}", f"{where}.map")
    return VertexMap(source, target, {k: str(v) for k, v in assignment.items()})


def load_map(path: str | Path, source: Graph | None = None, target: Graph | None = None) -> VertexMap:
    p = Path(path)
    try:
        data = p.read_bytes()
    except OSError as exc:
        raise ParseError(f"cannot read map file: {exc.strerror}", str(p)) from None
    return map_from_doc(_load_json(data, str(p)), source=source, target=target,
                        base_dir=p.parent, where=str(p))


def map_to_doc(f: VertexMap, inline_graphs: bool = True) -> dict:
    doc: dict = {}
    if inline_graphs:
        doc["source"] = graph_to_doc(f.source)
        doc["target"] = graph_to_doc(f.target)
    doc["map"] = {vertex_label(k): vertex_label(v) for k, v in f.as_dict().items()}
    return doc


def homotopy_to_doc(h: Homotopy, inline_graphs: bool = False) -> dict:
    return {"frames": [map_to_doc(f, inline_graphs) for f in h.frames]}


def homotopy_from_doc(doc: Any, source: Graph, target: Graph, where: str = "homotopy") -> Homotopy:
    if not isinstance(doc, dict) or not isinstance(doc.get("frames"), list):
        raise ParseError("homotopy document must be an object with a 'frames' list", where)
    frames = [
        map_from_doc(fr, source=source, target=target, where=f"{where}.frames[{k}]")
        for k, fr in enumerate(doc["frames"])
    ]
    return Homotopy(tuple(frames))


def walk_from_doc(doc: Any, *, graph: Graph | None = None, base_dir: Path | None = None,
                  where: str = "walk") -> Walk:
    if not isinstance(doc, dict) or not isinstance(doc.get("vertices"), list):
        raise ParseError("walk document must be an object with a 'vertices' list", where)
    if graph is None:
        if "graph" not in doc:
            raise ParseError("no graph given for walk", where)
        graph = _resolve_graph(doc["graph"], base_dir, f"{where}.graph")
    verts = [_vertex_id(v, f"{where}.vertices[{i}]") for i, v in enumerate(doc["vertices"])]
    for i, v in enumerate(verts):
        if v not in graph:
            raise ParseError(f"{v!r} is not a vertex of the graph", f"{where}.vertices[{i}]")
    return Walk(graph, tuple(verts))


def load_walk(path: str | Path, graph: Graph | None = None) -> Walk:
    p = Path(path)
    try:
        data = p.read_bytes()
    except OSError as exc:
        raise ParseError(f"cannot read walk file: {exc.strerror}", str(p)) from None
    return walk_from_doc(_load_json(data, str(p)), graph=graph, base_dir=p.parent, where=str(p))


def walk_to_doc(w: Walk, inline_graph: bool = False) -> dict:
    doc: dict = {}
    if inline_graph:
        doc["graph"] = graph_to_doc(w.graph)
    doc["vertices"] = [vertex_label(v) for v in w.vertices]
    return doc
