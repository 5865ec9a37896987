"""JSON documents (ccx-wallspace-v1, ccx-complex-v1, ccx-graph-v1) and DOT.

Every writer emits canonical order with sorted keys, so equal inputs give
byte-identical output.
"""

from __future__ import annotations

import json

from .errors import InvalidInputError
from .graphs import Graph
from .median_core import CubeComplex, Wallspace, bits_to_str, str_to_bits

WALLSPACE_FORMAT = "ccx-wallspace-v1"
COMPLEX_FORMAT = "ccx-complex-v1"
GRAPH_FORMAT = "ccx-graph-v1"


def _parse(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"parse error: {exc}") from exc
    if not isinstance(doc, dict):
        raise InvalidInputError("parse error: document must be a JSON object")
    return doc


def _expect(doc: dict, fmt: str) -> None:
    if doc.get("format") != fmt:
        raise InvalidInputError(f"parse error: expected format {fmt!r}, got {doc.get('format')!r}")


def _str_list(value, what: str) -> list:
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        raise InvalidInputError(f"parse error: {what} must be a list of strings")
    return value


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def document_format(text: str) -> str:
    return _parse(text).get("format", "")


# ---------------------------------------------------------------- wallspaces

def load_wallspace(text: str) -> Wallspace:
    doc = _parse(text)
    _expect(doc, WALLSPACE_FORMAT)
    elements = _str_list(doc.get("elements"), "elements")
    walls = doc.get("walls")
    if not isinstance(walls, list):
        raise InvalidInputError("parse error: walls must be a list")
    plus_sides, names = [], []
    for i, w in enumerate(walls):
        if not isinstance(w, dict) or "plus" not in w:
            raise InvalidInputError(f"parse error: wall {i} needs a 'plus' list")
        plus = _str_list(w["plus"], f"wall {i} plus")
        if len(set(plus)) != len(plus):
            raise InvalidInputError(f"parse error: wall {i} repeats an element")
        plus_sides.append(frozenset(plus))
        names.append(w.get("name"))
    if any(n is not None and not isinstance(n, str) for n in names):
        raise InvalidInputError("parse error: wall names must be strings")
    wall_names = None
    if any(n is not None for n in names):
        wall_names = tuple(n if n is not None else f"w{i}" for i, n in enumerate(names))
    return Wallspace(tuple(elements), tuple(plus_sides), wall_names)


def wallspace_to_doc(ws: Wallspace) -> dict:
    """Elements sorted; walls sorted by their sorted plus side."""
    walls = []
    for i, plus in enumerate(ws.walls):
        entry = {"plus": sorted(plus)}
        if ws.wall_names is not None:
            entry["name"] = ws.wall_names[i]
        walls.append(entry)
    walls.sort(key=lambda w: (w["plus"], w.get("name", "")))
    return {"format": WALLSPACE_FORMAT, "elements": sorted(ws.elements), "walls": walls}


def dump_wallspace(ws: Wallspace) -> str:
    return dumps(wallspace_to_doc(ws))


# ---------------------------------------------------------------- complexes

def load_complex(text: str, validate: bool = True) -> CubeComplex:
    doc = _parse(text)
    _expect(doc, COMPLEX_FORMAT)
    k = doc.get("num_walls")
    if not isinstance(k, int) or isinstance(k, bool) or k < 0:
        raise InvalidInputError("parse error: num_walls must be a nonnegative integer")
    verts = _str_list(doc.get("vertices"), "vertices")
    if not verts or verts[0] != "0" * k:
        raise InvalidInputError("parse error: the all-zero base vertex must be listed first")
    if any(len(s) != k for s in verts):
        raise InvalidInputError("parse error: every bitstring must have length num_walls")
    if len(set(verts)) != len(verts):
        raise InvalidInputError("parse error: duplicate vertex")
    names = doc.get("wall_names")
    if names is not None:
        names = tuple(_str_list(names, "wall_names"))
    X = CubeComplex(k, frozenset(str_to_bits(s) for s in verts), names)
    if validate:
        X.check_invariants()
    return X


def complex_to_doc(X: CubeComplex) -> dict:
    doc = {
        "format": COMPLEX_FORMAT,
        "num_walls": X.num_walls,
        "vertices": [bits_to_str(v, X.num_walls) for v in X.ordered],
    }
    if X.wall_names is not None:
        doc["wall_names"] = list(X.wall_names)
    return doc


def dump_complex(X: CubeComplex) -> str:
    return dumps(complex_to_doc(X))


# ---------------------------------------------------------------- graphs

def load_graph(text: str) -> Graph:
    """Graph document; rejects loops and repeated edges (non-simple input)."""
    doc = _parse(text)
    _expect(doc, GRAPH_FORMAT)
    verts = _str_list(doc.get("vertices"), "vertices")
    edges = doc.get("edges")
    if not isinstance(edges, list):
        raise InvalidInputError("parse error: edges must be a list")
    seen = set()
    for e in edges:
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, str) for x in e)):
            raise InvalidInputError(f"parse error: bad edge {e!r}")
        if e[0] == e[1]:
            raise InvalidInputError(f"non-simple input: loop at {e[0]!r}")
        key = frozenset(e)
        if key in seen:
            raise InvalidInputError(f"non-simple input: repeated edge {e!r}")
        seen.add(key)
    return Graph.from_edges(verts, [tuple(e) for e in edges])


def graph_to_doc(g: Graph, labels: dict | None = None, attrs: dict | None = None) -> dict:
    """``labels`` maps vertices to strings (default ``str``); ``attrs`` adds
    per-vertex attributes under ``vertex_attrs`` (e.g. grades)."""
    lab = (lambda v: labels[v]) if labels else str
    edges = sorted(sorted((lab(u), lab(v))) for u, v in g.edges)
    doc = {"format": GRAPH_FORMAT, "vertices": sorted(lab(v) for v in g.vertices), "edges": edges}
    if attrs:
        doc["vertex_attrs"] = {lab(v): a for v, a in attrs.items()}
    return doc


def dump_graph(g: Graph, labels: dict | None = None, attrs: dict | None = None) -> str:
    return dumps(graph_to_doc(g, labels, attrs))


# ---------------------------------------------------------------- DOT

def _q(s) -> str:
    return '"' + str(s).replace('"', '\\"') + '"'


def graph_to_dot(g: Graph, labels: dict | None = None, dashed: frozenset = frozenset(),
                 name: str = "G") -> str:
    """Undirected DOT; edges listed in ``dashed`` are drawn dashed."""
    lab = (lambda v: labels[v]) if labels else str
    lines = [f"graph {name} {{"]
    for v in sorted(g.vertices, key=lab):
        lines.append(f"  {_q(lab(v))};")
    for u, v in sorted(g.edges, key=lambda e: sorted((lab(e[0]), lab(e[1])))):
        a, b = sorted((lab(u), lab(v)))
        style = " [style=dashed]" if (u, v) in dashed else ""
        lines.append(f"  {_q(a)} -- {_q(b)}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def ranked_dot(g: Graph, labels: dict, rank: dict, name: str = "T") -> str:
    """DOT with one ``rank=same`` group per rank value (graded layouts)."""
    lines = [f"graph {name} {{", "  rankdir=TB;"]
    for r in sorted(set(rank.values())):
        members = " ".join(_q(labels[v]) + ";" for v in sorted(g.vertices) if rank[v] == r)
        lines.append(f"  {{ rank=same; {members} }}")
    for u, v in sorted(g.edges):
        lines.append(f"  {_q(labels[u])} -- {_q(labels[v])};")
    lines.append("}")
    return "\n".join(lines) + "\n"
