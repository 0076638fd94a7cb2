"""JSON wire formats: net presentations, form specs, graphs, set functions.

Loaders validate aggressively and raise SchemaError with the offending
field path, so CLI users get actionable diagnostics instead of stack
traces.
"""

from __future__ import annotations

import json

from . import quiver
from .chipfiring import Graph
from .fields import FieldError, field_from_descriptor
from .generators import TropicalForm, TropicalSpec
from .linalg import identity
from .nets import NetPresentation
from .setfn import SetFn


class SchemaError(ValueError):
    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}")


def load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise SchemaError(str(path), "file not found") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(
            f"{path}:{exc.lineno}:{exc.colno}", f"invalid JSON ({exc.msg})"
        ) from None


def dump_json(obj, path=None):
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if path is None:
        return text
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    return text


def _need(obj, key, path):
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaError(path, f"missing field {key!r}")
    return obj[key]


def net_to_json(net):
    maps = []
    for i, src in enumerate(net.ids):
        for j, dst in enumerate(net.ids):
            if i == j:
                continue
            maps.append({
                "from": src,
                "to": dst,
                "matrix": [
                    [net.field.to_json(x) for x in row] for row in net.maps[i][j]
                ],
            })
    return {
        "arrow_types": net.n_types,
        "dimension": net.dim,
        "field": net.field.descriptor(),
        "vertices": [
            {"id": vid, "coords": list(v)}
            for vid, v in zip(net.ids, net.vertices)
        ],
        "maps": maps,
    }


def net_from_json(obj, field_override=None):
    n_types = _need(obj, "arrow_types", "net")
    dim = _need(obj, "dimension", "net")
    if not isinstance(n_types, int) or n_types < 1:
        raise SchemaError("net.arrow_types", "must be a positive integer")
    if not isinstance(dim, int) or dim < 1:
        raise SchemaError("net.dimension", "must be a positive integer")
    try:
        fld = field_override or field_from_descriptor(_need(obj, "field", "net"))
    except FieldError as exc:
        raise SchemaError("net.field", str(exc)) from None
    raw_vertices = _need(obj, "vertices", "net")
    entries = []
    for k, entry in enumerate(raw_vertices):
        vid = _need(entry, "id", f"net.vertices[{k}]")
        coords = _need(entry, "coords", f"net.vertices[{k}]")
        if len(coords) != n_types:
            raise SchemaError(
                f"net.vertices[{k}].coords", f"expected {n_types} entries"
            )
        vertex = quiver.normalize(tuple(int(c) for c in coords))
        if vertex != tuple(coords):
            raise SchemaError(
                f"net.vertices[{k}].coords", "coordinates must be min-0 normalized"
            )
        entries.append((vertex, str(vid)))
    if len({vid for _, vid in entries}) != len(entries):
        raise SchemaError("net.vertices", "ids must be distinct")
    if len({v for v, _ in entries}) != len(entries):
        raise SchemaError("net.vertices", "coordinates must be distinct")
    entries.sort()
    vertices = tuple(v for v, _ in entries)
    ids = tuple(vid for _, vid in entries)
    index = {vid: i for i, vid in enumerate(ids)}
    n = len(ids)
    ident = identity(fld, dim)
    maps = [[None] * n for _ in range(n)]
    for i in range(n):
        maps[i][i] = ident
    for k, entry in enumerate(_need(obj, "maps", "net")):
        src = _need(entry, "from", f"net.maps[{k}]")
        dst = _need(entry, "to", f"net.maps[{k}]")
        if src not in index or dst not in index:
            raise SchemaError(f"net.maps[{k}]", f"unknown vertex id {src!r} or {dst!r}")
        if src == dst:
            raise SchemaError(f"net.maps[{k}]", "self maps are implicit identities")
        matrix = _need(entry, "matrix", f"net.maps[{k}]")
        if len(matrix) != dim or any(len(row) != dim for row in matrix):
            raise SchemaError(f"net.maps[{k}].matrix", f"expected {dim}x{dim}")
        try:
            parsed = tuple(tuple(fld.parse(x) for x in row) for row in matrix)
        except FieldError as exc:
            raise SchemaError(f"net.maps[{k}].matrix", str(exc)) from None
        maps[index[src]][index[dst]] = parsed
    for i in range(n):
        for j in range(n):
            if maps[i][j] is None:
                raise SchemaError(
                    "net.maps", f"missing map {ids[i]!r} -> {ids[j]!r}"
                )
    try:
        return NetPresentation(
            fld, n_types, dim, vertices, ids, tuple(tuple(row) for row in maps)
        )
    except ValueError as exc:
        raise SchemaError("net", str(exc)) from None


def trop_to_json(spec):
    return spec.to_json()


def trop_from_json(obj):
    n_types = _need(obj, "arrow_types", "trop")
    forms_raw = _need(obj, "forms", "trop")
    if not isinstance(n_types, int) or n_types < 1:
        raise SchemaError("trop.arrow_types", "must be a positive integer")
    forms = []
    for k, entry in enumerate(forms_raw):
        offsets = _need(entry, "offsets", f"trop.forms[{k}]")
        if len(offsets) != n_types:
            raise SchemaError(
                f"trop.forms[{k}].offsets", f"expected {n_types} entries"
            )
        try:
            forms.append(
                TropicalForm(tuple(None if o is None else int(o) for o in offsets))
            )
        except ValueError as exc:
            raise SchemaError(f"trop.forms[{k}]", str(exc)) from None
    try:
        return TropicalSpec(n_types, tuple(forms))
    except ValueError as exc:
        raise SchemaError("trop", str(exc)) from None


def graph_from_json(obj):
    n = _need(obj, "vertices", "graph")
    edges = _need(obj, "edges", "graph")
    try:
        return Graph(int(n), tuple((int(i), int(j)) for i, j in edges))
    except ValueError as exc:
        raise SchemaError("graph", str(exc)) from None


def graph_to_json(graph):
    return graph.to_json()


def setfn_from_json(obj):
    try:
        return SetFn.from_json(obj)
    except (KeyError, ValueError) as exc:
        raise SchemaError("setfn", str(exc)) from None


def vertex_set_from_json(obj):
    """Vertex sets are arrays of integer arrays."""
    if isinstance(obj, dict) and "vertices" in obj:
        obj = obj["vertices"]
    if not isinstance(obj, list) or not obj:
        raise SchemaError("vertices", "expected a nonempty array of integer arrays")
    verts = []
    for k, row in enumerate(obj):
        try:
            verts.append(tuple(int(x) for x in row))
        except (TypeError, ValueError):
            raise SchemaError(f"vertices[{k}]", "expected an integer array") from None
    if len({len(v) for v in verts}) != 1:
        raise SchemaError("vertices", "all vertices need the same length")
    return [quiver.normalize(v) for v in verts]


def parse_divisor(text, n):
    parts = [p.strip() for p in str(text).split(",")]
    if len(parts) != n:
        raise SchemaError("divisor", f"expected {n} comma-separated integers")
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise SchemaError("divisor", "entries must be integers") from None
