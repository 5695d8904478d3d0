"""JSON instance and solution documents, and the grid instance generator.

Instance document (``format: "twoface-instance"``, ``version: 1``)::

    {
      "format": "twoface-instance", "version": 1, "directed": true,
      "vertices": [{"id": 0, "rotation": [[0, "out"], [3, "in"]]}, ...],
      "arcs": [{"id": 0, "src": 0, "dst": 1, "length": 4}, ...],
      "face_s": {"arc": 0, "side": "left"},
      "face_t": {"arc": 0, "side": "right"},
      "terminals": [[0, 2], ...]
    }

Ids are dense integers from 0 and must appear in order. Rotations list
arc-ends clockwise. With ``"directed": false`` the ``arcs`` are undirected
edges: edge ``e`` becomes arcs ``2e`` (src to dst) and ``2e + 1`` (back), a
rotation entry ``[e, "out"]`` or ``[e, "in"]`` names the edge's end at its
src or dst, and the face sides refer to the src-to-dst direction.

Solution document (``format: "twoface-solution"``)::

    {
      "format": "twoface-solution", "version": 1,
      "status": "optimal" | "infeasible", "reason": null | "Order" | ...,
      "mode": "two-face" | "fixed-winding",
      "total_length": 3, "paths": [[0, 1]], "pairing": [0],
      "metadata": {"seed_u": null, "rotations": 0, "winding": 0, ...}
    }
"""

from __future__ import annotations

import json
import random
from pathlib import Path
from typing import Any

import jsonschema

from .errors import BadParams, FormatError
from .planar import (
    IN,
    LEFT,
    OUT,
    RIGHT,
    Arc,
    FaceRef,
    Instance,
    PlanarGraph,
    arc_end_to_dart,
    build_embedding,
    dart_to_arc_end,
)
from .solution import Solution

VERSION = 1

_ARC_END = {
    "type": "array",
    "prefixItems": [{"type": "integer", "minimum": 0}, {"enum": [OUT, IN]}],
    "minItems": 2,
    "maxItems": 2,
}
_FACE = {
    "type": "object",
    "required": ["arc", "side"],
    "properties": {"arc": {"type": "integer", "minimum": 0}, "side": {"enum": [LEFT, RIGHT]}},
}

INSTANCE_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["format", "version", "vertices", "arcs", "face_s", "face_t", "terminals"],
    "properties": {
        "format": {"const": "twoface-instance"},
        "version": {"const": VERSION},
        "directed": {"type": "boolean"},
        "vertices": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "rotation"],
                "properties": {
                    "id": {"type": "integer", "minimum": 0},
                    "rotation": {"type": "array", "items": _ARC_END},
                },
            },
        },
        "arcs": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "src", "dst", "length"],
                "properties": {
                    "id": {"type": "integer", "minimum": 0},
                    "src": {"type": "integer", "minimum": 0},
                    "dst": {"type": "integer", "minimum": 0},
                    "length": {"type": "integer", "minimum": 0, "maximum": 2**63 - 1},
                },
            },
        },
        "face_s": _FACE,
        "face_t": _FACE,
        "terminals": {
            "type": "array",
            "items": {
                "type": "array",
                "items": {"type": "integer", "minimum": 0},
                "minItems": 2,
                "maxItems": 2,
            },
        },
    },
}

SOLUTION_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["format", "version", "status", "total_length", "paths"],
    "properties": {
        "format": {"const": "twoface-solution"},
        "version": {"const": VERSION},
        "status": {"enum": ["optimal", "infeasible"]},
        "reason": {"type": ["string", "null"]},
        "mode": {"enum": ["two-face", "fixed-winding"]},
        "total_length": {"type": "integer"},
        "paths": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
        "pairing": {"type": "array", "items": {"type": "integer"}},
        "metadata": {"type": "object"},
    },
}


def _validate(doc: Any, schema: dict[str, Any]) -> None:
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path)
        raise FormatError(f"{path or '<root>'}: {exc.message}") from None


def _check_ids(items: list[dict], what: str) -> None:
    for i, item in enumerate(items):
        if item["id"] != i:
            raise FormatError(f"{what} ids must be 0, 1, 2, ... in order; got {item['id']} at {i}")


def instance_from_dict(doc: dict[str, Any]) -> Instance:
    """Parse an instance document, expanding undirected edges if needed."""
    _validate(doc, INSTANCE_SCHEMA)
    _check_ids(doc["vertices"], "vertex")
    _check_ids(doc["arcs"], "arc")
    n = len(doc["vertices"])
    raw = [(a["src"], a["dst"], a["length"]) for a in doc["arcs"]]
    fs = FaceRef(doc["face_s"]["arc"], doc["face_s"]["side"])
    ft = FaceRef(doc["face_t"]["arc"], doc["face_t"]["side"])
    if doc.get("directed", True):
        rotation = [
            tuple(arc_end_to_dart(a, end) for a, end in v["rotation"]) for v in doc["vertices"]
        ]
        arcs = [Arc(*r) for r in raw]
    else:
        arcs = []
        for u, v, length in raw:
            arcs += [Arc(u, v, length), Arc(v, u, length)]
        rotation = []
        for v in doc["vertices"]:
            rot: list[int] = []
            for e, end in v["rotation"]:
                f, g = 2 * e, 2 * e + 1
                rot += [2 * f, 2 * g + 1] if end == OUT else [2 * g, 2 * f + 1]
            rotation.append(tuple(rot))
        fs = FaceRef(2 * fs.arc + (fs.side == RIGHT), LEFT)
        ft = FaceRef(2 * ft.arc + (ft.side == RIGHT), LEFT)
    for i, a in enumerate(arcs):
        for end in (a.src, a.dst):
            if end >= n:
                raise FormatError(f"arc {i} references unknown vertex {end}")
    graph = PlanarGraph(n, tuple(arcs), tuple(rotation))
    return Instance(graph, fs, ft, tuple(tuple(p) for p in doc["terminals"]))


def instance_to_dict(inst: Instance) -> dict[str, Any]:
    g = inst.graph
    return {
        "format": "twoface-instance",
        "version": VERSION,
        "directed": True,
        "vertices": [
            {"id": v, "rotation": [list(dart_to_arc_end(d)) for d in g.rotation[v]]}
            for v in range(g.n_vertices)
        ],
        "arcs": [
            {"id": i, "src": a.src, "dst": a.dst, "length": a.length} for i, a in enumerate(g.arcs)
        ],
        "face_s": {"arc": inst.face_s.arc, "side": inst.face_s.side},
        "face_t": {"arc": inst.face_t.arc, "side": inst.face_t.side},
        "terminals": [list(p) for p in inst.pairs],
    }


def solution_to_dict(sol: Solution) -> dict[str, Any]:
    meta = {}
    for key, val in sol.metadata.items():
        if isinstance(val, dict):
            val = {str(k): v for k, v in val.items()}
        meta[key] = val
    return {
        "format": "twoface-solution",
        "version": VERSION,
        "status": sol.status,
        "reason": sol.reason,
        "mode": sol.mode,
        "total_length": sol.total_length,
        "paths": [list(p) for p in sol.paths],
        "pairing": list(sol.pairing),
        "metadata": meta,
    }


def solution_from_dict(doc: dict[str, Any]) -> Solution:
    _validate(doc, SOLUTION_SCHEMA)
    return Solution(
        status=doc["status"],
        reason=doc.get("reason"),
        paths=[list(p) for p in doc["paths"]],
        total_length=doc["total_length"],
        pairing=list(doc.get("pairing", range(len(doc["paths"])))),
        mode=doc.get("mode", "two-face"),
        metadata=dict(doc.get("metadata", {})),
    )


def _load(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not valid JSON ({exc})") from None


def dumps(doc: dict[str, Any]) -> str:
    """JSON text with one list item (vertex, arc, path, ...) per line."""
    lines = []
    for key, val in doc.items():
        if isinstance(val, list) and val and isinstance(val[0], (list, dict)):
            items = ",\n".join("  " + json.dumps(item) for item in val)
            lines.append(f"{json.dumps(key)}: [\n{items}\n ]")
        else:
            lines.append(f"{json.dumps(key)}: {json.dumps(val)}")
    return "{\n " + ",\n ".join(lines) + "\n}\n"


def _dump(doc: dict[str, Any], path: str | Path) -> None:
    Path(path).write_text(dumps(doc), encoding="utf-8")


def read_instance(path: str | Path) -> Instance:
    return instance_from_dict(_load(path))


def write_instance(inst: Instance, path: str | Path) -> None:
    _dump(instance_to_dict(inst), path)


def read_solution(path: str | Path) -> Solution:
    return solution_from_dict(_load(path))


def write_solution(sol: Solution, path: str | Path) -> None:
    _dump(solution_to_dict(sol), path)


def grid_graph(rows: int, cols: int, lengths: list[int]) -> PlanarGraph:
    """Grid with every edge doubled into two opposite arcs.

    Vertex ``(r, c)`` has id ``r * cols + c`` and row 0 is drawn on top.
    Edge ``e`` yields arcs ``2e`` (towards the larger vertex id) and ``2e + 1``.
    """
    edges: list[tuple[int, int]] = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    index = {e: i for i, e in enumerate(edges)}
    arcs = []
    for i, (u, v) in enumerate(edges):
        arcs.append(Arc(u, v, lengths[2 * i]))
        arcs.append(Arc(v, u, lengths[2 * i + 1]))
    rotation = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            rot: list[int] = []
            # clockwise: north, east, south, west
            for dr, dc in ((-1, 0), (0, 1), (1, 0), (0, -1)):
                rr, cc = r + dr, c + dc
                if not (0 <= rr < rows and 0 <= cc < cols):
                    continue
                w = rr * cols + cc
                e = index[(min(v, w), max(v, w))]
                f, g = 2 * e, 2 * e + 1
                rot += [2 * f, 2 * g + 1] if v < w else [2 * g, 2 * f + 1]
            rotation.append(tuple(rot))
    return PlanarGraph(rows * cols, tuple(arcs), tuple(rotation))


def generate_grid_instance(
    rows: int,
    cols: int,
    k: int,
    seed: int = 0,
    length_range: tuple[int, int] = (0, 9),
    hole: tuple[int, int] | None = None,
) -> Instance:
    """Random instance on a doubled grid.

    Face s is the grid cell whose top-left corner is ``hole`` (default: the
    cell nearest the centre) and face t is the outer face. The k terminals on
    each face are distinct vertices listed clockwise and matched with a
    random cyclic offset. Arc lengths are uniform integers in
    ``length_range``.

    Raises:
        BadParams: grid smaller than 2x2, k outside ``[0, min(rows, cols, 4)]``
            or not enough distinct boundary vertices.
    """
    lo, hi = length_range
    if rows < 2 or cols < 2:
        raise BadParams("grid needs at least 2 rows and 2 columns")
    if not 0 <= k <= min(rows, cols, 4):
        raise BadParams(f"k must lie in [0, {min(rows, cols, 4)}]")
    if lo < 0 or hi < lo:
        raise BadParams("length range must satisfy 0 <= lo <= hi")
    rng = random.Random(seed)
    n_edges = rows * (cols - 1) + cols * (rows - 1)
    lengths = [rng.randint(lo, hi) for _ in range(2 * n_edges)]
    graph = grid_graph(rows, cols, lengths)
    hr, hc = hole if hole is not None else ((rows - 2) // 2, (cols - 2) // 2)
    if not (0 <= hr < rows - 1 and 0 <= hc < cols - 1):
        raise BadParams("hole must be the top-left corner of a grid cell")

    def arc_between(u: int, v: int) -> int:
        for d in graph.rotation[u]:
            if d % 2 == 0 and graph.arcs[d >> 1].dst == v:
                return d >> 1
        raise AssertionError

    top = hr * cols + hc
    face_s = FaceRef(arc_between(top + 1, top), LEFT)
    face_t = FaceRef(arc_between(0, 1), LEFT)
    emb = build_embedding(graph)
    s_cycle = list(reversed(emb.face_vertices(emb.resolve(face_s))))
    t_cycle = emb.face_vertices(emb.resolve(face_t))
    s_pick = sorted(rng.sample(range(len(s_cycle)), k))
    s_terms = [s_cycle[i] for i in s_pick]
    t_avail = [i for i, v in enumerate(t_cycle) if v not in s_terms]
    if len(t_avail) < k:
        raise BadParams("not enough distinct vertices on the outer face")
    t_pick = sorted(rng.sample(t_avail, k))
    t_terms = [t_cycle[i] for i in t_pick]
    shift = rng.randrange(k) if k else 0
    pairs = tuple((s_terms[i], t_terms[(i + shift) % k]) for i in range(k))
    return Instance(graph, face_s, face_t, pairs)
