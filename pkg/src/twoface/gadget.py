"""Reduction from vertex-disjoint paths in G to arc-disjoint paths in D.

Every terminal gets a pendant vertex drawn inside its face, the pairs are
reindexed into clockwise order, and every other vertex of degree ``d >= 2``
becomes a clockwise ring of ``d`` zero-length arcs. In the resulting graph D
all non-terminal vertices have degree three, so arc-disjoint paths are
vertex-disjoint.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, replace
from functools import cached_property

from .errors import NotDisjoint, OrderInfeasible
from .planar import (
    Arc,
    CheckedInstance,
    Embedding,
    PlanarGraph,
    build_embedding,
)
from .solution import Solution

ORIGINAL = 0
PENDANT = 1
RING = 2


def attach_pendants(ci: CheckedInstance) -> CheckedInstance:
    """Give every terminal a degree-one stand-in.

    Pair ``i`` gains vertices ``s'_i`` and ``t'_i`` and zero-length arcs
    ``(s'_i, s_i)`` inside face s and ``(t_i, t'_i)`` inside face t. New
    vertices and arcs are appended, so existing ids stay valid. Each pendant
    enters the rotation of its terminal at the first corner of the face (in
    trace order) located at that terminal.
    """
    if ci.pendants is not None:
        return ci
    g, emb, k = ci.graph, ci.embedding, ci.k
    if k == 0:
        return replace(ci, pendants=())
    n = g.n_vertices
    arcs = list(g.arcs)
    rotation = [list(r) for r in g.rotation]
    # corner dart -> darts to insert right after it, in rotation order
    inserts: dict[int, list[int]] = defaultdict(list)
    pendants = []

    def corner_after(face: int, v: int) -> int:
        for d in emb.faces[face]:
            if g.head(d) == v:
                return d ^ 1
        raise AssertionError(f"vertex {v} is not on face {face}")

    s_arcs, t_arcs = [], []
    for i, (s, t) in enumerate(ci.pairs):
        s_new, t_new = n + 2 * i, n + 2 * i + 1
        ps = len(arcs)
        arcs.append(Arc(s_new, s, 0))
        pt = len(arcs)
        arcs.append(Arc(t, t_new, 0))
        s_arcs.append((s, ps))
        t_arcs.append((t, pt))
        pendants.append((ps, pt))
    # Clockwise order around s is the reverse of its trace, so pendants that
    # share a corner on s are inserted in reverse pair order.
    for s, ps in reversed(s_arcs):
        inserts[corner_after(ci.face_s, s)].append(2 * ps + 1)
    for t, pt in t_arcs:
        inserts[corner_after(ci.face_t, t)].append(2 * pt)

    new_rotation = []
    for v in range(n):
        rot = []
        for d in rotation[v]:
            rot.append(d)
            rot.extend(inserts.get(d, ()))
        new_rotation.append(tuple(rot))
    for ps, pt in pendants:
        new_rotation.append((2 * ps,))
        new_rotation.append((2 * pt + 1,))

    graph = PlanarGraph(n + 2 * k, tuple(arcs), tuple(new_rotation))
    emb2 = build_embedding(graph)
    fs = emb2.resolve(ci.source.face_s)
    ft = emb2.resolve(ci.source.face_t)
    for ps, pt in pendants:
        assert emb2.face_of[2 * ps] == emb2.face_of[2 * ps + 1] == fs
        assert emb2.face_of[2 * pt] == emb2.face_of[2 * pt + 1] == ft
    return replace(
        ci,
        graph=graph,
        embedding=emb2,
        face_s=fs,
        face_t=ft,
        pairs=tuple((n + 2 * i, n + 2 * i + 1) for i in range(k)),
        pendants=tuple(pendants),
    )


def clockwise_positions(emb: Embedding, face: int, darts: list[int], *, inner: bool) -> list[int]:
    """Clockwise rank of each dart along ``face``.

    Faces are traced with the face on the left, which runs counter-clockwise
    around the inner face s and clockwise around the outer face t.
    """
    trace = emb.faces[face]
    index = {d: i for i, d in enumerate(trace)}
    pos = [index[d] for d in darts]
    if inner:
        pos = [(-p) % len(trace) for p in pos]
    return pos


def order_terminals(ci: CheckedInstance) -> CheckedInstance:
    """Reindex the pairs so both terminal sequences run clockwise.

    The new pair 0 is the old pair 0; the rest follow clockwise around s.

    Raises:
        OrderInfeasible: the t-terminals are not in the same cyclic order,
            so vertex-disjoint paths cannot exist.
    """
    if ci.pendants is None:
        raise ValueError("attach pendants before ordering terminals")
    k = ci.k
    if k <= 1:
        return ci
    emb = ci.embedding
    cs = clockwise_positions(emb, ci.face_s, [2 * ps for ps, _ in ci.pendants], inner=True)
    ct = clockwise_positions(emb, ci.face_t, [2 * pt for _, pt in ci.pendants], inner=False)
    n_s = len(emb.faces[ci.face_s])
    perm = sorted(range(k), key=lambda i: (cs[i] - cs[0]) % n_s)
    seq = [ct[i] for i in perm]
    descents = sum(seq[j] > seq[(j + 1) % k] for j in range(k))
    if descents != 1:
        raise OrderInfeasible("terminals on s and t are not in the same clockwise order")
    return replace(
        ci,
        pairs=tuple(ci.pairs[i] for i in perm),
        pendants=tuple(ci.pendants[i] for i in perm),
        order=tuple(ci.order[i] for i in perm),
    )


@dataclass(frozen=True)
class RingGraph:
    """The graph D and the bookkeeping that maps it back to G.

    ``arc_kind[a]`` is ORIGINAL, PENDANT or RING; ``arc_origin[a]`` is the arc
    id in the pendant-augmented graph for the first two kinds and the replaced
    vertex for RING arcs. Arc ids below ``base.graph.n_arcs`` coincide with
    the ids of the pendant-augmented graph.
    """

    graph: PlanarGraph
    embedding: Embedding
    base: CheckedInstance
    n_input_arcs: int
    arc_kind: tuple[int, ...]
    arc_origin: tuple[int, ...]
    vertex_origin: tuple[int, ...]
    rings: tuple[tuple[int, ...], ...]
    sources: tuple[int, ...]
    sinks: tuple[int, ...]
    source_arcs: tuple[int, ...]
    sink_arcs: tuple[int, ...]
    face_s: int
    face_t: int

    @property
    def k(self) -> int:
        return len(self.sources)

    def lengths(self) -> list[int]:
        return [a.length for a in self.graph.arcs]

    @cached_property
    def tails(self) -> list[int]:
        return [a.src for a in self.graph.arcs]

    @cached_property
    def heads(self) -> list[int]:
        return [a.dst for a in self.graph.arcs]

    @cached_property
    def out_arcs(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.graph.n_vertices)]
        for a, arc in enumerate(self.graph.arcs):
            out[arc.src].append(a)
        return out

    @cached_property
    def in_arcs(self) -> list[list[int]]:
        inc: list[list[int]] = [[] for _ in range(self.graph.n_vertices)]
        for a, arc in enumerate(self.graph.arcs):
            inc[arc.dst].append(a)
        return inc


def build_ring_graph(ci: CheckedInstance) -> RingGraph:
    """Replace every non-terminal vertex of degree ``d >= 2`` by a clockwise
    ring of ``d`` zero-length arcs.

    Ring vertex ``j`` of ``v`` takes the ``j``-th arc-end of ``v``'s rotation,
    and ring arc ``j`` runs from ring vertex ``j`` to ring vertex ``j + 1``.
    Non-terminal vertices of degree one stay as they are; no flow can pass
    through them.
    """
    if ci.pendants is None:
        raise ValueError("attach pendants before building the ring graph")
    g = ci.graph
    terminals = {v for pair in ci.pairs for v in pair}
    n_input_arcs = ci.source.graph.n_arcs

    at: dict[int, int] = {}  # dart of g -> D vertex carrying that arc-end
    rings: list[tuple[int, ...]] = []
    vertex_origin: list[int] = []
    ring_of: list[tuple[int, ...]] = []
    for v in range(g.n_vertices):
        rot = g.rotation[v]
        if v in terminals or len(rot) <= 1:
            w = len(vertex_origin)
            vertex_origin.append(v)
            for d in rot:
                at[d] = w
            ring_of.append((w,))
        else:
            ids = tuple(range(len(vertex_origin), len(vertex_origin) + len(rot)))
            vertex_origin.extend([v] * len(rot))
            for d, w in zip(rot, ids):
                at[d] = w
            ring_of.append(ids)

    arcs = [Arc(at[2 * a], at[2 * a + 1], arc.length) for a, arc in enumerate(g.arcs)]
    kind = [ORIGINAL if a < n_input_arcs else PENDANT for a in range(g.n_arcs)]
    origin = list(range(g.n_arcs))
    rotation: list[tuple[int, ...]] = [()] * len(vertex_origin)
    for v in range(g.n_vertices):
        rot = g.rotation[v]
        ids = ring_of[v]
        if len(ids) == 1:
            rotation[ids[0]] = rot
            continue
        d = len(ids)
        base = len(arcs)
        for j in range(d):
            arcs.append(Arc(ids[j], ids[(j + 1) % d], 0))
            kind.append(RING)
            origin.append(v)
        for j in range(d):
            rotation[ids[j]] = (rot[j], 2 * (base + j), 2 * (base + (j - 1) % d) + 1)
        rings.append(tuple(range(base, base + d)))

    dgraph = PlanarGraph(len(vertex_origin), tuple(arcs), tuple(rotation))
    emb = build_embedding(dgraph)
    pend = ci.pendants
    return RingGraph(
        graph=dgraph,
        embedding=emb,
        base=ci,
        n_input_arcs=n_input_arcs,
        arc_kind=tuple(kind),
        arc_origin=tuple(origin),
        vertex_origin=tuple(vertex_origin),
        rings=tuple(rings),
        sources=tuple(at[2 * ps] for ps, _ in pend),
        sinks=tuple(at[2 * pt + 1] for _, pt in pend),
        source_arcs=tuple(ps for ps, _ in pend),
        sink_arcs=tuple(pt for _, pt in pend),
        face_s=emb.resolve(ci.source.face_s),
        face_t=emb.resolve(ci.source.face_t),
    )


def _remove_loops(start: int, steps: list[tuple[int, int]]) -> list[int]:
    verts = [start]
    arcs: list[int] = []
    pos = {start: 0}
    for a, v in steps:
        idx = pos.get(v)
        if idx is None:
            pos[v] = len(verts)
            verts.append(v)
            arcs.append(a)
        else:
            for w in verts[idx + 1 :]:
                del pos[w]
            del verts[idx + 1 :]
            del arcs[idx:]
    return arcs


def project_solution(rg: RingGraph, d_paths: list[list[int]]) -> Solution:
    """Map paths of D, one per (reindexed) pair, back to paths of G.

    Ring and pendant arcs are contracted and loops are cut out of the
    resulting walks. Paths come back in the caller's original pair order.

    Raises:
        NotDisjoint: two projected paths share a vertex.
    """
    ci = rg.base
    g = ci.source.graph
    sink_index = {v: j for j, v in enumerate(rg.sinks)}
    k = rg.k
    paths: list[list[int]] = [[] for _ in range(k)]
    pairing = [0] * k
    owner: dict[int, int] = {}
    for i, dpath in enumerate(d_paths):
        if not dpath or dpath[0] != rg.source_arcs[i]:
            raise ValueError(f"path {i} does not start at its source pendant")
        last_head = rg.graph.arcs[dpath[-1]].dst
        if last_head not in sink_index:
            raise ValueError(f"path {i} does not end at a sink pendant")
        start = ci.source.pairs[ci.order[i]][0]
        steps = [
            (rg.arc_origin[a], g.arcs[rg.arc_origin[a]].dst)
            for a in dpath
            if rg.arc_kind[a] == ORIGINAL
        ]
        arcs = _remove_loops(start, steps)
        orig = ci.order[i]
        paths[orig] = arcs
        pairing[orig] = ci.order[sink_index[last_head]]
        for v in [start] + [g.arcs[a].dst for a in arcs]:
            if owner.setdefault(v, orig) != orig:
                raise NotDisjoint(f"paths {owner[v]} and {orig} share vertex {v}")
    total = sum(g.arcs[a].length for p in paths for a in p)
    return Solution(paths=paths, total_length=total, pairing=pairing)
