"""Combinatorial plane embeddings: rotation systems, faces, duals, instances.

Arcs are addressed by integer ids. Each arc ``a`` has two *darts*
(directed arc-sides): ``2*a`` runs from ``src`` to ``dst`` and ``2*a + 1``
runs back. The rotation at a vertex lists the darts leaving it in clockwise
plane order; the dart ``2*a`` stands for the "out" end of ``a`` and
``2*a + 1`` for its "in" end.

Faces are traced with the rule ``next(d) = succ(twin(d))`` where ``succ`` is
the clockwise successor at the head of ``d``. Under this rule a dart's face
is the face on its *left*.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    BadFaceDesignator,
    Disconnected,
    EulerViolation,
    MalformedRotation,
    NegativeLength,
    SameFace,
    SelfLoop,
    TerminalNotOnFace,
)

OUT = "out"
IN = "in"
LEFT = "left"
RIGHT = "right"


class Arc(NamedTuple):
    src: int
    dst: int
    length: int


def twin(d: int) -> int:
    return d ^ 1


def dart_arc(d: int) -> int:
    return d >> 1


def arc_end_to_dart(arc: int, end: str) -> int:
    if end == OUT:
        return 2 * arc
    if end == IN:
        return 2 * arc + 1
    raise MalformedRotation(f"arc-end must be 'out' or 'in', got {end!r}")


def dart_to_arc_end(d: int) -> tuple[int, str]:
    return d >> 1, (IN if d & 1 else OUT)


@dataclass(frozen=True)
class PlanarGraph:
    """A directed graph together with a clockwise rotation system.

    ``rotation[v]`` is the cyclic sequence of darts leaving ``v``.
    """

    n_vertices: int
    arcs: tuple[Arc, ...]
    rotation: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        arcs = tuple(Arc(int(a[0]), int(a[1]), int(a[2])) for a in self.arcs)
        object.__setattr__(self, "arcs", arcs)
        object.__setattr__(self, "rotation", tuple(tuple(r) for r in self.rotation))
        n = self.n_vertices
        for i, (u, v, length) in enumerate(arcs):
            if not (0 <= u < n and 0 <= v < n):
                raise MalformedRotation(f"arc {i} has an endpoint out of range")
            if u == v:
                raise SelfLoop(f"arc {i} is a self-loop at vertex {u}")
            if length < 0:
                raise NegativeLength(i)
        if len(self.rotation) != n:
            raise MalformedRotation("one rotation list per vertex is required")

    @classmethod
    def from_arc_ends(
        cls,
        n_vertices: int,
        arcs: Iterable[Sequence[int]],
        rotation: Iterable[Iterable[tuple[int, str]]],
    ) -> PlanarGraph:
        darts = [tuple(arc_end_to_dart(a, end) for a, end in rot) for rot in rotation]
        return cls(n_vertices, tuple(Arc(*a) for a in arcs), tuple(darts))

    @property
    def n_arcs(self) -> int:
        return len(self.arcs)

    def tail(self, d: int) -> int:
        a = self.arcs[d >> 1]
        return a.dst if d & 1 else a.src

    def head(self, d: int) -> int:
        a = self.arcs[d >> 1]
        return a.src if d & 1 else a.dst

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def rotation_arc_ends(self, v: int) -> list[tuple[int, str]]:
        return [dart_to_arc_end(d) for d in self.rotation[v]]

    def mirrored(self) -> PlanarGraph:
        """The same graph drawn in a mirror: every rotation reversed."""
        return PlanarGraph(self.n_vertices, self.arcs, tuple(r[::-1] for r in self.rotation))


@dataclass(frozen=True)
class Embedding:
    """Faces of a :class:`PlanarGraph`, traced with the face-on-the-left rule."""

    graph: PlanarGraph
    faces: tuple[tuple[int, ...], ...]
    face_of: tuple[int, ...]
    succ: tuple[int, ...]
    pred: tuple[int, ...]

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    def left_face(self, arc: int) -> int:
        return self.face_of[2 * arc]

    def right_face(self, arc: int) -> int:
        return self.face_of[2 * arc + 1]

    def face_next(self, d: int) -> int:
        return self.succ[d ^ 1]

    def face_vertices(self, f: int) -> list[int]:
        """Tails of the darts of face ``f`` in trace order (with repeats)."""
        g = self.graph
        if not self.faces[f] and g.n_vertices == 1:
            return [0]
        return [g.tail(d) for d in self.faces[f]]

    def resolve(self, ref: FaceRef) -> int:
        if not 0 <= ref.arc < self.graph.n_arcs:
            raise BadFaceDesignator(f"face designator names unknown arc {ref.arc}")
        if ref.side == LEFT:
            return self.left_face(ref.arc)
        if ref.side == RIGHT:
            return self.right_face(ref.arc)
        raise BadFaceDesignator(f"side must be 'left' or 'right', got {ref.side!r}")

    def designator(self, f: int) -> FaceRef:
        """A stable (arc, side) name for face ``f``."""
        d = min(self.faces[f])
        return FaceRef(d >> 1, RIGHT if d & 1 else LEFT)


def build_embedding(graph: PlanarGraph) -> Embedding:
    """Trace the faces of ``graph`` and check Euler's formula.

    Raises:
        MalformedRotation: an arc-end is missing, duplicated or misplaced.
        Disconnected: the graph is not connected.
        EulerViolation: the rotation system is not planar.
    """
    n, m = graph.n_vertices, graph.n_arcs
    succ = [-1] * (2 * m)
    pred = [-1] * (2 * m)
    for v, rot in enumerate(graph.rotation):
        for i, d in enumerate(rot):
            if not 0 <= d < 2 * m:
                raise MalformedRotation(f"vertex {v} lists unknown dart {d}")
            if succ[d] != -1:
                raise MalformedRotation(f"arc-end {dart_to_arc_end(d)} appears twice")
            if graph.tail(d) != v:
                raise MalformedRotation(f"arc-end {dart_to_arc_end(d)} listed at wrong vertex {v}")
            nxt = rot[(i + 1) % len(rot)]
            succ[d] = nxt
            pred[nxt] = d
    missing = [d for d in range(2 * m) if succ[d] == -1]
    if missing:
        raise MalformedRotation(f"arc-end {dart_to_arc_end(missing[0])} missing from rotations")

    if n == 0:
        raise Disconnected("graph has no vertices")
    seen = [False] * n
    seen[0] = True
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for d in graph.rotation[v]:
            w = graph.head(d)
            if not seen[w]:
                seen[w] = True
                queue.append(w)
    if not all(seen):
        raise Disconnected(f"vertex {seen.index(False)} is unreachable from vertex 0")

    face_of = [-1] * (2 * m)
    faces: list[tuple[int, ...]] = []
    for start in range(2 * m):
        if face_of[start] != -1:
            continue
        f = len(faces)
        cycle = []
        d = start
        while face_of[d] == -1:
            face_of[d] = f
            cycle.append(d)
            d = succ[d ^ 1]
        if d != start:
            raise MalformedRotation("face tracing did not close up")
        faces.append(tuple(cycle))
    if m == 0:
        faces.append(())

    if n - m + len(faces) != 2:
        raise EulerViolation(
            f"V - E + F = {n} - {m} + {len(faces)} = {n - m + len(faces)}, expected 2"
        )
    return Embedding(graph, tuple(faces), tuple(face_of), tuple(succ), tuple(pred))


@dataclass(frozen=True)
class DualGraph:
    """One vertex per face, one edge per primal arc.

    ``edges[a] = (tail, head)`` is the dual of arc ``a`` oriented so that it
    crosses ``a`` from right to left. The reversed orientation is the dual of
    the reversed arc.
    """

    n_vertices: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[tuple[int, int], ...], ...]

    def primal_arc(self, edge: int) -> int:
        return edge

    def dual_edge(self, arc: int) -> int:
        return arc


def build_dual(emb: Embedding) -> DualGraph:
    """Dual graph; ``adjacency[f]`` holds ``(arc, +1)`` when ``f`` is the tail
    of the dual edge and ``(arc, -1)`` when it is the head."""
    edges = []
    adj: list[list[tuple[int, int]]] = [[] for _ in range(emb.n_faces)]
    for a in range(emb.graph.n_arcs):
        r, l = emb.right_face(a), emb.left_face(a)
        edges.append((r, l))
        adj[r].append((a, 1))
        adj[l].append((a, -1))
    return DualGraph(emb.n_faces, tuple(edges), tuple(tuple(x) for x in adj))


class FaceRef(NamedTuple):
    """Names a face as one side of an arc."""

    arc: int
    side: str

    def flipped(self) -> FaceRef:
        return FaceRef(self.arc, RIGHT if self.side == LEFT else LEFT)


@dataclass(frozen=True)
class Instance:
    graph: PlanarGraph
    face_s: FaceRef
    face_t: FaceRef
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "face_s", FaceRef(*self.face_s))
        object.__setattr__(self, "face_t", FaceRef(*self.face_t))
        object.__setattr__(self, "pairs", tuple((int(s), int(t)) for s, t in self.pairs))

    @property
    def k(self) -> int:
        return len(self.pairs)

    def mirrored(self) -> Instance:
        """Mirror image: rotations reversed, so left and right sides swap."""
        return Instance(
            self.graph.mirrored(), self.face_s.flipped(), self.face_t.flipped(), self.pairs
        )


@dataclass(frozen=True)
class CheckedInstance:
    """An instance whose invariants hold, with its faces resolved.

    After :func:`twoface.gadget.attach_pendants`, ``pairs`` refer to the
    pendant vertices and ``pendants[i]`` holds the ids of the two pendant arcs
    of pair ``i``. ``order[i]`` is the index of pair ``i`` in the caller's
    original numbering.
    """

    graph: PlanarGraph
    embedding: Embedding
    face_s: int
    face_t: int
    pairs: tuple[tuple[int, int], ...]
    source: Instance
    pendants: tuple[tuple[int, int], ...] | None = None
    order: tuple[int, ...] = field(default=())

    @property
    def k(self) -> int:
        return len(self.pairs)


def validate_instance(inst: Instance) -> CheckedInstance:
    """Check the instance invariants and resolve the two face designators.

    Raises:
        NegativeLength, SameFace, TerminalNotOnFace, BadFaceDesignator, and
        the embedding errors of :func:`build_embedding`.
    """
    for i, arc in enumerate(inst.graph.arcs):
        if arc.length < 0:
            raise NegativeLength(i)
    emb = build_embedding(inst.graph)
    fs = emb.resolve(inst.face_s)
    ft = emb.resolve(inst.face_t)
    if fs == ft:
        raise SameFace("faces s and t coincide")
    on_s = set(emb.face_vertices(fs))
    on_t = set(emb.face_vertices(ft))
    n = inst.graph.n_vertices
    for i, (s, t) in enumerate(inst.pairs):
        if not 0 <= s < n or s not in on_s:
            raise TerminalNotOnFace(i, "s")
        if not 0 <= t < n or t not in on_t:
            raise TerminalNotOnFace(i, "t")
    return CheckedInstance(
        graph=inst.graph,
        embedding=emb,
        face_s=fs,
        face_t=ft,
        pairs=inst.pairs,
        source=inst,
        order=tuple(range(inst.k)),
    )
