"""Integer flows on the ring graph D, winding numbers and augmentation.

A flow is a 0/1 vector over the arcs of D. Its residual graph keeps every
empty arc and reverses every full one. Length functions are plain lists of
ints over the arcs of D; the length of a reversed arc is the negated length.
"""

from __future__ import annotations

import heapq
import random
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable

from .errors import Infeasible, PotentialViolation
from .gadget import RingGraph
from .planar import build_dual

Observer = Callable[..., None]


@dataclass(frozen=True)
class WindingSystem:
    """A fixed dual path U from s* to t* and the crossing vector u.

    ``steps[j] = (arc, sign)``: step ``j`` of U crosses ``arc``; ``sign`` is
    ``u(arc)``, +1 when the arc crosses U from left to right.
    """

    faces: tuple[int, ...]
    steps: tuple[tuple[int, int], ...]
    u: tuple[int, ...]
    k: int
    m_s: int
    m_t: int

    @property
    def m(self) -> int:
        return self.m_s - self.m_t

    def crossed_arcs(self) -> list[int]:
        return [a for a, _ in self.steps]


def _dual_bfs(rg: RingGraph, seed: int | None) -> tuple[list[int], list[int]]:
    emb = rg.embedding
    dual = build_dual(emb)
    rng = random.Random(seed) if seed is not None else None
    parent: dict[int, tuple[int, int]] = {rg.face_s: (-1, -1)}
    queue = deque([rg.face_s])
    while queue:
        f = queue.popleft()
        if f == rg.face_t:
            break
        nbrs = list(dual.adjacency[f])
        if rng is not None:
            rng.shuffle(nbrs)
        for a, sign in nbrs:
            tail, head = dual.edges[a]
            if tail == head:
                continue
            g = head if sign == 1 else tail
            if g not in parent:
                parent[g] = (f, a)
                queue.append(g)
    faces, arcs = [rg.face_t], []
    f = rg.face_t
    while f != rg.face_s:
        f, a = parent[f]
        faces.append(f)
        arcs.append(a)
    return faces[::-1], arcs[::-1]


def build_winding_system(rg: RingGraph, seed: int | None = None) -> WindingSystem:
    """Choose U by breadth-first search in the dual and locate ``m_s``, ``m_t``.

    Ties are broken by arc id; a ``seed`` shuffles the neighbour order instead.
    """
    emb = rg.embedding
    faces, arcs = _dual_bfs(rg, seed)
    u = [0] * rg.graph.n_arcs
    steps = []
    for j, a in enumerate(arcs):
        sign = 1 if faces[j] == emb.right_face(a) else -1
        u[a] = sign
        steps.append((a, sign))

    k = rg.k
    m_s = m_t = k
    if k >= 2:
        src = {a: i for i, a in enumerate(rg.source_arcs)}
        snk = {a: i for i, a in enumerate(rg.sink_arcs)}

        def side_dart(a: int, face: int) -> int:
            return 2 * a if emb.left_face(a) == face else 2 * a + 1

        # clockwise around s is backwards along its trace
        trace = emb.faces[rg.face_s]
        i0 = trace.index(side_dart(arcs[0], rg.face_s))
        for step in range(1, len(trace) + 1):
            j = src.get(trace[(i0 - step) % len(trace)] >> 1)
            if j is not None:
                m_s = j if j else k
                break
        trace = emb.faces[rg.face_t]
        i0 = trace.index(side_dart(arcs[-1], rg.face_t))
        for step in range(1, len(trace) + 1):
            j = snk.get(trace[(i0 + step) % len(trace)] >> 1)
            if j is not None:
                m_t = j if j else k
                break
    return WindingSystem(tuple(faces), tuple(steps), tuple(u), k, m_s, m_t)


def winding_number(darts: Iterable[int], ws: WindingSystem) -> int:
    """Winding number of a signed arc multiset given as darts
    (``2a`` forward, ``2a + 1`` reversed)."""
    u = ws.u
    return sum(-u[d >> 1] if d & 1 else u[d >> 1] for d in darts)


def length_of(darts: Iterable[int], kappa: list[int]) -> int:
    return sum(-kappa[d >> 1] if d & 1 else kappa[d >> 1] for d in darts)


@dataclass
class IntegerFlow:
    x: list[int]
    value: int = 0
    winding: int = 0

    @classmethod
    def zero(cls, rg: RingGraph) -> IntegerFlow:
        return cls([0] * rg.graph.n_arcs)

    def copy(self) -> IntegerFlow:
        return IntegerFlow(list(self.x), self.value, self.winding)

    def cost(self, lengths: list[int]) -> int:
        return sum(c for c, on in zip(lengths, self.x) if on)

    def push(self, darts: Iterable[int], ws: WindingSystem) -> None:
        """Add ``z^gamma`` for a path or circuit of the residual graph."""
        x = self.x
        for d in darts:
            a = d >> 1
            want = 0 if d & 1 else 1
            if x[a] == want:
                raise ValueError(f"dart {d} is not in the residual graph")
            x[a] = want
            self.winding += -ws.u[a] if d & 1 else ws.u[a]


def residual_darts(rg: RingGraph, x: list[int]) -> list[int]:
    return [2 * a + 1 if on else 2 * a for a, on in enumerate(x)]


def check_nonnegative(x: list[int], kappa: list[int]) -> None:
    """Raise PotentialViolation unless ``kappa`` is nonnegative on D_x."""
    for a, (on, c) in enumerate(zip(x, kappa)):
        if (c < 0 and not on) or (c > 0 and on):
            raise PotentialViolation(f"residual arc of arc {a} has length {-c if on else c}")


def check_conservation(rg: RingGraph, flow: IntegerFlow) -> None:
    x = flow.x
    terminals = set(rg.sources) | set(rg.sinks)
    for v in range(rg.graph.n_vertices):
        if v in terminals:
            continue
        out = sum(x[a] for a in rg.out_arcs[v])
        inc = sum(x[a] for a in rg.in_arcs[v])
        if out != inc:
            raise AssertionError(f"flow conservation fails at vertex {v}")
        if out > 1:
            raise AssertionError(f"vertex {v} carries {out} units")
    value = sum(x[a] for a in rg.source_arcs)
    if value != flow.value:
        raise AssertionError(f"cached value {flow.value} != {value}")


def _dijkstra(rg: RingGraph, x: list[int], kappa: list[int]) -> tuple[list[int | None], list[int]]:
    n = rg.graph.n_vertices
    dist: list[int | None] = [None] * n
    via = [-1] * n
    out_arcs, in_arcs, heads, tails = rg.out_arcs, rg.in_arcs, rg.heads, rg.tails
    best = {}
    heap = []
    for s in rg.sources:
        best[s] = 0
        heap.append((0, s))
    heapq.heapify(heap)
    while heap:
        dv, v = heapq.heappop(heap)
        if dist[v] is not None:
            continue
        dist[v] = dv
        for a in out_arcs[v]:
            if not x[a]:
                w = heads[a]
                nd = dv + kappa[a]
                if dist[w] is None and nd < best.get(w, nd + 1):
                    best[w] = nd
                    via[w] = 2 * a
                    heapq.heappush(heap, (nd, w))
        for a in in_arcs[v]:
            if x[a]:
                w = tails[a]
                nd = dv - kappa[a]
                if dist[w] is None and nd < best.get(w, nd + 1):
                    best[w] = nd
                    via[w] = 2 * a + 1
                    heapq.heappush(heap, (nd, w))
    return dist, via


def augment_once(
    rg: RingGraph, flow: IntegerFlow, kappa: list[int], ws: WindingSystem
) -> tuple[IntegerFlow, list[int], list[int]] | None:
    """One successive-shortest-path step.

    Returns ``(flow', kappa', gamma)`` where ``gamma`` is the list of darts of
    a shortest residual (s, t)-path, or None when no such path exists (the
    flow already has maximal value). ``kappa'`` equals ``kappa`` on every
    closed walk, is nonnegative on the new residual graph and zero on gamma.

    Raises:
        PotentialViolation: ``kappa`` is negative on the residual graph.
    """
    x = flow.x
    check_nonnegative(x, kappa)
    dist, via = _dijkstra(rg, x, kappa)
    reached = [(dist[t], j) for j, t in enumerate(rg.sinks) if dist[t] is not None]
    if not reached:
        return None
    _, j = min(reached)
    gamma = []
    v = rg.sinks[j]
    while via[v] != -1:
        d = via[v]
        gamma.append(d)
        v = rg.heads[d >> 1] if d & 1 else rg.tails[d >> 1]
    gamma.reverse()

    far = max(d for d in dist if d is not None)
    pot = [far if d is None else d for d in dist]
    tails, heads = rg.tails, rg.heads
    new_kappa = [c + pot[tails[a]] - pot[heads[a]] for a, c in enumerate(kappa)]
    new_flow = flow.copy()
    new_flow.push(gamma, ws)
    new_flow.value += 1
    check_nonnegative(new_flow.x, new_kappa)
    return new_flow, new_kappa, gamma


def max_value_flow(
    rg: RingGraph,
    lengths: list[int],
    ws: WindingSystem,
    observer: Observer | None = None,
) -> tuple[IntegerFlow, list[int]]:
    """Minimum-cost flow of value ``k`` by ``k`` successive shortest paths.

    Returns ``(x0, kappa0)`` with ``kappa0`` nonnegative on the residual of
    ``x0`` and equal to ``lengths`` on every closed walk.

    Raises:
        Infeasible: reason ``MaxFlow``; fewer than ``k`` disjoint paths exist.
    """
    flow = IntegerFlow.zero(rg)
    kappa = list(lengths)
    for p in range(rg.k):
        step = augment_once(rg, flow, kappa, ws)
        if step is None:
            raise Infeasible("MaxFlow", f"maximum flow value is {p} < {rg.k}")
        new_flow, new_kappa, gamma = step
        if observer is not None:
            observer(
                "augment", flow=flow, kappa=kappa, new_flow=new_flow, new_kappa=new_kappa,
                path=gamma,
            )
        flow, kappa = new_flow, new_kappa
    return flow, kappa


def decompose(rg: RingGraph, x: list[int]) -> tuple[list[list[int] | None], list[list[int]]]:
    """Split an integer flow into its source-to-sink paths and its circuits.

    ``paths[i]`` is the arc list leaving source ``i`` (None if unused).
    """
    nxt: dict[int, int] = {}
    for a, on in enumerate(x):
        if on:
            v = rg.tails[a]
            if v in nxt:
                raise AssertionError(f"vertex {v} has two outgoing flow arcs")
            nxt[v] = a
    sinks = set(rg.sinks)
    used = set()
    paths: list[list[int] | None] = []
    for s in rg.sources:
        if s not in nxt:
            paths.append(None)
            continue
        path = []
        v = s
        while v not in sinks:
            a = nxt[v]
            path.append(a)
            used.add(a)
            v = rg.heads[a]
        paths.append(path)
    circuits = []
    for a0, on in enumerate(x):
        if not on or a0 in used:
            continue
        circ = []
        a = a0
        while a not in used:
            used.add(a)
            circ.append(a)
            a = nxt[rg.heads[a]]
        circuits.append(circ)
    return paths, circuits


def strip_zero_winding_circuits(rg: RingGraph, flow: IntegerFlow, ws: WindingSystem) -> IntegerFlow:
    """Drop every circuit of a flow of positive value.

    Such circuits have winding zero, so value and winding are unchanged.
    """
    _, circuits = decompose(rg, flow.x)
    out = flow.copy()
    for circ in circuits:
        w = winding_number([2 * a for a in circ], ws)
        if flow.value > 0 and w != 0:
            raise AssertionError("circuit with nonzero winding in a flow of positive value")
        for a in circ:
            out.x[a] = 0
        out.winding -= w
    return out
