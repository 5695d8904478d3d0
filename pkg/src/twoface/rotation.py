"""Changing the winding number of a k-flow, and the full solver.

A shortest residual circuit of winding +1 is found as a minimum cut in the
dual graph: the capacity of the dual of a residual arc is its reduced length
plus an infinitesimal, and every other dual orientation has infinite
capacity. The maximum dual flow then doubles as the potential update that
keeps reduced lengths nonnegative.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .errors import Infeasible, OrderInfeasible
from .flow import (
    IntegerFlow,
    Observer,
    WindingSystem,
    build_winding_system,
    check_nonnegative,
    decompose,
    max_value_flow,
    strip_zero_winding_circuits,
    winding_number,
)
from .gadget import RingGraph, attach_pendants, build_ring_graph, order_terminals, project_solution
from .planar import Instance, validate_instance
from .solution import FIXED_WINDING, TWO_FACE, Solution

# Packed encoding of (real, eps) as real * scale + eps. Exact while
# |eps| < scale / 4, which is checked on every decoded value. A dual flow
# uses a scale above four times its edge count, so no eps total can reach it.
_SCALE = 1 << 64


@functools.total_ordering
@dataclass(frozen=True)
class EpsValue:
    """``real + eps * epsilon`` for an infinitesimal ``epsilon > 0``;
    ``EpsValue.INF`` sits above every finite value."""

    real: int = 0
    eps: int = 0
    infinite: bool = False

    def _key(self) -> tuple[bool, int, int]:
        return (self.infinite, self.real, self.eps)

    def __lt__(self, other: EpsValue) -> bool:
        return self._key() < other._key()

    def __add__(self, other: EpsValue) -> EpsValue:
        if self.infinite or other.infinite:
            return INF
        return EpsValue(self.real + other.real, self.eps + other.eps)

    def __sub__(self, other: EpsValue) -> EpsValue:
        if other.infinite:
            raise ArithmeticError("cannot subtract infinity")
        if self.infinite:
            return INF
        return EpsValue(self.real - other.real, self.eps - other.eps)

    def __neg__(self) -> EpsValue:
        if self.infinite:
            raise ArithmeticError("cannot negate infinity")
        return EpsValue(-self.real, -self.eps)

    def pack(self, scale: int = _SCALE) -> int:
        if self.infinite:
            raise ArithmeticError("infinity has no packed form")
        if abs(self.eps) >= scale >> 2:
            raise OverflowError("epsilon component outside the exact range")
        return self.real * scale + self.eps

    @classmethod
    def unpack(cls, n: int, scale: int = _SCALE) -> EpsValue:
        half = scale >> 1
        real, eps = divmod(n + half, scale)
        eps -= half
        if abs(eps) >= scale >> 2:
            raise OverflowError("epsilon component left the exact range")
        return cls(real, eps)

    def __repr__(self) -> str:
        return "EpsValue(inf)" if self.infinite else f"EpsValue({self.real}, {self.eps})"


INF = EpsValue(infinite=True)
ZERO = EpsValue()


@dataclass
class DualFlow:
    """Maximum flow in the dual graph.

    ``net[a]`` is the packed net amount sent along the dual of arc ``a``
    (from its right face to its left face); negative amounts travel the other
    way. ``capacity[a]`` holds the packed capacities of both orientations
    (None for infinite).
    """

    source: int
    sink: int
    value: EpsValue
    net: list[int]
    capacity: list[tuple[int | None, int | None]]
    cut: list[int]
    scale: int = _SCALE

    def forward(self, arc: int) -> EpsValue:
        """phi of the dual of ``arc`` (crossing it right to left)."""
        return EpsValue.unpack(max(self.net[arc], 0), self.scale)

    def backward(self, arc: int) -> EpsValue:
        """phi of the dual of the reversed arc."""
        return EpsValue.unpack(max(-self.net[arc], 0), self.scale)

    def real_net(self, arc: int) -> int:
        return EpsValue.unpack(self.net[arc], self.scale).real


def _max_flow(n: int, to: list[int], cap: list[int], adj: list[list[int]], src: int, snk: int) -> int:
    """Dinic's algorithm on residual capacities ``cap``; edges ``e`` and
    ``e ^ 1`` are mutual reverses. Mutates ``cap`` and returns the value."""
    total = 0
    deg = [len(av) for av in adj]
    while True:
        level = [-1] * n
        level[src] = 0
        queue = [src]
        for v in queue:
            lv = level[v] + 1
            if level[snk] >= 0:
                break
            for e in adj[v]:
                if cap[e] > 0:
                    w = to[e]
                    if level[w] < 0:
                        level[w] = lv
                        queue.append(w)
        if level[snk] < 0:
            return total
        it = [0] * n
        path: list[int] = []
        v = src
        while True:
            if v == snk:
                f = min([cap[e] for e in path])
                cut_at = len(path)
                for idx, e in enumerate(path):
                    cap[e] -= f
                    cap[e ^ 1] += f
                    if cap[e] == 0 and idx < cut_at:
                        cut_at = idx
                total += f
                del path[cut_at:]
                v = to[path[-1]] if path else src
                continue
            av = adj[v]
            i = it[v]
            d = deg[v]
            want = level[v] + 1
            while i < d:
                e = av[i]
                if cap[e] > 0 and level[to[e]] == want:
                    break
                i += 1
            it[v] = i
            if i < d:
                path.append(av[i])
                v = to[av[i]]
            elif v == src:
                break
            else:
                level[v] = -1
                e = path.pop()
                v = to[e ^ 1]
                it[v] += 1


def _circuits(darts: list[int], tails: list[int], heads: list[int]) -> list[list[int]]:
    nxt: dict[int, int] = {}
    for d in darts:
        a = d >> 1
        t = heads[a] if d & 1 else tails[a]
        if t in nxt:
            raise AssertionError(f"cut has two oriented edges leaving vertex {t}")
        nxt[t] = d
    seen = set()
    out = []
    for d0 in darts:
        if d0 in seen:
            continue
        circ = []
        d = d0
        while d not in seen:
            seen.add(d)
            circ.append(d)
            a = d >> 1
            h = tails[a] if d & 1 else heads[a]
            if h not in nxt:
                raise AssertionError(f"cut has no oriented edge leaving vertex {h}")
            d = nxt[h]
        if d != d0:
            raise AssertionError("cut edges do not form disjoint circuits")
        out.append(circ)
    return out


def min_winding_circuit(
    rg: RingGraph, flow: IntegerFlow, kappa: list[int], ws: WindingSystem, direction: int = 1
) -> tuple[list[int], DualFlow] | None:
    """Shortest residual circuit of winding ``direction`` (+1 or -1).

    Returns the circuit as a list of darts together with the maximum dual
    flow, or None when every cut needs an infinite edge, i.e. the winding is
    already extreme among flows of this value.
    """
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    x = flow.x
    check_nonnegative(x, kappa)
    emb = rg.embedding
    nf = emb.n_faces
    src, snk = (rg.face_s, rg.face_t) if direction == 1 else (rg.face_t, rg.face_s)

    arcs_used: list[int] = []
    to: list[int] = []
    cap: list[int | None] = []
    adj: list[list[int]] = [[] for _ in range(nf)]
    capacity: list[tuple[int | None, int | None]] = [(None, None)] * len(x)
    scale = 4 * (len(x) + 1)
    for a, on in enumerate(x):
        r, l = emb.right_face(a), emb.left_face(a)
        if r == l:
            continue
        fwd = None if on else kappa[a] * scale + 1
        bwd = -kappa[a] * scale + 1 if on else None
        capacity[a] = (fwd, bwd)
        e = len(to)
        arcs_used.append(a)
        to.extend((l, r))
        cap.extend((fwd, bwd))
        adj[r].append(e)
        adj[l].append(e + 1)

    # Is there a source-to-sink path through infinite edges only?
    seen = [False] * nf
    seen[src] = True
    stack = [src]
    while stack:
        f = stack.pop()
        for e in adj[f]:
            if cap[e] is None and not seen[to[e]]:
                seen[to[e]] = True
                stack.append(to[e])
    if seen[snk]:
        return None

    big = sum(c for c in cap if c is not None) + 1
    initial = [big if c is None else c for c in cap]
    res = list(initial)
    value = _max_flow(nf, to, res, adj, src, snk)

    net = [0] * len(x)
    for i, a in enumerate(arcs_used):
        net[a] = initial[2 * i] - res[2 * i]

    reach = [False] * nf
    reach[src] = True
    stack = [src]
    while stack:
        f = stack.pop()
        for e in adj[f]:
            if res[e] > 0 and not reach[to[e]]:
                reach[to[e]] = True
                stack.append(to[e])
    assert not reach[snk]

    cut = []
    cut_value = 0
    for i, a in enumerate(arcs_used):
        l, r = to[2 * i], to[2 * i + 1]
        if reach[r] and not reach[l]:
            c = cap[2 * i]
            assert c is not None, "infinite edge in a finite cut"
            cut.append(2 * a)
            cut_value += c
        elif reach[l] and not reach[r]:
            c = cap[2 * i + 1]
            assert c is not None, "infinite edge in a finite cut"
            cut.append(2 * a + 1)
            cut_value += c
    assert cut_value == value, "max-flow value differs from the min-cut value"

    circuits = _circuits(cut, rg.tails, rg.heads)
    matching = [c for c in circuits if winding_number(c, ws) == direction]
    assert len(matching) == 1, f"expected one circuit of winding {direction}, got {len(matching)}"
    phi = DualFlow(src, snk, EpsValue.unpack(value, scale), net, capacity, cut, scale)
    return matching[0], phi


def rotate_once(
    rg: RingGraph, flow: IntegerFlow, kappa: list[int], ws: WindingSystem, direction: int = 1
) -> tuple[IntegerFlow, list[int], list[int], DualFlow] | None:
    """Move a minimum-cost (k, w)-flow to a minimum-cost (k, w + direction)-flow.

    Returns ``(flow', kappa', gamma, phi)``, or None when no flow of this
    value has a larger (resp. smaller) winding. ``kappa'`` agrees with
    ``kappa`` on closed walks of winding zero and is nonnegative on the new
    residual graph.
    """
    found = min_winding_circuit(rg, flow, kappa, ws, direction)
    if found is None:
        return None
    gamma, phi = found
    new_kappa = [c - phi.real_net(a) for a, c in enumerate(kappa)]
    new_flow = flow.copy()
    new_flow.push(gamma, ws)
    check_nonnegative(new_flow.x, new_kappa)
    return new_flow, new_kappa, gamma, phi


@dataclass
class _Candidate:
    winding: int
    flow: IntegerFlow | None
    rotations: int


def _rotate_to(
    rg: RingGraph,
    flow: IntegerFlow,
    kappa: list[int],
    ws: WindingSystem,
    target: int,
    observer: Observer | None,
) -> _Candidate:
    direction = 1 if target > flow.winding else -1
    count = 0
    while flow.winding != target:
        step = rotate_once(rg, flow, kappa, ws, direction)
        if step is None:
            return _Candidate(target, None, count)
        new_flow, new_kappa, gamma, phi = step
        count += 1
        if observer is not None:
            observer(
                "rotate", flow=flow, kappa=kappa, new_flow=new_flow, new_kappa=new_kappa,
                circuit=gamma, dual_flow=phi, direction=direction,
            )
        flow, kappa = new_flow, new_kappa
    return _Candidate(target, flow, count)


@dataclass
class Pipeline:
    """Intermediate objects of a solve, kept for inspection and testing."""

    ring: RingGraph
    winding: WindingSystem
    lengths: list[int]
    flow: IntegerFlow
    kappa: list[int]


def prepare(inst: Instance, seed_u: int | None = None, observer: Observer | None = None) -> Pipeline:
    """Run the pipeline up to the minimum-cost k-flow.

    Raises:
        Infeasible: reason ``Order`` or ``MaxFlow``.
    """
    ci = validate_instance(inst)
    ci = attach_pendants(ci)
    ci = order_terminals(ci)
    rg = build_ring_graph(ci)
    ws = build_winding_system(rg, seed=seed_u)
    lengths = rg.lengths()
    flow, kappa = max_value_flow(rg, lengths, ws, observer)
    return Pipeline(rg, ws, lengths, flow, kappa)


def solve(
    inst: Instance,
    fixed_winding: int | None = None,
    seed_u: int | None = None,
    observer: Observer | None = None,
) -> Solution:
    """Minimum-length vertex-disjoint paths joining each ``s_i`` to ``t_i``.

    With ``fixed_winding`` the paths must in addition have that winding
    number; their pairing is then whatever that winding forces, and is
    reported in ``Solution.pairing``.

    Invalid instances raise the errors of
    :func:`twoface.planar.validate_instance`; infeasibility is reported
    through ``Solution.status``.
    """
    mode = TWO_FACE if fixed_winding is None else FIXED_WINDING
    meta: dict = {"seed_u": seed_u}
    if inst.k == 0:
        validate_instance(inst)
        return Solution(mode=mode, metadata={**meta, "rotations": 0, "winding": 0})
    try:
        pipe = prepare(inst, seed_u, observer)
    except OrderInfeasible:
        return _infeasible("Order", mode, meta)
    except Infeasible as exc:
        return _infeasible(exc.reason, mode, meta)

    rg, ws, x0 = pipe.ring, pipe.winding, pipe.flow
    k, m, w0 = rg.k, ws.m, x0.winding
    meta.update(m=m, w0=w0)
    if fixed_winding is not None:
        targets = [fixed_winding]
    elif (w0 - m) % k == 0:
        targets = [w0]
    else:
        w1 = w0 - (w0 - m) % k
        targets = [w1, w1 + k]
        meta.update(w1=w1, w2=w1 + k)

    candidates = [
        _rotate_to(rg, x0.copy(), list(pipe.kappa), ws, w, observer) for w in targets
    ]
    meta["rotations"] = sum(c.rotations for c in candidates)
    meta["candidates"] = {
        c.winding: (None if c.flow is None else c.flow.cost(pipe.lengths)) for c in candidates
    }
    feasible = [c for c in candidates if c.flow is not None]
    if not feasible:
        return _infeasible("Winding", mode, meta)
    best = min(feasible, key=lambda c: c.flow.cost(pipe.lengths))

    flow = strip_zero_winding_circuits(rg, best.flow, ws)
    assert flow.winding == best.winding
    paths, circuits = decompose(rg, flow.x)
    assert not circuits and all(p is not None for p in paths)
    sol = project_solution(rg, paths)
    if fixed_winding is None:
        assert sol.pairing == list(range(k)), "winding class does not match the pairing"
    sol.mode = mode
    meta["winding"] = best.winding
    meta["flow_cost"] = flow.cost(pipe.lengths)
    sol.metadata = meta
    return sol


def _infeasible(reason: str, mode: str, meta: dict) -> Solution:
    sol = Solution.infeasible(reason, **meta)
    sol.mode = mode
    return sol
