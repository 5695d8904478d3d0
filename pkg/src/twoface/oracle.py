"""Brute-force ground truth for small instances.

:func:`brute_force_optimum` and :func:`verify_solution` only use the
instance itself. :func:`mu_table` enumerates flows of the ring graph so that
winding numbers are measured against the same dual path as the solver's.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field

from .errors import OrderInfeasible, TooLarge
from .flow import build_winding_system
from .gadget import attach_pendants, build_ring_graph, order_terminals
from .planar import Instance, PlanarGraph, validate_instance
from .solution import FIXED_WINDING, Solution

MAX_VERTICES = 40
MAX_PAIRS = 4


def _guard(inst: Instance) -> None:
    if inst.graph.n_vertices > MAX_VERTICES or inst.k > MAX_PAIRS:
        raise TooLarge(
            f"oracle handles at most {MAX_VERTICES} vertices and {MAX_PAIRS} pairs, "
            f"got {inst.graph.n_vertices} and {inst.k}"
        )


def _distances_to(g: PlanarGraph, target: int) -> list[float]:
    into: list[list[tuple[int, int]]] = [[] for _ in range(g.n_vertices)]
    for a in g.arcs:
        into[a.dst].append((a.src, a.length))
    dist = [math.inf] * g.n_vertices
    dist[target] = 0
    heap = [(0, target)]
    while heap:
        d, v = heapq.heappop(heap)
        if d > dist[v]:
            continue
        for u, length in into[v]:
            if d + length < dist[u]:
                dist[u] = d + length
                heapq.heappush(heap, (d + length, u))
    return dist


def brute_force_optimum(inst: Instance) -> Solution:
    """Exhaustive branch and bound over vertex-disjoint path systems.

    Pairs are routed in index order, arcs tried in id order. A branch is cut
    when its length plus unconstrained shortest-path distances for the rest
    cannot beat the incumbent.

    Raises:
        TooLarge: more than 40 vertices or more than 4 pairs.
    """
    _guard(inst)
    validate_instance(inst)
    g, pairs, k = inst.graph, inst.pairs, inst.k
    if k == 0:
        return Solution()

    owners: dict[int, set[int]] = {}
    for i, (s, t) in enumerate(pairs):
        owners.setdefault(s, set()).add(i)
        owners.setdefault(t, set()).add(i)
    if any(len(o) > 1 for o in owners.values()):
        return Solution.infeasible("Disjoint")
    s_list = [s for s, _ in pairs]
    if len(set(s_list)) < k:
        return Solution.infeasible("Disjoint")

    out: list[list[tuple[int, int, int]]] = [[] for _ in range(g.n_vertices)]
    for a, arc in enumerate(g.arcs):
        out[arc.src].append((a, arc.dst, arc.length))
    to_t = [_distances_to(g, t) for _, t in pairs]
    if any(to_t[i][s] == math.inf for i, (s, _) in enumerate(pairs)):
        return Solution.infeasible("Disjoint")
    rest = [0] * (k + 1)
    for i in range(k - 1, -1, -1):
        rest[i] = rest[i + 1] + to_t[i][pairs[i][0]]

    used = [False] * g.n_vertices
    for v in owners:
        used[v] = True
    best = [math.inf, None]
    current: list[list[int]] = []

    def route(i: int, cost: int) -> None:
        if i == k:
            best[0] = cost
            best[1] = [list(p) for p in current]
            return
        s, t = pairs[i]
        current.append([])
        if s == t:
            route(i + 1, cost)
        else:
            walk(i, s, t, cost)
        current.pop()

    def walk(i: int, v: int, t: int, cost: int) -> None:
        path = current[-1]
        dist = to_t[i]
        for a, w, length in out[v]:
            c = cost + length
            if w == t:
                if c + rest[i + 1] < best[0]:
                    path.append(a)
                    route(i + 1, c)
                    path.pop()
            elif not used[w] and c + dist[w] + rest[i + 1] < best[0]:
                used[w] = True
                path.append(a)
                walk(i, w, t, c)
                path.pop()
                used[w] = False

    route(0, 0)
    if best[1] is None:
        return Solution.infeasible("Disjoint")
    return Solution(paths=best[1], total_length=int(best[0]), pairing=list(range(k)))


@dataclass
class MuTable:
    """Minimum cost of the (k, w)-flows for each winding ``w`` that has one."""

    costs: dict[int, int]
    k: int
    m: int | None

    def __getitem__(self, w: int) -> float:
        return self.costs.get(w, math.inf)

    def support(self) -> list[int]:
        return sorted(self.costs)

    def is_interval(self) -> bool:
        ws = self.support()
        return not ws or ws == list(range(ws[0], ws[-1] + 1))

    def is_convex(self) -> bool:
        return all(
            2 * self.costs[w] <= self.costs[w - 1] + self.costs[w + 1]
            for w in self.costs
            if w - 1 in self.costs and w + 1 in self.costs
        )

    def best_congruent(self) -> tuple[int, int] | None:
        """``(cost, w)`` minimising cost over windings congruent to m."""
        if self.m is None or not self.costs:
            return None
        opts = [(c, w) for w, c in self.costs.items() if (w - self.m) % self.k == 0]
        return min(opts) if opts else None


def mu_table(inst: Instance, seed_u: int | None = None, budget: int = 2_000_000) -> MuTable:
    """Enumerate every circuit-free flow of value k in the ring graph.

    Circuits of a flow of positive value have winding zero and nonnegative
    cost, so leaving them out does not change any minimum. ``m`` is None
    when the terminals cannot be put in clockwise order.

    Raises:
        TooLarge: the size guard is exceeded or more than ``budget`` search
            steps are needed.
    """
    _guard(inst)
    ci = attach_pendants(validate_instance(inst))
    try:
        ci = order_terminals(ci)
        ordered = True
    except OrderInfeasible:
        ordered = False
    rg = build_ring_graph(ci)
    k = rg.k
    if k == 0:
        return MuTable({0: 0}, 0, 0)
    ws = build_winding_system(rg, seed=seed_u)
    u = ws.u
    lengths = rg.lengths()
    out = rg.out_arcs
    heads = rg.heads
    sinks = set(rg.sinks)
    used = [False] * rg.graph.n_vertices
    for v in rg.sources:
        used[v] = True
    for v in rg.sinks:
        used[v] = True
    costs: dict[int, int] = {}
    steps = [0]

    def route(i: int, cost: int, wind: int) -> None:
        if i == k:
            if cost < costs.get(wind, math.inf):
                costs[wind] = cost
            return
        walk(i, rg.sources[i], cost, wind)

    def walk(i: int, v: int, cost: int, wind: int) -> None:
        steps[0] += 1
        if steps[0] > budget:
            raise TooLarge(f"flow enumeration exceeded {budget} steps")
        for a in out[v]:
            w = heads[a]
            if w in sinks:
                if not used_sink[w]:
                    used_sink[w] = True
                    route(i + 1, cost + lengths[a], wind + u[a])
                    used_sink[w] = False
            elif not used[w]:
                used[w] = True
                walk(i, w, cost + lengths[a], wind + u[a])
                used[w] = False

    used_sink = {t: False for t in rg.sinks}
    route(0, 0, 0)
    return MuTable(costs, k, ws.m if ordered else None)


@dataclass
class VerificationReport:
    disjoint: bool = True
    pairing_ok: bool = True
    length_ok: bool = True
    total: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.disjoint and self.pairing_ok and self.length_ok and not self.failures


def verify_solution(inst: Instance, sol: Solution) -> VerificationReport:
    """Check a solution against its instance without any solver code.

    Paths must be arc-connected walks over existing arcs from ``s_i`` to
    ``t_i`` (to ``t_{pairing[i]}`` for fixed-winding solutions), pairwise
    vertex-disjoint, with the stated total length.
    """
    rep = VerificationReport()
    if not sol.feasible:
        return rep
    g = inst.graph
    if len(sol.paths) != inst.k:
        rep.pairing_ok = False
        rep.failures.append(f"expected {inst.k} paths, got {len(sol.paths)}")
        return rep
    pairing = list(sol.pairing) if sol.pairing else list(range(inst.k))
    if sol.mode != FIXED_WINDING and pairing != list(range(inst.k)):
        rep.pairing_ok = False
        rep.failures.append("pairing is not the identity")
    if sorted(pairing) != list(range(inst.k)):
        rep.pairing_ok = False
        rep.failures.append("pairing is not a permutation")
        return rep
    owner: dict[int, int] = {}
    total = 0
    for i, path in enumerate(sol.paths):
        s = inst.pairs[i][0]
        t = inst.pairs[pairing[i]][1]
        v = s
        verts = [s]
        for a in path:
            if not 0 <= a < g.n_arcs:
                rep.failures.append(f"path {i} uses unknown arc {a}")
                rep.pairing_ok = False
                break
            arc = g.arcs[a]
            if arc.src != v:
                rep.failures.append(f"path {i} is not connected at arc {a}")
                rep.pairing_ok = False
                break
            total += arc.length
            v = arc.dst
            verts.append(v)
        if v != t:
            rep.pairing_ok = False
            rep.failures.append(f"path {i} ends at {v}, expected {t}")
        if len(set(verts)) != len(verts):
            rep.disjoint = False
            rep.failures.append(f"path {i} repeats a vertex")
        for w in set(verts):
            j = owner.setdefault(w, i)
            if j != i:
                rep.disjoint = False
                rep.failures.append(f"paths {j} and {i} share vertex {w}")
    rep.total = total
    if total != sol.total_length:
        rep.length_ok = False
        rep.failures.append(f"stated total {sol.total_length} != computed {total}")
    return rep
