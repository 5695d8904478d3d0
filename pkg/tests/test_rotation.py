import heapq

import pytest

from instances import four_cycle
from twoface.flow import check_nonnegative, length_of, winding_number
from twoface.formats import generate_grid_instance
from twoface.gadget import project_solution
from twoface.flow import decompose
from twoface.oracle import brute_force_optimum, mu_table
from twoface.rotation import (
    INF,
    ZERO,
    EpsValue,
    min_winding_circuit,
    prepare,
    rotate_once,
    solve,
)
from twoface.solution import FIXED_WINDING


def shortest_winding_walk(pipe, flow, kappa, direction):
    """Least (kappa-length, hops) over closed residual walks of the given winding.

    Dijkstra on the cover whose vertices are (vertex, winding so far).
    """
    rg, ws = pipe.ring, pipe.winding
    bound = len(ws.steps) + 2
    arcs = []
    for a, on in enumerate(flow.x):
        d = 2 * a + 1 if on else 2 * a
        tail, head = (rg.heads[a], rg.tails[a]) if on else (rg.tails[a], rg.heads[a])
        arcs.append((tail, head, -kappa[a] if on else kappa[a], -ws.u[a] if on else ws.u[a], d))
    out = {}
    for t, h, c, w, d in arcs:
        out.setdefault(t, []).append((h, c, w))
    best = None
    for start in range(rg.graph.n_vertices):
        dist = {(start, 0): (0, 0)}
        heap = [(0, 0, start, 0)]
        while heap:
            c, hops, v, w = heapq.heappop(heap)
            if dist.get((v, w)) != (c, hops):
                continue
            if best is not None and (c, hops) >= best:
                break
            for h, dc, dw in out.get(v, ()):
                nw = w + dw
                if abs(nw) > bound:
                    continue
                key = (c + dc, hops + 1)
                if key < dist.get((h, nw), (float("inf"), 0)):
                    dist[(h, nw)] = key
                    heapq.heappush(heap, (key[0], key[1], h, nw))
        got = dist.get((start, direction))
        if got is not None and (best is None or got < best):
            best = got
    return best


def test_eps_value_order_and_arithmetic():
    assert EpsValue(1, 5) < EpsValue(2, 0)
    assert EpsValue(1, 0) < EpsValue(1, 1)
    assert EpsValue(-3, 9) < ZERO < INF
    assert EpsValue(10**9, 10**6) < INF
    assert EpsValue(1, 2) + EpsValue(3, -1) == EpsValue(4, 1)
    assert EpsValue(1, 2) - EpsValue(3, -1) == EpsValue(-2, 3)
    assert -EpsValue(1, -2) == EpsValue(-1, 2)
    assert EpsValue(1, 2) + INF == INF
    with pytest.raises(ArithmeticError):
        ZERO - INF
    with pytest.raises(ArithmeticError):
        INF.pack()


@pytest.mark.parametrize("real,eps", [(0, 0), (5, 1), (-5, 1), (7, -3), (-7, -3), (10**12, 40)])
def test_eps_value_pack_round_trip(real, eps):
    for scale in (1 << 64, 4 * 101):
        assert EpsValue.unpack(EpsValue(real, eps).pack(scale), scale) == EpsValue(real, eps)


def test_eps_value_pack_guard():
    with pytest.raises(OverflowError):
        EpsValue(0, 200).pack(400)


def test_circuit_of_winding_one_on_four_cycle():
    pipe = prepare(four_cycle())
    gamma, phi = min_winding_circuit(pipe.ring, pipe.flow, pipe.kappa, pipe.winding, 1)
    assert winding_number(gamma, pipe.winding) == 1
    # v1 -> v4 -> v3 forward, v2 -> v3 and v1 -> v2 backward: 3 + 4 - 2 - 1
    assert length_of(gamma, pipe.lengths) == 4
    assert length_of(gamma, pipe.kappa) == phi.value.real
    assert phi.value.eps == len(gamma)


def test_dual_flow_respects_capacities_and_conservation():
    inst = generate_grid_instance(4, 4, 2, seed=3)
    pipe = prepare(inst)
    found = min_winding_circuit(pipe.ring, pipe.flow, pipe.kappa, pipe.winding, 1)
    assert found is not None
    _, phi = found
    emb = pipe.ring.embedding
    balance = [ZERO] * emb.n_faces
    for a in range(pipe.ring.graph.n_arcs):
        fwd, bwd = phi.capacity[a]
        f, b = phi.forward(a), phi.backward(a)
        assert f == ZERO or b == ZERO
        if fwd is not None:
            assert f <= EpsValue.unpack(fwd, phi.scale)
        if bwd is not None:
            assert b <= EpsValue.unpack(bwd, phi.scale)
        r, l = emb.right_face(a), emb.left_face(a)
        balance[l] = balance[l] + f - b
        balance[r] = balance[r] - f + b
    for face, total in enumerate(balance):
        if face == phi.source:
            assert total == -phi.value
        elif face == phi.sink:
            assert total == phi.value
        else:
            assert total == ZERO


@pytest.mark.parametrize("seed", range(6))
@pytest.mark.parametrize("direction", [1, -1])
def test_circuit_is_lexicographically_shortest(seed, direction):
    inst = generate_grid_instance(3, 3, 2, seed=seed)
    try:
        pipe = prepare(inst)
    except Exception:
        pytest.skip("instance has no flow of value k")
    found = min_winding_circuit(pipe.ring, pipe.flow, pipe.kappa, pipe.winding, direction)
    expected = shortest_winding_walk(pipe, pipe.flow, pipe.kappa, direction)
    if found is None:
        assert expected is None
        return
    gamma, _ = found
    assert winding_number(gamma, pipe.winding) == direction
    assert (length_of(gamma, pipe.kappa), len(gamma)) == expected


def test_zero_lengths_give_fewest_hops():
    inst = generate_grid_instance(4, 4, 1, seed=2, length_range=(0, 0))
    pipe = prepare(inst)
    gamma, phi = min_winding_circuit(pipe.ring, pipe.flow, pipe.kappa, pipe.winding, 1)
    assert phi.value.real == 0
    assert (0, len(gamma)) == shortest_winding_walk(pipe, pipe.flow, pipe.kappa, 1)


def test_rotate_on_four_cycle():
    pipe = prepare(four_cycle())
    new_flow, new_kappa, gamma, _ = rotate_once(
        pipe.ring, pipe.flow, pipe.kappa, pipe.winding, 1
    )
    assert new_flow.winding == pipe.flow.winding + 1
    assert new_flow.cost(pipe.lengths) == 7
    paths, _ = decompose(pipe.ring, new_flow.x)
    assert project_solution(pipe.ring, paths).paths == [[2, 3]]
    check_nonnegative(new_flow.x, new_kappa)
    # winding is extreme now
    assert rotate_once(pipe.ring, new_flow, new_kappa, pipe.winding, 1) is None
    assert rotate_once(pipe.ring, pipe.flow, pipe.kappa, pipe.winding, -1) is None


def test_rotate_back_and_forth_returns_to_minimum():
    inst = generate_grid_instance(4, 4, 2, seed=1)
    pipe = prepare(inst)
    rg, ws = pipe.ring, pipe.winding
    up = rotate_once(rg, pipe.flow, pipe.kappa, ws, 1)
    assert up is not None
    back = rotate_once(rg, up[0], up[1], ws, -1)
    assert back is not None
    assert back[0].value == pipe.flow.value
    assert back[0].winding == pipe.flow.winding
    assert back[0].cost(pipe.lengths) == pipe.flow.cost(pipe.lengths)


def test_mirrored_four_cycle_rotates_the_other_way():
    pipe = prepare(four_cycle().mirrored())
    assert rotate_once(pipe.ring, pipe.flow, pipe.kappa, pipe.winding, 1) is None
    new_flow, _, gamma, _ = rotate_once(pipe.ring, pipe.flow, pipe.kappa, pipe.winding, -1)
    assert new_flow.cost(pipe.lengths) == 7
    assert length_of(gamma, pipe.lengths) == 4


def test_invalid_direction():
    pipe = prepare(four_cycle())
    with pytest.raises(ValueError):
        min_winding_circuit(pipe.ring, pipe.flow, pipe.kappa, pipe.winding, 2)


def test_solve_four_cycle():
    sol = solve(four_cycle())
    assert sol.feasible
    assert sol.paths == [[0, 1]]
    assert sol.total_length == 3
    assert sol.pairing == [0]


def test_solve_without_pairs():
    sol = solve(four_cycle(pairs=()))
    assert sol.feasible and sol.paths == [] and sol.total_length == 0


def test_solve_reports_paths_in_caller_order():
    inst = generate_grid_instance(4, 4, 3, seed=4)
    sol = solve(inst)
    best = brute_force_optimum(inst)
    assert sol.status == best.status and sol.total_length == best.total_length
    for (s, t), path in zip(inst.pairs, sol.paths):
        assert inst.graph.arcs[path[0]].src == s
        assert inst.graph.arcs[path[-1]].dst == t


def test_fixed_winding_on_four_cycle():
    inst = four_cycle()
    table = mu_table(inst)
    assert sorted(table.costs.values()) == [3, 7]
    (w_lo, w_hi) = table.support()
    assert w_hi == w_lo + 1
    sol = solve(inst, fixed_winding=w_hi)
    assert sol.mode == FIXED_WINDING
    assert sol.total_length == 7 and sol.paths == [[2, 3]]
    sol = solve(inst, fixed_winding=w_hi + 1)
    assert not sol.feasible and sol.reason == "Winding"


def test_solver_metadata():
    inst = generate_grid_instance(4, 4, 3, seed=9)
    sol = solve(inst, seed_u=5)
    meta = sol.metadata
    assert meta["seed_u"] == 5
    if sol.feasible:
        k = inst.k
        assert (meta["winding"] - meta["m"]) % k == 0
        assert meta["flow_cost"] == sol.total_length
        assert meta["rotations"] >= 0
