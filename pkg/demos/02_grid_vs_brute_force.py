"""
Seeded grids checked against exhaustive search
==============================================

The generator places s inside one grid cell and t outside the grid. The
brute-force oracle enumerates every set of disjoint paths, so on small grids
the two answers must agree exactly.
"""

from twoface import brute_force_optimum, generate_grid_instance, solve, verify_solution

agree = 0
for seed in range(20):
    inst = generate_grid_instance(4, 4, 3, seed=seed)
    sol = solve(inst)
    best = brute_force_optimum(inst)
    assert sol.feasible == best.feasible and sol.total_length == best.total_length
    if sol.feasible:
        assert verify_solution(inst, sol).ok
    agree += 1
    if sol.feasible:
        print(f"seed {seed:2d}: solver {sol.total_length}  oracle {best.total_length}")
    else:
        print(f"seed {seed:2d}: infeasible ({sol.reason}), oracle agrees: {not best.feasible}")

print(f"{agree} of 20 agree")
