"""
Cost as a function of winding
=============================

Every family of disjoint paths winds some whole number of times around s.
The table mu[w] lists the cheapest cost per winding w. It has no gaps and is
convex, which is why walking from the cheapest unconstrained flow one
winding at a time reaches the optimum.
"""

from twoface import generate_grid_instance, mu_table, solve

inst = generate_grid_instance(3, 3, 2, seed=4)
table = mu_table(inst)
print("k =", table.k, " m =", table.m)
for w in table.support():
    mark = "  <- congruent to m" if (w - table.m) % table.k == 0 else ""
    print(f"  mu[{w:3d}] = {table[w]}{mark}")

sol = solve(inst)
print("solver picked winding", sol.metadata["winding"], "cost", sol.total_length)

# any winding in the table can be asked for directly
for w in table.support():
    fixed = solve(inst, fixed_winding=w)
    print(f"  fixed winding {w:3d}: cost {fixed.total_length}, pairing {fixed.pairing}")
