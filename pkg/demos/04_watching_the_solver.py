"""
Watching augmentations and rotations
====================================

An observer callback sees every step: k shortest-path augmentations build
a cheapest flow, then each rotation moves the flow one winding towards the
target along a circuit found as a dual minimum cut.
"""

from twoface import generate_grid_instance, solve
from twoface.flow import length_of


def observer(event, flow, kappa, new_flow, new_kappa, **extra):
    if event == "augment":
        print(f"augment: value {flow.value} -> {new_flow.value}, path of {len(extra['path'])} arcs")
    else:
        gamma = extra["circuit"]
        print(
            f"rotate {extra['direction']:+d}: winding {flow.winding} -> {new_flow.winding}, "
            f"circuit of {len(gamma)} arcs, reduced length {length_of(gamma, kappa)}"
        )


inst = generate_grid_instance(8, 8, 4, seed=2)
sol = solve(inst, observer=observer)
meta = sol.metadata
print("m =", meta["m"], " w0 =", meta["w0"], " final winding =", meta.get("winding"))
print("total length:", sol.total_length)
