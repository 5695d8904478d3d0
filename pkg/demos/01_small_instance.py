"""
Solving a hand-built instance
=============================

A directed square v1 -> v2 -> v3 and v1 -> v4 -> v3 drawn around an inner
face s. The single pair (v1, v3) can go either way round; the solver picks
the cheaper side.
"""

from twoface import FaceRef, Instance, solve
from twoface.planar import IN, LEFT, OUT, RIGHT, Arc, PlanarGraph

# arcs with their lengths; vertex ids 0..3 stand for v1..v4
arcs = [Arc(0, 1, 1), Arc(1, 2, 2), Arc(0, 3, 3), Arc(3, 2, 4)]

# clockwise order of arc ends around each vertex
rotation = [
    [(0, OUT), (2, OUT)],
    [(1, OUT), (0, IN)],
    [(3, IN), (1, IN)],
    [(2, IN), (3, OUT)],
]
graph = PlanarGraph.from_arc_ends(4, arcs, rotation)

# s is the face left of arc 0, t the face on its right
inst = Instance(graph, FaceRef(0, LEFT), FaceRef(0, RIGHT), ((0, 2),))

sol = solve(inst)
print("status:", sol.status)
print("path arcs:", sol.paths[0])
print("total length:", sol.total_length)

# forcing the other side of the square costs 3 + 4
w = sol.metadata["winding"]
other = solve(inst, fixed_winding=w + 1)
print("other side:", other.paths[0], "length", other.total_length)
