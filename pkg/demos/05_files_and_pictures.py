"""
JSON files and SVG drawings
===========================

Instances and solutions round-trip through versioned JSON documents; the
renderer draws the graph with a Tutte layout and the paths in bold.
"""

import tempfile
from pathlib import Path

from twoface import generate_grid_instance, read_instance, solve, write_instance, write_solution
from twoface.render import write_svg

out = Path(tempfile.mkdtemp())
inst = generate_grid_instance(6, 6, 3, seed=1)
write_instance(inst, out / "grid.json")

again = read_instance(out / "grid.json")
assert again == inst
sol = solve(again)
write_solution(sol, out / "grid.solution.json")
write_svg(again, out / "grid.svg", sol)

for f in sorted(out.iterdir()):
    print(f"{f.name:22s} {f.stat().st_size:6d} bytes")
print("written to", out)
