"""
Running time on growing grids
=============================

Time per solve with k = 4 on square grids, and the slope of log time
against log vertex count.
"""

import time

import numpy as np

from twoface import generate_grid_instance, solve

sizes = [10, 20, 30, 40]
times = []
for n in sizes:
    inst = generate_grid_instance(n, n, 4, seed=0)
    start = time.perf_counter()
    sol = solve(inst)
    times.append(time.perf_counter() - start)
    print(f"{n}x{n}: {times[-1]:.2f}s, {sol.metadata['rotations']} rotations, length {sol.total_length}")

slope = np.polyfit(np.log([n * n for n in sizes]), np.log(times), 1)[0]
print(f"slope against vertex count: {slope:.2f}")
