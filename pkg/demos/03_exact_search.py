"""Solving the selection problem exactly and checking it against plain TSP.

Run: python demos/03_exact_search.py
"""
# %%
import time

from cgstp import (SolveOptions, delaunay_candidates, full_complex, random_euclidean,
                   restricted_complex, solve_exact, tsp_oracle_held_karp)

# %% Maximising net weight over admissible disks gives minus the optimal tour.
for n in range(4, 11):
    inst = random_euclidean(n, seed=n)
    t0 = time.perf_counter()
    rep = solve_exact(inst, full_complex(n))
    dt = time.perf_counter() - t0
    _, opt = tsp_oracle_held_karp(inst)
    print(f"n={n:2d}  objective={rep.objective:6d}  held-karp={opt:5d}  "
          f"nodes={rep.nodes_explored:6d}  {dt:.2f}s")

# %% The lower bound only prunes; the answer does not move.
inst = random_euclidean(8, seed=2)
for use_bound in (False, True):
    rep = solve_exact(inst, full_complex(8), SolveOptions(use_bound=use_bound))
    print(f"bound={use_bound!s:5}  {rep.best_tour}  nodes={rep.nodes_explored}")

# %% Restricting to Delaunay triangles is fast but may miss the optimum.
for seed in range(6):
    inst = random_euclidean(10, seed)
    rep = solve_exact(inst, restricted_complex(10, delaunay_candidates(inst)))
    _, opt = tsp_oracle_held_karp(inst)
    print(f"seed={seed}  delaunay={rep.tour_length}  optimum={opt}")
