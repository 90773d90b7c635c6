"""What each admissibility constraint rules out, one small example at a time.

Run: python demos/02_constraint_anomalies.py
"""
# %%
import json

from cgstp import check_admissible, full_complex, induce_selection, vertex_star_euler
from cgstp.admissibility import verdict_to_json


def show(label, n, K):
    verdict = check_admissible(induce_selection(full_complex(n), K))
    print(f"{label}: failed {sorted(verdict.failed()) or 'nothing'}")
    return verdict


# %% Three triangles on one edge: not a surface.
v = show("book of three pages", 5, [(0, 1, 2), (0, 1, 3), (0, 1, 4)])
print(json.dumps(verdict_to_json(v)["violations"][0]))

# %% Two triangles touching at one city. The star of city 0 falls apart into
# two pieces, so its Euler characteristic is 2 instead of 1.
sel = induce_selection(full_complex(5), [(0, 1, 2), (0, 3, 4)])
print("bowtie chi at 0:", vertex_star_euler(sel, 0))

# %% Counts alone are not enough. At n=6 a closed cone of three triangles
# around city 0, plus one more triangle at 0, has the right numbers of
# triangles and edges and every vertex star has chi = 1. Only the tree
# condition on the incidence graph catches it.
v = show("cone plus triangle", 6, [(0, 1, 2), (0, 1, 3), (0, 2, 3), (0, 4, 5)])
print(v.violations[0].witness["cyclic"], len(v.violations[0].witness["components"]))

# %% Exhaustively, such tree-only failures first appear at n=6.
from itertools import combinations  # noqa: E402

for n in (5, 6):
    cx = full_complex(n)
    only_tree = sum(check_admissible(induce_selection(cx, K)).failed() == {"C4"}
                    for K in combinations(cx.candidates, n - 2))
    print(f"n={n}: {only_tree} selections fail only the tree condition")
