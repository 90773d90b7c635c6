"""Exporting the 0/1 program and auditing what an external solver returns.

The tree condition has no static rows, so a MILP solver may return a
selection that the audit rejects. Needs scipy for the solve step.

Run: python demos/04_lp_export.py
"""
# %%
import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp

from cgstp import full_complex, random_euclidean, tsp_oracle_bruteforce, validate_external
from cgstp.ilp import emit_lp, parse_lp

inst = random_euclidean(6, seed=0)
cx = full_complex(6)
text = emit_lp(inst, cx)
print("\n".join(text.splitlines()[:8]))
print("...", len(text.splitlines()), "lines")

# %% Solve the emitted model with HiGHS through scipy.
model = parse_lp(text)
c, A, lo, hi = model.to_arrays()
res = milp(-c, constraints=LinearConstraint(A, lo, hi), integrality=np.ones(len(c)),
           bounds=Bounds(0, 1))
values = dict(zip(model.variables, res.x))

# %% Audit, tree condition included.
verdict, tour, br = validate_external(values, inst, cx)
print("admissible:", verdict.admissible, "failed:", sorted(verdict.failed()))
print("tour:", tour, "net:", br.net, "optimum:", -tsp_oracle_bruteforce(inst)[1])
