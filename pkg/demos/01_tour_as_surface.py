"""A tour is the boundary of a triangulated disk.

Run: python demos/01_tour_as_surface.py [output-dir]
"""
# %%
import sys
from pathlib import Path

from cgstp import (boundary, check_admissible, decode_tour, fan_encode, full_complex,
                   net_weight, tour_length)
from cgstp.instance import from_coords
from cgstp.render import render_svg

out_dir = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_out")
out_dir.mkdir(exist_ok=True)

# %% A unit-ish square: sides 10, diagonals round to 14.
inst = from_coords([(0, 0), (0, 10), (10, 10), (10, 0)], name="square10")
print(inst.as_lists())

# %% Fan the tour 0-1-2-3 from city 0: two triangles sharing the diagonal {0,2}.
cx = full_complex(inst.n)
sel = fan_encode((0, 1, 2, 3), 0, cx)
print("K =", sorted(sel.K))
print("boundary =", sorted(boundary(sel)))

# %% Each incidence pays L_e, each selected edge costs 2 L_e.
# The shared diagonal is paid twice and charged twice, so it cancels;
# every boundary edge nets -L_e.
br = net_weight(sel, inst)
print(br)
assert br.net == -tour_length((0, 1, 2, 3), inst) == -40

# %% The selection passes every constraint and its boundary walks back to the tour.
print(check_admissible(sel).admissible, decode_tour(sel))

# %% A crossing tour costs more, whichever apex the fan uses.
for apex in range(4):
    s = fan_encode((0, 2, 1, 3), apex, cx)
    print(apex, sorted(s.K), net_weight(s, inst).net)

# %%
path = out_dir / "square_fan.svg"
path.write_text(render_svg(inst, sel, title="fan of 0 1 2 3"))
print("wrote", path)
