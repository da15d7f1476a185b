"""The iterated-cave scheme: one cave of height h is re-entered n - 2
times through shrinking windows, so terminal height approaches twice the
tile count as the cave grows taller relative to the widths 3^k.

Run:  python demos/03_general_scheme.py
"""

from tileforge.analysis import extents
from tileforge.compiler import compile_program
from tileforge.constructions import gen_general
from tileforge.simulator import SimLimits, run_deterministic

# the reference invocation
out = compile_program(gen_general(8, 10))
res = run_deterministic(out.tileset, out.seed, SimLimits(max_tiles=200000))
ext = extents(res.assembly)
print(f"(n,h) = (8,10): {len(out.tileset)} tile types, "
      f"{len(res.assembly)} tiles placed, height {ext['y_extent']}, {res.status}")

# height/|T| climbs toward 2 when the cave height tracks the width scale
print("\n n    h     |T|  height  height/|T|")
for n, h in ((3, 27), (4, 81), (5, 243)):
    o = compile_program(gen_general(n, h))
    r = run_deterministic(o.tileset, o.seed, SimLimits(max_tiles=400000))
    e = extents(r.assembly)
    print(f"{n:2d}  {h:3d}  {len(o.tileset):5d}   {e['y_extent']:5d}      "
          f"{e['y_extent'] / len(o.tileset):.3f}")
