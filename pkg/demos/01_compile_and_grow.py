"""Walk through the core pipeline: write a small program in the move/let/
bind/from language, elaborate it into a tileset, grow the assembly at
temperature 1, and measure the result.

Run:  python demos/01_compile_and_grow.py
"""

from tileforge.analysis import efficiency_report, extents
from tileforge.compiler import compile_program, export_core
from tileforge.dsl import parse, unparse
from tileforge.simulator import SimLimits, run_deterministic

# A hook shape: climb three tiles, step east, then hang a tile below.
# `tile corner` names the current tile so we can return to it later.
SOURCE = """\
seed 0 0
moveN
moveN
tile corner
moveE
moveS
from corner
moveW
"""

program = parse(SOURCE)
out = compile_program(program)
print(f"program of {len(program)} instructions ->",
      f"{out.tile_count} tile types, {out.glue_count} glue labels")

# Every move mints a fresh tile whose trailing side carries the glue it
# grew from, so the compiled tileset grows exactly one tile per move.
for t in out.tileset.tiles:
    print("  tile", t.id, "sides N/E/S/W =", t.sides)

# Growth: the seed is placed, then any tile that matches one neighbouring
# glue sticks.  This system is deterministic, so strict mode is happy.
res = run_deterministic(out.tileset, out.seed, SimLimits(max_tiles=100))
print("grown:", len(res.assembly), "tiles,", res.status)
print("extents:", extents(res.assembly))

report = efficiency_report(out.tileset, out.seed, [res.assembly])
print("efficient?", report.efficient,
      f"(diameter {report.diameter} vs |T|+1 = {report.tile_types + 1})")

# The sugar-free core of the same program:
print("\ncore form:")
print(unparse(export_core(program)))
