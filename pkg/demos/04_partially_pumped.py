"""The partially pumped construction: 4825 tile types whose terminal
assemblies reach Manhattan radius 4845 from a single seed tile, with three
pumped path segments (blue, red, green) that each repeat until a blocker
cuts the last copy short.

Run:  python demos/04_partially_pumped.py
"""

from tileforge.analysis import (
    bond_path_to,
    bond_tree_parents,
    extents,
    find_partial_pumps,
    manhattan_distance,
    manhattan_radius,
)
from tileforge.compiler import compile_program
from tileforge.constructions import gen_partially
from tileforge.simulator import SimLimits, run_deterministic

out = compile_program(gen_partially())
print(f"compiled: {len(out.tileset)} tile types")

res = run_deterministic(
    out.tileset, out.seed, SimLimits(max_tiles=150000),
    mode="strict", order="depth",
)
print(f"grown: {len(res.assembly)} tiles, {res.status}")
print(f"Manhattan radius {manhattan_radius(res.assembly)} "
      f"(> |T| + 1 = {len(out.tileset) + 1}), extents {extents(res.assembly)}")

# each pumped segment is a periodic stretch of the bond path to its tip;
# the final repetition is the one the blocker truncated
parents = bond_tree_parents(res.assembly, out.tileset)
seed_pos = next(iter(res.assembly.seed_points))
for color in ("blue", "red", "green"):
    tips = [p for p, t in res.assembly.placements.items()
            if out.tileset.tile(t).color == color]
    tip = max(tips, key=lambda p: manhattan_distance(p, seed_pos))
    path = bond_path_to(res.assembly, out.tileset, tip, parents)
    runs = [r for r in find_partial_pumps(path, min_reps=2)
            if out.tileset.tile(path.tiles[r[0]]).color == color]
    start, period, reps = runs[0]
    print(f"{color:5s} pump: period {period} moves, {reps} repetitions "
          f"(path to tip {tip} is {len(path)} tiles)")
