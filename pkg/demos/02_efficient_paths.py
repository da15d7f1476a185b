"""The efficient-path family: 38 + 4n tile types whose terminal assemblies
are 27 + 5n rows tall, so for n >= 17 the assembly outgrows its own
description.  The figure-sized instance (n = 17) measures 112 rows from
106 tile types.

Run:  python demos/02_efficient_paths.py
"""

import pathlib

from tileforge.analysis import efficiency_report
from tileforge.compiler import compile_program
from tileforge.constructions import gen_eff, gen_eff_stage_blockers
from tileforge.render import RenderOptions, render_svg
from tileforge.simulator import SimLimits, run_deterministic

print(" n  |T|  height  efficient")
for n in (0, 5, 10, 17, 20):
    out = compile_program(gen_eff(n))
    res = run_deterministic(out.tileset, out.seed, SimLimits(max_tiles=30000))
    rep = efficiency_report(out.tileset, out.seed, [res.assembly])
    print(f"{n:2d}  {rep.tile_types:3d}    {rep.y_extent:3d}  {rep.efficient}")

# Four growth stages of the baseline, frozen by phantom blocker sites the
# way the reference figures were produced, rendered side by side.
outdir = pathlib.Path(__file__).resolve().parent / "out"
outdir.mkdir(exist_ok=True)
out = compile_program(gen_eff(0))
for i, blockers in enumerate(gen_eff_stage_blockers(0)):
    res = run_deterministic(
        out.tileset,
        out.seed,
        SimLimits(max_tiles=10000, blocked=frozenset(blockers)),
        mode="permissive",
    )
    svg = render_svg(res.assembly, out.tileset, RenderOptions(scale=8))
    path = outdir / f"eff_stage{i}.svg"
    path.write_text(svg)
    print(f"stage {i}: {len(res.assembly):3d} tiles -> {path}")
