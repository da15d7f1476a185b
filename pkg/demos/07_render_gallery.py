"""Render a small gallery: the efficient baseline as SVG with glue labels,
the figure-sized instance, a TikZ fragment, and a schematic drawing of a
hyperbolic assembly.

Run:  python demos/07_render_gallery.py
"""

import pathlib

from tileforge.automata import LIST_OF_NATURALS, tree_grammar_to_hyperbolic_tas
from tileforge.compiler import compile_program
from tileforge.constructions import gen_eff, gen_partially
from tileforge.render import RenderOptions, render_svg, render_tikz
from tileforge.simulator import SimLimits, run_deterministic

outdir = pathlib.Path(__file__).resolve().parent / "out"
outdir.mkdir(exist_ok=True)


def save(name, text):
    path = outdir / name
    path.write_text(text)
    print(f"wrote {path} ({len(text)} bytes)")


out = compile_program(gen_eff(0))
res = run_deterministic(out.tileset, out.seed, SimLimits(max_tiles=10000))
save("eff0_glues.svg",
     render_svg(res.assembly, out.tileset, RenderOptions(scale=22, show_glues=True)))
save("eff0.tex",
     render_tikz(res.assembly, out.tileset, RenderOptions(show_glues=True)))

out17 = compile_program(gen_eff(17))
res17 = run_deterministic(out17.tileset, out17.seed, SimLimits(max_tiles=30000))
save("eff17_rotated.svg",
     render_svg(res17.assembly, out17.tileset, RenderOptions(scale=6, rotation=270)))

outp = compile_program(gen_partially())
resp = run_deterministic(outp.tileset, outp.seed, SimLimits(max_tiles=150000),
                         mode="permissive")
save("partially.svg",
     render_svg(resp.assembly, outp.tileset, RenderOptions(scale=1, offset=4)))

ts, seed = tree_grammar_to_hyperbolic_tas(LIST_OF_NATURALS, 2)
resh = run_deterministic(ts, seed, SimLimits(max_tiles=14), mode="permissive")
save("hyperbolic_schematic.svg", render_svg(resh.assembly, ts))
