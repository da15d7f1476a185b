"""Beyond the grid: the Baumslag-Solitar group B(1,2) and the hyperbolic
tree geometry.  Positions are exact group elements, so glue bookkeeping
works unchanged; only adjacency differs.

Run:  python demos/06_geometries.py
"""

from tileforge.automata import LIST_OF_NATURALS, tree_grammar_to_hyperbolic_tas
from tileforge.geometry import BS12, HypGeometry
from tileforge.simulator import SimLimits, run_exhaustive

# --- B(1,2): <a, b | ba = a^2 b> -----------------------------------------
p = BS12.IDENTITY
print("identity:", p)
print("  .a  ->", BS12.step(p, BS12.A_POS))
print("  .b  ->", BS12.step(p, BS12.B_POS))
ba = BS12.step(BS12.step(p, BS12.B_POS), BS12.A_POS)
aab = BS12.step(BS12.step(BS12.step(p, BS12.A_POS), BS12.A_POS), BS12.B_POS)
print("b.a =", ba, " a.a.b =", aab, " equal:", ba == aab)

walk = BS12.IDENTITY
for d in (BS12.B_POS, BS12.B_POS, BS12.A_POS, BS12.B_NEG):
    walk = BS12.step(walk, d)
print("walk b b a b^-1 lands on", walk, "= num/2^exp at level",
      f"{walk[0]}/2^{walk[1]} @ {walk[2]}")

# --- hyperbolic tree: grammar derivations as assemblies -------------------
geom = HypGeometry(3)
print("\nhyp-k3 sides:", geom.side_names)
print("children of the root:", [q for _d, q in geom.neighbors((0, 0))])

ts, seed = tree_grammar_to_hyperbolic_tas(LIST_OF_NATURALS, 2)
print(f"\nlist-of-naturals grammar -> {len(ts)} tiles on {ts.geometry.name}")
terminals, complete = run_exhaustive(ts, seed, SimLimits(max_tiles=6, max_branches=10**5))
print(f"terminal assemblies up to 6 tiles: {len(terminals)} (complete: {complete})")
for a in sorted(terminals, key=len):
    names = [ts.tile(t).name for _p, t in sorted(a.placements.items())]
    print("  ", names)
