"""Automata views of temperature-1 systems: a tileset as a regular tree
grammar, an NFA as a one-row tileset, and the two counterexample fixtures
separating the tree language from the set of producible assemblies.

Run:  python demos/05_automata_bridges.py
"""

import itertools

from tileforge.automata import (
    NFA,
    DescribeError,
    fixture_non_context_free,
    fixture_regularity_gap,
    ncf_prefix_or_member,
    nfa_to_tas,
    path_word,
    regularity_gap_word_term,
    row_word,
    tas_to_tree_grammar,
    term_to_assembly_sequence,
)
from tileforge.compiler import compile_program
from tileforge.core import Assembly
from tileforge.dsl import parse
from tileforge.simulator import SimLimits, enumerate_producible, run_exhaustive

# --- a tileset becomes a boundary grammar -------------------------------
out = compile_program(parse("seed 0 0\nmoveN\nmoveE"))
print("tree grammar of a two-move program:")
print(tas_to_tree_grammar(out.tileset, out.seed).to_text())

# --- an NFA becomes a row tileset ----------------------------------------
nfa = NFA(
    states=("q0", "q1"),
    alphabet=("a", "b"),
    delta=(("q0", "a", "q1"), ("q1", "b", "q0"), ("q1", "a", "q1")),
    start="q0",
    finals=frozenset(["q1"]),
)
ts, seed = nfa_to_tas(nfa)
terminals, _ = run_exhaustive(ts, seed, SimLimits(max_tiles=6))
words = sorted(w for w in (row_word(a, ts, nfa) for a in terminals) if w)
accepted = sorted(
    w for k in range(5) for w in itertools.product(nfa.alphabet, repeat=k)
    if nfa.accepts(w)
)
print("terminal rows spell:", ["".join(w) for w in words])
print("NFA accepts:        ", ["".join(w) for w in accepted])

# --- the regularity gap: a term that describes nothing producible --------
ts8, _ = fixture_regularity_gap()
bad = regularity_gap_word_term(n=2, m=1, tail=10)
try:
    term_to_assembly_sequence(bad, (0, 0), ts8)
except DescribeError as err:
    print("\n8-tile fixture, pumped word:", err)

# --- the non-context-free production language ----------------------------
ts11, seed11 = fixture_non_context_free()
words = set()
for key in enumerate_producible(ts11, seed11, max_tiles=16):
    a = Assembly(placements=dict(key), seed_points=frozenset([(0, 0)]))
    words.add(path_word(a, ts11))
print(f"\n11-tile fixture: {len(words)} producible words up to 16 tiles, "
      f"all in M or its prefixes: "
      f"{all(ncf_prefix_or_member(w) for w in words)}")
