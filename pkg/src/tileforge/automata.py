"""Automata-theoretic views of temperature-1 systems.

A single-seeded z2 tileset induces a regular tree grammar whose nonterminals
are open boundaries (bond side, glue).  Terms of the grammar describe
assembly sequences by a fixed depth-first interpretation; the interpretation
can fail geometrically (site already occupied by a different tile), which is
exactly the gap exploited by the eight-tile counterexample fixture.

The other direction: an NFA becomes a one-row tileset whose capped terminal
rows spell accepted words, and a regular tree grammar of bounded degree
becomes a tileset on the hyperbolic tree geometry.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .core import NULL_GLUE, Assembly, TileType, Tileset
from .geometry import Z2, HypGeometry
from .simulator import AssemblySequence

_DIRNAMES = ("No", "Ea", "So", "We")
_SIDE_LETTERS = ("N", "E", "S", "W")
_LEAF_LETTERS = ("n", "e", "s", "w")


class GrammarError(ValueError):
    pass


class DescribeError(ValueError):
    """The term describes no producible assembly."""


# ---------------------------------------------------------------------------
# TAS -> tree grammar
# ---------------------------------------------------------------------------


def _child_sides(bond: int) -> tuple[int, int, int]:
    """Open sides of a tile bonded on ``bond``, in the written rule order."""
    return ((bond + 1) % 4, (bond + 2) % 4, (bond + 3) % 4)


def _recursion_sides(bond: int) -> tuple[int, int, int]:
    """Interpretation order of the open sides (for a north-bonded tile the
    sequence is east, west, south)."""
    return ((bond + 1) % 4, (bond + 3) % 4, (bond + 2) % 4)


@dataclass
class TileTreeGrammar:
    """Boundary grammar of a single-seeded z2 system.

    A nonterminal (b, g) stands for an open boundary that a tile carrying
    glue g on side b would close; its expansions are exactly the tiles doing
    so, and every nonterminal may instead stop as a terminal leaf.
    """

    tileset: Tileset
    seed_tile: int
    rules: dict = field(default_factory=dict)  # (bond side, glue) -> [tile ids]

    def expansions(self, bond: int, glue: int) -> list[int]:
        return self.rules.get((bond, glue), [])

    def axiom_children(self) -> list[tuple[int, int]]:
        """Boundaries of the seed in N, E, S, W order as (bond, glue)."""
        seed = self.tileset.tile(self.seed_tile)
        return [((d + 2) % 4, seed.sides[d]) for d in range(4)]

    def nonterminals(self) -> set[tuple[int, int]]:
        out = set(self.rules)
        out.update(self.axiom_children())
        for tids in self.rules.values():
            for tid in tids:
                t = self.tileset.tile(tid)
                for b, g in _tile_children(t, None):
                    out.add((b, g))
        return out

    def to_text(self) -> str:
        lines = []
        seed = self.tileset.tile(self.seed_tile)
        args = ", ".join(
            f"{_SIDE_LETTERS[b]}_{g}" for b, g in self.axiom_children()
        )
        lines.append(f"S -> Sigma({args})")
        for (b, g), tids in sorted(self.rules.items()):
            for tid in tids:
                t = self.tileset.tile(tid)
                kids = ", ".join(
                    f"{_SIDE_LETTERS[cb]}_{cg}" for cb, cg in _tile_children(t, b)
                )
                lines.append(f"{_SIDE_LETTERS[b]}_{g} -> {_DIRNAMES[b]}({kids})")
        for b, g in sorted(self.nonterminals()):
            lines.append(
                f"{_SIDE_LETTERS[b]}_{g} -> {_LEAF_LETTERS[b]}_{g}"
            )
        return "\n".join(lines) + "\n"


def _tile_children(t: TileType, bond: int | None) -> list[tuple[int, int]]:
    """Child boundaries of tile t bonded on ``bond`` (None: all four).

    The child across side Y will bond on its opposite side and must carry
    t's Y glue there.
    """
    sides = range(4) if bond is None else _child_sides(bond)
    return [((y + 2) % 4, t.sides[y]) for y in sides]


def tas_to_tree_grammar(ts: Tileset, seed: Assembly) -> TileTreeGrammar:
    if ts.geometry.name != "z2":
        raise GrammarError("tree grammar translation targets z2 systems")
    if len(seed.placements) != 1:
        raise GrammarError("needs a single-tile seed")
    (seed_tid,) = seed.placements.values()
    rules: dict = {}
    for t in ts.tiles:
        for b in range(4):
            g = t.sides[b]
            if g != NULL_GLUE:
                rules.setdefault((b, g), []).append(t.id)
    return TileTreeGrammar(tileset=ts, seed_tile=seed_tid, rules=rules)


# ---------------------------------------------------------------------------
# Terms and the "describes" interpretation
# ---------------------------------------------------------------------------
#
# A term node is either ("leaf",) or ("tile", tile_id, (child, child, child))
# with children in rule order for the node's bond side.  The root is
# ("root", seed_tile, (nC, eC, sC, wC)).


def leaf():
    return ("leaf",)


def node(tile_id: int, children) -> tuple:
    children = tuple(children)
    if len(children) != 3:
        raise GrammarError("inner nodes take exactly three children")
    return ("tile", tile_id, children)


def root(seed_tile: int, children) -> tuple:
    children = tuple(children)
    if len(children) != 4:
        raise GrammarError("the root takes four children")
    return ("root", seed_tile, children)


def term_to_assembly_sequence(
    term, seed_pos, ts: Tileset
) -> AssemblySequence:
    """Interpret a term as an assembly sequence; raise DescribeError when the
    sequence places a tile on an occupied site with a different type, or a
    node's tile does not carry the boundary glue."""
    geom = ts.geometry
    if term[0] != "root":
        raise GrammarError("term must start at the root")
    placements: dict = {}
    seq = AssemblySequence()

    def place(pos, tid, parent):
        prev = placements.get(pos)
        if prev is None:
            placements[pos] = tid
            seq.append(pos, tid, parent)
        elif prev != tid:
            raise DescribeError(
                f"site {pos} already holds tile {prev}, cannot place {tid}"
            )

    def walk(sub, pos, bond, glue, parent):
        if sub[0] == "leaf":
            return
        _kind, tid, children = sub
        t = ts.tile(tid)
        if t.sides[bond] != glue or glue == NULL_GLUE:
            raise DescribeError(
                f"tile {tid} does not bond glue {glue} on side {bond} at {pos}"
            )
        place(pos, tid, parent)
        ordered = _child_sides(bond)
        by_side = dict(zip(ordered, children))
        for y in _recursion_sides(bond):
            q = geom.step(pos, y)
            walk(by_side[y], q, (y + 2) % 4, t.sides[y], pos)

    _kind, seed_tid, children = term
    placements[seed_pos] = seed_tid
    seq.append(seed_pos, seed_tid, None)
    seed_t = ts.tile(seed_tid)
    for d, child in zip(range(4), children):
        if child[0] == "leaf":
            continue
        q = geom.step(seed_pos, d)
        walk(child, q, (d + 2) % 4, seed_t.sides[d], seed_pos)
    return seq


def sequence_assembly(seq: AssemblySequence, seed_pos) -> Assembly:
    placements = {pos: tid for pos, tid, _par in seq}
    return Assembly(placements=placements, seed_points=frozenset([seed_pos]))


def enumerate_described_assemblies(
    ts: Tileset, seed: Assembly, max_tiles: int
) -> set:
    """Placement maps of all successfully interpreted terms of at most
    ``max_tiles`` tiles (the seed included)."""
    grammar = tas_to_tree_grammar(ts, seed)
    geom = ts.geometry
    (seed_pos,) = seed.placements
    seed_tid = grammar.seed_tile
    results: set = set()

    # boundaries to expand, depth-first in the interpretation order
    def expand(pending, placements):
        results.add(frozenset(placements.items()))
        if not pending:
            return
        (pos, bond, glue), rest = pending[0], pending[1:]
        # option 1: leave the boundary as a terminal leaf
        expand(rest, placements)
        if glue == NULL_GLUE or len(placements) >= max_tiles:
            return
        for tid in grammar.expansions(bond, glue):
            prev = placements.get(pos)
            if prev is not None:
                if prev == tid:
                    # re-derivation of an existing tile adds nothing new
                    continue
                continue  # occupied by a different tile: interpretation fails
            t = ts.tile(tid)
            children = [
                (geom.step(pos, y), (y + 2) % 4, t.sides[y])
                for y in _recursion_sides(bond)
            ]
            placements[pos] = tid
            expand(tuple(children) + rest, placements)
            del placements[pos]

    seed_t = ts.tile(seed_tid)
    start = tuple(
        (geom.step(seed_pos, d), (d + 2) % 4, seed_t.sides[d]) for d in range(4)
    )
    expand(start, {seed_pos: seed_tid})
    return results


# ---------------------------------------------------------------------------
# NFA -> TAS
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NFA:
    states: tuple
    alphabet: tuple
    delta: tuple  # (state, letter, state) triples
    start: object
    finals: frozenset

    def __post_init__(self):
        if self.start not in self.states:
            raise GrammarError("start state missing")
        for q, s, q2 in self.delta:
            if q not in self.states or q2 not in self.states or s not in self.alphabet:
                raise GrammarError(f"bad transition {(q, s, q2)}")
        if not self.finals <= set(self.states):
            raise GrammarError("finals must be states")

    def accepts(self, word) -> bool:
        current = {self.start}
        for letter in word:
            current = {q2 for q, s, q2 in self.delta if q in current and s == letter}
            if not current:
                return False
        return bool(current & self.finals)


def nfa_from_json(text: str) -> NFA:
    doc = json.loads(text)
    return NFA(
        states=tuple(doc["states"]),
        alphabet=tuple(doc["alphabet"]),
        delta=tuple(tuple(t) for t in doc["delta"]),
        start=doc["start"],
        finals=frozenset(doc["finals"]),
    )


def nfa_to_json(nfa: NFA) -> str:
    doc = {
        "states": list(nfa.states),
        "alphabet": list(nfa.alphabet),
        "delta": [list(t) for t in nfa.delta],
        "start": nfa.start,
        "finals": sorted(nfa.finals),
    }
    return json.dumps(doc, ensure_ascii=False, separators=(", ", ": ")) + "\n"


def nfa_to_tas(nfa: NFA) -> tuple[Tileset, Assembly]:
    """One-dimensional system: the seed offers the start state eastward, a
    transition tile consumes a state and offers its successor, and a cap
    tile closes a final state.  Capped terminal rows spell accepted words.
    """
    state_glue = {q: i + 1 for i, q in enumerate(nfa.states)}
    letter_glue = {s: len(nfa.states) + 1 + i for i, s in enumerate(nfa.alphabet)}
    tiles = [
        TileType(
            id=0,
            sides=(NULL_GLUE, state_glue[nfa.start], NULL_GLUE, NULL_GLUE),
            name="σ",
        )
    ]
    for q, s, q2 in nfa.delta:
        tiles.append(
            TileType(
                id=len(tiles),
                sides=(letter_glue[s], state_glue[q2], NULL_GLUE, state_glue[q]),
                name=f"d[{q},{s},{q2}]",
            )
        )
    for q in sorted(nfa.finals, key=str):
        tiles.append(
            TileType(
                id=len(tiles),
                sides=(NULL_GLUE, NULL_GLUE, NULL_GLUE, state_glue[q]),
                name=f"f[{q}]",
            )
        )
    ts = Tileset(geometry=Z2, tiles=tiles)
    seed = Assembly(placements={(0, 0): 0}, seed_points=frozenset([(0, 0)]))
    return ts, seed


def row_word(a: Assembly, ts: Tileset, nfa: NFA) -> tuple | None:
    """The word spelled west-to-east by a capped row, or None when the row
    is not capped by a final-state tile."""
    (seed_pos,) = a.seed_points
    x, y = seed_pos
    letters = []
    k = 1
    while (x + k, y) in a.placements:
        name = ts.tile(a.placements[(x + k, y)]).name or ""
        if name.startswith("d["):
            letters.append(name[2:-1].split(",")[1])
            k += 1
            continue
        if name.startswith("f["):
            return tuple(letters)
        return None
    return None


# ---------------------------------------------------------------------------
# Regular tree grammars and the hyperbolic translation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GrammarRule:
    head: str
    symbol: str
    children: tuple  # nonterminal names


@dataclass(frozen=True)
class TreeGrammar:
    axiom: str
    nonterminals: tuple
    terminals: dict  # symbol -> arity
    rules: tuple  # GrammarRule

    def __post_init__(self):
        if set(self.terminals) & set(self.nonterminals):
            raise GrammarError("terminals and nonterminals must be disjoint")
        if self.axiom not in self.nonterminals:
            raise GrammarError("axiom must be a nonterminal")
        for r in self.rules:
            if r.head not in self.nonterminals:
                raise GrammarError(f"unknown head {r.head!r}")
            if self.terminals.get(r.symbol) != len(r.children):
                raise GrammarError(f"arity mismatch in {r}")
            for c in r.children:
                if c not in self.nonterminals:
                    raise GrammarError(f"unknown nonterminal {c!r}")

    @property
    def degree(self) -> int:
        return max((len(r.children) for r in self.rules), default=0)

    def rules_for(self, head: str):
        return [r for r in self.rules if r.head == head]

    def derivations(self, max_nodes: int):
        """All complete derivation trees with at most max_nodes rule nodes,
        as nested (symbol, children...) tuples."""

        def expand(head, budget):
            trees = set()
            if budget < 1:
                return trees
            for r in self.rules_for(head):
                for kids, _used in _combine(r.children, 0, budget - 1, expand):
                    trees.add((r.symbol, *kids))
            return trees

        return sorted(expand(self.axiom, max_nodes))


def _combine(children, i, budget, expand):
    """Distribute a node budget over ordered children; yields (kids, used)."""
    if i == len(children):
        yield (), 0
        return
    for sub in expand(children[i], budget):
        used = _tree_nodes(sub)
        for rest, used2 in _combine(children, i + 1, budget - used, expand):
            yield (sub,) + rest, used + used2


def _tree_nodes(tree) -> int:
    return 1 + sum(_tree_nodes(k) for k in tree[1:])


def tree_grammar_to_hyperbolic_tas(
    g: TreeGrammar, d: int
) -> tuple[Tileset, Assembly]:
    """One tile per rule on the degree-d tree geometry: the parent side
    carries the head nonterminal, child side i the i-th child nonterminal."""
    if g.degree > d:
        raise GrammarError(f"grammar degree {g.degree} exceeds {d}")
    geom = HypGeometry(max(d, 2))
    nt_glue = {nt: i + 1 for i, nt in enumerate(g.nonterminals)}
    n = geom.n_sides
    sigma_sides = [NULL_GLUE] * n
    sigma_sides[geom.CHILD0] = nt_glue[g.axiom]
    tiles = [TileType(id=0, sides=tuple(sigma_sides), name="σ")]
    for r in g.rules:
        sides = [NULL_GLUE] * n
        sides[geom.PARENT] = nt_glue[r.head]
        for i, c in enumerate(r.children):
            sides[geom.CHILD0 + i] = nt_glue[c]
        tiles.append(TileType(id=len(tiles), sides=tuple(sides), name=r.symbol))
    ts = Tileset(geometry=geom, tiles=tiles)
    root_pos = (0, 0)
    seed = Assembly(placements={root_pos: 0}, seed_points=frozenset([root_pos]))
    return ts, seed


def derivation_assembly(g: TreeGrammar, ts: Tileset, tree) -> Assembly:
    """Place a complete derivation tree on the hyperbolic geometry: the root
    rule tile below the seed's first child edge, children recursively."""
    geom = ts.geometry
    by_name: dict = {}
    for t in ts.tiles[1:]:
        by_name.setdefault(t.name, []).append(t)

    placements = {(0, 0): 0}

    def walk(sub, pos, head):
        symbol, *kids = sub
        candidates = [
            t
            for t in by_name.get(symbol, [])
            if t.sides[geom.PARENT] != NULL_GLUE
        ]
        # match on head and child arity through the rule structure
        rule_tiles = [
            t
            for t in candidates
            if _tile_matches_rule(g, t, geom, head, len(kids))
        ]
        if len(rule_tiles) != 1:
            # symbol+head+children signature is ambiguous; refine on children
            rule_tiles = [
                t
                for t in rule_tiles or candidates
                if _children_signature(g, t, geom) == _kids_heads(g, kids)
            ]
        if not rule_tiles:
            raise GrammarError(f"no tile realizes {symbol} from {head}")
        t = rule_tiles[0]
        placements[pos] = t.id
        for i, kid in enumerate(kids):
            child_head = _glue_name(g, t.sides[geom.CHILD0 + i])
            walk(kid, geom.step(pos, geom.CHILD0 + i), child_head)

    walk(tree, geom.step((0, 0), geom.CHILD0), g.axiom)
    return Assembly(placements=placements, seed_points=frozenset([(0, 0)]))


def _glue_name(g: TreeGrammar, glue: int) -> str | None:
    if glue == NULL_GLUE:
        return None
    return g.nonterminals[glue - 1]


def _tile_matches_rule(g, t, geom, head, arity) -> bool:
    if _glue_name(g, t.sides[geom.PARENT]) != head:
        return False
    kids = [
        c
        for i in range(geom.k)
        if (c := t.sides[geom.CHILD0 + i]) != NULL_GLUE
    ]
    return len(kids) == arity


def _children_signature(g, t, geom):
    return tuple(
        _glue_name(g, t.sides[geom.CHILD0 + i])
        for i in range(geom.k)
        if t.sides[geom.CHILD0 + i] != NULL_GLUE
    )


def _kids_heads(g, kids):
    heads = []
    for kid in kids:
        symbol = kid[0]
        rules = [r for r in g.rules if r.symbol == symbol]
        heads.append(rules[0].head if rules else None)
    return tuple(heads)


LIST_OF_NATURALS = TreeGrammar(
    axiom="List",
    nonterminals=("List", "Nat"),
    terminals={"nil": 0, "cons": 2, "0": 0, "s": 1},
    rules=(
        GrammarRule("List", "nil", ()),
        GrammarRule("List", "cons", ("Nat", "List")),
        GrammarRule("Nat", "0", ()),
        GrammarRule("Nat", "s", ("Nat",)),
    ),
)


# ---------------------------------------------------------------------------
# Counterexample fixtures
# ---------------------------------------------------------------------------


def _z2_tile(tid, n=0, e=0, s=0, w=0, name=None):
    return TileType(id=tid, sides=(n, e, s, w), name=name)


def fixture_regularity_gap() -> tuple[Tileset, Assembly]:
    """Eight tiles whose tree language describes sequences that are not
    producible: an unbalanced descent makes the final west row overlap the
    initial column."""
    a, b, c = 1, 2, 3
    tiles = [
        _z2_tile(0, n=a, name="t0"),
        _z2_tile(1, n=a, s=a, name="t1"),
        _z2_tile(2, e=a, s=a, name="t2"),
        _z2_tile(3, e=a, w=a, name="t3"),
        _z2_tile(4, w=a, s=b, name="t4"),
        _z2_tile(5, n=b, s=b, name="t5"),
        _z2_tile(6, n=b, w=c, name="t6"),
        _z2_tile(7, e=c, w=c, name="t7"),
    ]
    ts = Tileset(geometry=Z2, tiles=tiles)
    seed = Assembly(placements={(0, 0): 0}, seed_points=frozenset([(0, 0)]))
    return ts, seed


def chain_term(seed_tile: int, spine: list) -> tuple:
    """Build the term of a single chain: ``spine`` lists (side, tile id)
    pairs, each tile hanging on the given side of its predecessor."""

    def build_from(i):
        side, tid = spine[i]
        bond = (side + 2) % 4
        kids = []
        for y in _child_sides(bond):
            if i + 1 < len(spine) and spine[i + 1][0] == y:
                kids.append(build_from(i + 1))
            else:
                kids.append(leaf())
        return node(tid, kids)

    children = [leaf()] * 4
    if spine:
        children[spine[0][0]] = build_from(0)
    return root(seed_tile, children)


def regularity_gap_word_term(n: int, m: int, tail: int):
    """The chain term for t0 t1^n t2 t4 t5^m t6 t7^tail.  Sides are indexed
    0=N, 1=E, 2=S, 3=W; each pair is (side of predecessor, tile)."""
    spine = (
        [(0, 1)] * n
        + [(0, 2)]
        + [(1, 4)]
        + [(2, 5)] * m
        + [(2, 6)]
        + [(3, 7)] * tail
    )
    return chain_term(0, spine)


def fixture_non_context_free() -> tuple[Tileset, Assembly]:
    """Eleven tiles whose production language is not context-free."""
    a0, a1, b, c2, c1, d, e, f = range(1, 9)
    tiles = [
        _z2_tile(0, n=a0, name="t0"),
        _z2_tile(1, s=a0, n=a1, name="t1"),
        _z2_tile(2, s=a1, e=b, name="t2"),
        _z2_tile(3, e=b, w=b, name="t3"),
        _z2_tile(4, w=b, s=c2, name="t4"),
        _z2_tile(5, n=c2, s=c1, name="t5"),
        _z2_tile(6, n=c1, w=d, name="t6"),
        _z2_tile(7, e=d, w=d, name="t7"),
        _z2_tile(8, n=e, e=d, name="t8"),
        _z2_tile(9, s=e, e=f, name="t9"),
        _z2_tile(10, e=f, w=f, name="t10"),
    ]
    ts = Tileset(geometry=Z2, tiles=tiles)
    seed = Assembly(placements={(0, 0): 0}, seed_points=frozenset([(0, 0)]))
    return ts, seed


def ncf_member(word: tuple) -> bool:
    """Membership in M = {t0 t1 t2 t3^a t4 t5 t6 t7^b t8 t9 t10^c | a>b>=c}
    union {t0 t1 t2 t3^a t4 t5 t6 t7^a}."""
    w = list(word)

    def eat(tid):
        nonlocal w
        if w and w[0] == tid:
            w = w[1:]
            return True
        return False

    def count(tid):
        nonlocal w
        k = 0
        while w and w[0] == tid:
            w = w[1:]
            k += 1
        return k

    if not (eat(0) and eat(1) and eat(2)):
        return False
    alpha = count(3)
    if not (eat(4) and eat(5) and eat(6)):
        return False
    beta = count(7)
    if not w:
        return alpha == beta
    if not (eat(8) and eat(9)):
        return False
    gamma = count(10)
    if w:
        return False
    return alpha > beta >= gamma


def ncf_prefix_or_member(word: tuple) -> bool:
    """The production language: members of M plus all their prefixes.

    Every member matches the template t0 t1 t2 3^a 4 5 6 7^b [8 9 10^c], so
    a word belongs to the language iff it parses as a template prefix whose
    committed counts still admit a completion into M.
    """
    template = (
        (0, False), (1, False), (2, False), (3, True),
        (4, False), (5, False), (6, False), (7, True),
        (8, False), (9, False), (10, True),
    )
    i, n = 0, len(word)
    counts = {3: 0, 7: 0, 10: 0}
    last_consumed = -1
    for slot, (tid, is_run) in enumerate(template):
        if i >= n:
            break
        if is_run:
            while i < n and word[i] == tid:
                i += 1
                counts[tid] += 1
                last_consumed = slot
        else:
            if word[i] != tid:
                return False
            i += 1
            last_consumed = slot
    if i < n:
        return False
    a, b, c = counts[3], counts[7], counts[10]
    if last_consumed <= 6:
        return True  # the 7-run has not started; any counts complete
    if last_consumed == 7:
        return b <= a  # 7-run may still grow to a, or stop early for 8 9
    return a > b >= c


def path_word(a: Assembly, ts: Tileset) -> tuple:
    """Tile ids along a single bond path from the seed (fixture assemblies
    are paths: every tile bonds at most twice)."""
    from .core import binding_graph

    graph = binding_graph(a, ts)
    (seed_pos,) = a.seed_points
    word = [a.placements[seed_pos]]
    prev, cur = None, seed_pos
    while True:
        nxt = [q for q, _w in graph[cur] if q != prev]
        if not nxt:
            return tuple(word)
        if len(nxt) > 1:
            raise GrammarError("assembly is not a single path")
        prev, cur = cur, nxt[0]
        word.append(a.placements[cur])
