"""Elaboration of let-expression programs into tilesets, and back.

``compile_program`` folds a program into a tileset plus single-tile seed.
Each unit move mints a tile type whose trailing side carries the glue it
grew from and whose other sides are fresh, never-seen glues; ``bind``
renames a glue class so an existing tile type can re-attach at the cursor.

``export_core`` lowers every sugar instruction to the core subset (moves,
let, bind, from).  ``decompile`` rebuilds a core program from any reachable
single-seeded tileset by breadth-first search over the attachment relation.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import dsl
from .core import NULL_GLUE, Assembly, TileType, Tileset
from .geometry import Z2, Geometry


class CompileError(ValueError):
    pass


class DecompileError(ValueError):
    pass


_DIR_TO_IDX = {"N": Z2.N, "E": Z2.E, "S": Z2.S, "W": Z2.W}
_IDX_TO_DIR = {v: k for k, v in _DIR_TO_IDX.items()}


@dataclass
class CompileOutput:
    tileset: Tileset
    seed: Assembly
    trace: list  # tile ids in creation order (== list(range(|T|)))
    positions: list  # creation position per tile id
    parents: list  # (parent tile id, direction index) per tile id, None for seed
    names: dict  # identifier -> tile id, final environment
    tile_count: int = 0
    glue_count: int = 0

    def __post_init__(self):
        self.tile_count = len(self.tileset)
        self.glue_count = len(self.tileset.glue_labels())


@dataclass
class _BuildTile:
    uid: int
    sides: list
    color: str | None
    pos: tuple
    parent: tuple | None  # (uid, direction index)


class _Builder:
    """Mutable elaboration state: T_i, cursor C_i, environment alpha_i."""

    def __init__(self, geometry: Geometry):
        if geometry.name != "z2":
            raise CompileError("the move alphabet targets the z2 geometry")
        self.geom = geometry
        self.tiles: dict[int, _BuildTile] = {}
        self.trace: list[int] = []
        self.trace_pos: dict[int, int] = {}
        self.env: dict[str, int] = {}
        self.fresh = 0
        self.next_uid = 0
        self.cursor: int | None = None
        self.cursor_pos: tuple | None = None
        self.seed_pos: tuple | None = None
        self.color: str | None = None
        self.bonded_labels: set[int] = set()
        self.core_log: list = []  # replayable core events
        self._move_watchers: list = []

    # -- helpers ---------------------------------------------------------

    def new_glue(self) -> int:
        self.fresh += 1
        return self.fresh

    def require_seed(self, ins):
        if self.cursor is None:
            raise CompileError(f"{_at(ins)}: instruction before seed")

    def tile_at_trace(self, idx: int) -> int:
        return self.trace[idx]

    # -- instruction semantics -------------------------------------------

    def do_seed(self, ins: dsl.Seed):
        if self.cursor is not None:
            raise CompileError(f"{_at(ins)}: duplicate seed")
        uid = self.next_uid
        self.next_uid += 1
        sides = [self.new_glue() for _ in range(self.geom.n_sides)]
        t = _BuildTile(uid, sides, self.color, (ins.x, ins.y), None)
        self.tiles[uid] = t
        self.trace.append(uid)
        self.trace_pos[uid] = 0
        self.cursor = uid
        self.cursor_pos = (ins.x, ins.y)
        self.seed_pos = (ins.x, ins.y)
        self.core_log.append(("seed", ins.x, ins.y))

    def do_move(self, d_idx: int):
        cur = self.tiles[self.cursor]
        back = self.geom.opposite(d_idx)
        sides = [0] * self.geom.n_sides
        bond = cur.sides[d_idx]
        for d in range(self.geom.n_sides):
            sides[d] = bond if d == back else self.new_glue()
        self.bonded_labels.add(bond)
        uid = self.next_uid
        self.next_uid += 1
        pos = self.geom.step(self.cursor_pos, d_idx)
        t = _BuildTile(uid, sides, self.color, pos, (self.cursor, d_idx))
        self.tiles[uid] = t
        self.trace_pos[uid] = len(self.trace)
        self.trace.append(uid)
        self.cursor = uid
        self.cursor_pos = pos
        self.core_log.append(("move", d_idx, uid))
        for watcher in self._move_watchers:
            if watcher[0] is None:
                watcher[0] = d_idx
                watcher[1] = uid

    def do_let(self, name: str):
        self.env[name] = self.cursor

    def do_bind(self, d_idx: int, name: str, ins=None, target: int | None = None):
        if target is None:
            target = self._lookup(name, ins)
        g = self.tiles[self.cursor].sides[d_idx]
        back = self.geom.opposite(d_idx)
        h = self.tiles[target].sides[back]
        if h == NULL_GLUE or g == NULL_GLUE:
            raise CompileError(f"{_at(ins)}: bind touches a null glue")
        if h != g:
            for t in self.tiles.values():
                for s in (d_idx, back):
                    if t.sides[s] == h:
                        t.sides[s] = g
            self.bonded_labels.discard(h)
        self.bonded_labels.add(g)
        self.core_log.append(("bind", d_idx, self.cursor, target))

    def do_from(self, name: str, ins=None):
        target = self._lookup(name, ins)
        self.cursor = target
        self.cursor_pos = self.tiles[target].pos
        self.core_log.append(("jump", target))

    def do_rewind_by(self, k: int, ins=None):
        idx = self.trace_pos[self.cursor] - k
        if idx < 0:
            raise CompileError(f"{_at(ins)}: rewindBy {k} goes past the trace start")
        target = self.trace[idx]
        self.cursor = target
        self.cursor_pos = self.tiles[target].pos
        self.core_log.append(("jump", target))

    def do_next_prev(self, ins, delta: int):
        src = self._lookup(ins.source, ins)
        idx = self.trace_pos[src] + delta
        if not (0 <= idx < len(self.trace)):
            raise CompileError(f"{_at(ins)}: trace neighbour out of range")
        self.env[ins.name] = self.trace[idx]

    def do_erase_after(self, name: str, ins=None):
        target = self._lookup(name, ins)
        cut = self.trace_pos.get(target)
        if cut is None:
            raise CompileError(f"{_at(ins)}: eraseAfter target not in trace")
        removed = self.trace[cut + 1:]
        if removed:
            gone = set(removed)
            del self.trace[cut + 1:]
            for uid in removed:
                del self.tiles[uid]
                del self.trace_pos[uid]
            self.env = {k: v for k, v in self.env.items() if v not in gone}
            self.core_log = [
                ev for ev in self.core_log if not _event_mentions(ev, gone)
            ]
        self.cursor = target
        self.cursor_pos = self.tiles[target].pos
        self.core_log.append(("jump", target))

    def _lookup(self, name: str, ins=None) -> int:
        try:
            return self.env[name]
        except KeyError:
            raise CompileError(f"{_at(ins)}: unbound identifier {name!r}") from None


def _event_mentions(ev, gone: set) -> bool:
    kind = ev[0]
    if kind == "move":
        return ev[2] in gone
    if kind == "jump":
        return ev[1] in gone
    if kind == "bind":
        return ev[2] in gone or ev[3] in gone
    return False


def _at(ins) -> str:
    span = getattr(ins, "span", None)
    return f"{span[0]}:{span[1]}" if span else "?"


def staircase_moves(dx: int, dy: int) -> list[str]:
    """Evenly interleaved unit moves from the origin toward (dx, dy).

    |dx| + |dy| moves total, the majority axis leading, minority steps
    spread by the midpoint rule so every prefix stays within one step of
    the straight segment.
    """
    sx = "E" if dx >= 0 else "W"
    sy = "N" if dy >= 0 else "S"
    ax, ay = abs(dx), abs(dy)
    if ax == 0:
        return [sy] * ay
    if ay == 0:
        return [sx] * ax
    major, minor = (ay, ax) if ay >= ax else (ax, ay)
    cmaj, cmin = (sy, sx) if ay >= ax else (sx, sy)
    moves = []
    err = major // 2
    for _ in range(major):
        moves.append(cmaj)
        err += minor
        if err >= major:
            err -= major
            moves.append(cmin)
    return moves


def _execute(builder: _Builder, instrs, gensym: list) -> None:
    for ins in instrs:
        if isinstance(ins, dsl.Seed):
            builder.do_seed(ins)
            continue
        if isinstance(ins, dsl.SetColor):
            builder.color = ins.color
            continue
        builder.require_seed(ins)
        if isinstance(ins, dsl.Move):
            builder.do_move(_DIR_TO_IDX[ins.d])
        elif isinstance(ins, dsl.MoveX):
            d = _DIR_TO_IDX["E" if ins.n >= 0 else "W"]
            for _ in range(abs(ins.n)):
                builder.do_move(d)
        elif isinstance(ins, dsl.MoveY):
            d = _DIR_TO_IDX["N" if ins.n >= 0 else "S"]
            for _ in range(abs(ins.n)):
                builder.do_move(d)
        elif isinstance(ins, (dsl.Let, dsl.CurrentTile)):
            builder.do_let(ins.name)
        elif isinstance(ins, dsl.Bind):
            builder.do_bind(_DIR_TO_IDX[ins.d], ins.name, ins)
        elif isinstance(ins, (dsl.From, dsl.RewindTo)):
            builder.do_from(ins.name, ins)
        elif isinstance(ins, dsl.RewindBy):
            builder.do_rewind_by(ins.k, ins)
        elif isinstance(ins, dsl.NextTile):
            builder.do_next_prev(ins, +1)
        elif isinstance(ins, dsl.PrevTile):
            builder.do_next_prev(ins, -1)
        elif isinstance(ins, dsl.EraseAfter):
            builder.do_erase_after(ins.name, ins)
        elif isinstance(ins, dsl.Repeat):
            for _ in range(ins.count):
                _execute(builder, ins.block, gensym)
        elif isinstance(ins, dsl.Pump):
            # close the repetition on itself: the exit glue of the block's
            # last tile is unified with the entry glue carried by the
            # block's first tile, so the segment can restack indefinitely
            watcher = [None, None]  # [first move direction, its tile]
            builder._move_watchers.append(watcher)
            _execute(builder, ins.block, gensym)
            builder._move_watchers.pop()
            if watcher[0] is None:
                raise CompileError(f"{_at(ins)}: pump block contains no move")
            builder.do_bind(watcher[0], None, ins, target=watcher[1])
        elif isinstance(ins, dsl.DiscreteVect):
            for d in staircase_moves(ins.dx, ins.dy):
                builder.do_move(_DIR_TO_IDX[d])
        else:
            raise CompileError(f"{_at(ins)}: unsupported instruction {ins!r}")


def compile_program(program: dsl.Program, geometry: Geometry = Z2) -> CompileOutput:
    builder = _Builder(geometry)
    _execute(builder, program.instrs, [0])
    if builder.cursor is None:
        raise CompileError("program creates no seed")

    # dense renumbering in creation order
    uid_to_id = {uid: i for i, uid in enumerate(builder.trace)}
    tiles = []
    for uid in builder.trace:
        bt = builder.tiles[uid]
        tiles.append(
            TileType(
                id=uid_to_id[uid],
                sides=tuple(bt.sides),
                name="σ" if bt.parent is None else None,
                color=bt.color,
            )
        )
    ts = Tileset(geometry=builder.geom, tiles=tiles)
    _check_glue_provenance(builder, ts)
    seed = Assembly(
        placements={builder.seed_pos: 0}, seed_points=frozenset([builder.seed_pos])
    )
    positions = [builder.tiles[uid].pos for uid in builder.trace]
    parents = [
        None
        if builder.tiles[uid].parent is None
        else (uid_to_id.get(builder.tiles[uid].parent[0]), builder.tiles[uid].parent[1])
        for uid in builder.trace
    ]
    names = {k: uid_to_id[v] for k, v in builder.env.items() if v in uid_to_id}
    out = CompileOutput(
        tileset=ts,
        seed=seed,
        trace=list(range(len(tiles))),
        positions=positions,
        parents=parents,
        names=names,
    )
    out._core_log = [  # kept for export_core
        _remap_event(ev, uid_to_id) for ev in builder.core_log
    ]
    return out


def _remap_event(ev, uid_to_id):
    kind = ev[0]
    if kind == "move":
        return ("move", ev[1], uid_to_id[ev[2]])
    if kind == "jump":
        return ("jump", uid_to_id[ev[1]])
    if kind == "bind":
        return ("bind", ev[1], uid_to_id[ev[2]], uid_to_id[ev[3]])
    return ev


def _check_glue_provenance(builder: _Builder, ts: Tileset) -> None:
    """Any label on both a side and its opposite must come from a move bond
    or a bind unification; fresh labels never collide by construction."""
    geom = ts.geometry
    for d in range(geom.n_sides // 2):
        back = geom.opposite(d)
        on_d = {t.sides[d] for t in ts.tiles} - {NULL_GLUE}
        on_back = {t.sides[back] for t in ts.tiles} - {NULL_GLUE}
        stray = (on_d & on_back) - builder.bonded_labels
        if stray:
            raise CompileError(f"glue provenance violated for labels {sorted(stray)}")


# ---------------------------------------------------------------------------
# Core export: replay the elaboration event log as core instructions.
# ---------------------------------------------------------------------------


def export_core(program: dsl.Program) -> dsl.Program:
    """Lower a program to core instructions (seed, moves, let, bind, from).

    Compiling the result reproduces the same tileset up to colors.  Programs
    containing ``eraseAfter`` fall back to decompiling their compilation,
    which is isomorphic rather than identical.
    """
    if _contains_erase(program.instrs):
        out = compile_program(program)
        return decompile(out.tileset, out.seed)
    out = compile_program(program)
    log = out._core_log
    referenced: set[int] = set()
    for ev in log:
        if ev[0] == "jump":
            referenced.add(ev[1])
        elif ev[0] == "bind":
            referenced.add(ev[3])
    instrs: list = []
    cursor = None
    for ev in log:
        kind = ev[0]
        if kind == "seed":
            instrs.append(dsl.Seed(ev[1], ev[2]))
            cursor = 0
            if 0 in referenced:
                instrs.append(dsl.Let("t0"))
        elif kind == "move":
            instrs.append(dsl.Move(_IDX_TO_DIR[ev[1]]))
            cursor = ev[2]
            if ev[2] in referenced:
                instrs.append(dsl.Let(f"t{ev[2]}"))
        elif kind == "jump":
            if ev[1] != cursor:
                instrs.append(dsl.From(f"t{ev[1]}"))
                cursor = ev[1]
        elif kind == "bind":
            instrs.append(dsl.Bind(_IDX_TO_DIR[ev[1]], f"t{ev[3]}"))
    return dsl.Program(tuple(instrs))


def _contains_erase(instrs) -> bool:
    for ins in instrs:
        if isinstance(ins, dsl.EraseAfter):
            return True
        if isinstance(ins, (dsl.Repeat, dsl.Pump)) and _contains_erase(ins.block):
            return True
    return False


# ---------------------------------------------------------------------------
# Decompilation: tileset -> core program, breadth-first over attachments.
# ---------------------------------------------------------------------------


def decompile(ts: Tileset, seed: Assembly) -> dsl.Program:
    geom = ts.geometry
    if geom.name != "z2":
        raise DecompileError("decompilation targets the z2 move alphabet")
    if len(seed.placements) != 1:
        raise DecompileError("decompilation needs a single-tile seed")
    seed_pos, seed_tile = next(iter(seed.placements.items()))

    idx = ts.attach_index()
    instrs: list = [dsl.Seed(seed_pos[0], seed_pos[1]), dsl.Let(f"t{seed_tile}")]
    reached = {seed_tile}
    bonds_done: set[frozenset] = set()
    queue = [seed_tile]
    cursor = seed_tile
    while queue:
        t0 = queue.pop(0)
        tile0 = ts.tile(t0)
        for d in range(geom.n_sides):
            g = tile0.sides[d]
            if g == NULL_GLUE:
                continue
            back = geom.opposite(d)
            for t1 in idx.get((back, g), ()):
                bond = frozenset(((t0, d), (t1, back)))
                if t1 not in reached:
                    if cursor != t0:
                        instrs.append(dsl.From(f"t{t0}"))
                    instrs.append(dsl.Move(_IDX_TO_DIR[d]))
                    instrs.append(dsl.Let(f"t{t1}"))
                    cursor = t1
                    reached.add(t1)
                    queue.append(t1)
                    bonds_done.add(bond)
                elif bond not in bonds_done:
                    if cursor != t0:
                        instrs.append(dsl.From(f"t{t0}"))
                        cursor = t0
                    instrs.append(dsl.Bind(_IDX_TO_DIR[d], f"t{t1}"))
                    bonds_done.add(bond)
    unreachable = sorted(set(range(len(ts))) - reached)
    if unreachable:
        raise DecompileError(f"tiles unreachable from the seed: {unreachable}")
    return dsl.Program(tuple(instrs))
