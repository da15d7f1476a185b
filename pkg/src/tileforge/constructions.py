"""Generators for the three reference constructions.

Each generator resolves all arithmetic and emits a program of literal
instructions.  ``gen_eff(n)`` produces the efficient-path family: 38 + 4n
tile types whose unique terminal height is 27 + 5n rows.  ``gen_general``
iterates a shrinking cave to approach height 2|T|.  ``gen_partially`` is the
fixed 4825-tile system whose terminal assemblies have Manhattan radius 4845
and contain three partially pumped path segments.
"""

from __future__ import annotations

from .dsl import (
    Bind,
    CurrentTile,
    DiscreteVect,
    EraseAfter,
    MoveX,
    MoveY,
    NextTile,
    PrevTile,
    Program,
    Pump,
    Repeat,
    RewindBy,
    RewindTo,
    Seed,
    SetColor,
)


class ParamError(ValueError):
    pass


def gen_eff(n: int = 0) -> Program:
    """Efficient-path construction with n extra column tiles per segment.

    n = 0 is the 38-tile baseline of height 27; each unit of n adds 4 tile
    types and 5 rows of terminal height.
    """
    if n < 0:
        raise ParamError("gen_eff needs n >= 0")
    m = n + 3  # column parameter of the source program; its figure uses 3
    instrs = [
        Seed(7, 0),
        MoveY(3),
        CurrentTile("a"),
        MoveY(m),
        CurrentTile("a1"),
        MoveX(-2),
        MoveY(3),
        CurrentTile("b"),
        MoveY(1),
        CurrentTile("c"),
        MoveY(m - 1),
        CurrentTile("b1"),
        MoveX(-5),
        CurrentTile("gr"),
        MoveY(2),
        CurrentTile("gr1"),
        MoveY(1),
        CurrentTile("gr2"),
        MoveY(m - 1),
        MoveX(1),
        MoveY(-m - 1),
        CurrentTile("bot"),
        MoveX(2),
        Bind("N", "a"),
        RewindTo("a1"),
        MoveX(1),
        MoveY(1),
        MoveX(-1),
        Bind("N", "gr1"),
        RewindTo("bot"),
        RewindBy(1),
        MoveX(1),
        Bind("N", "c"),
        RewindTo("b1"),
        MoveY(1),
        MoveX(-1),
        Bind("N", "gr2"),
    ]
    return Program(tuple(instrs))


def gen_eff_stage_blockers(n: int = 0) -> list[list[tuple[int, int]]]:
    """Phantom blocker sites freezing four growth stages for rendering:
    the bare seed, the main path climbing, the finished main path with its
    first repeat, and (no blockers) the terminal assembly."""
    m = n + 3
    branch_stops = [(2, 3 * m + 8), (8, m + 3), (2, 2 * m + 8), (5, 2 * m + 7)]
    stage_seed = [(7, 1)] + branch_stops
    stage_climb = [(0, 2 * m + 10)] + branch_stops
    return [stage_seed, stage_climb, branch_stops, []]


def gen_general(n: int, h: int) -> Program:
    """Iterated-cave construction; the source invocation is (n, h) = (8, 10).

    Needs n >= 2 and h >= max(3, n + 1) so every column segment stays
    positive through the n - 2 shrinking iterations.
    """
    if n < 2:
        raise ParamError("gen_general needs n >= 2")
    if h < max(3, n + 1):
        raise ParamError("gen_general needs h >= max(3, n + 1)")
    instrs = [
        Seed(3**n + n, 0),
        MoveY(2),
        CurrentTile("a"),
        MoveY(h - 2),
        CurrentTile("c"),
        MoveX(-(3 ** (n - 1)) - n),
        CurrentTile("b"),
        MoveY(h),
        MoveX(1),
        MoveY(-h + 1),
        CurrentTile("d"),
        MoveX(2 * 3 ** (n - 2)),
        Bind("N", "a"),
        RewindTo("c"),
        NextTile("b0", "b"),
        NextTile("b1", "b0"),
        PrevTile("d0", "d"),
    ]
    bt, dt = "b1", "d0"
    hh = h - 3
    for k in range(n - 2, 0, -1):
        an, cn = f"an{k}", f"cn{k}"
        instrs += [
            MoveY(1),
            CurrentTile(an),
            MoveY(hh),
            CurrentTile(cn),
            MoveX(-(3**k) + k),
            Bind("N", bt),
            RewindTo(dt),
            MoveX(2 * 3 ** (k - 1) - k),
            Bind("N", an),
        ]
        nbt, ndt = f"b{n - k + 2}", f"d{n - k + 1}"
        instrs += [
            NextTile(nbt, bt),
            PrevTile(ndt, dt),
            RewindTo(cn),
        ]
        bt, dt = nbt, ndt
        hh -= 1
    return Program(tuple(instrs))


def gen_partially() -> Program:
    """The fixed partially-pumped construction (4825 tile types)."""
    x2 = 40
    tot = 21 * 15 - 1 - x2
    x0 = 15
    x1 = (tot - x0) // 3 - 15

    up_column = Repeat(15, (Repeat(20, (MoveY(2), MoveX(1))), MoveX(1)))
    down_column = Repeat(15, (Repeat(20, (MoveY(-2), MoveX(-1))), MoveX(-1)))

    distx = tot - x0 - x1 + x2 + 1
    disty = 15 * 40

    instrs = [
        Seed(0, 0),
        MoveY(1),
        CurrentTile("a0"),
        # the part that will be repeated
        up_column,
        NextTile("a", "a0"),
        # blocker for the partially pumped paths
        MoveX(1),
        MoveY(-1),
        MoveX(-2),
        # back down
        down_column,
        # bottom of the construction
        RewindBy(6),
        CurrentTile("c"),
        EraseAfter("c"),
        MoveY(-1),
        MoveX(x0),
        CurrentTile("start0"),
        MoveX(x1),
        CurrentTile("start1"),
        MoveX(tot - x1 - x0),
        CurrentTile("start2"),
        # first exit path
        RewindTo("start2"),
        Pump((SetColor("blue"), DiscreteVect(16, 16 * 15 - 3))),
        RewindBy(3),
        MoveX(120),
        MoveY(2),
        MoveX(-1),
        MoveY(-1),
        MoveX(-x1 - x0 - 5),
        Bind("N", "a"),
        # second exit path
        RewindTo("start1"),
        Pump((SetColor("red"), DiscreteVect(distx // 2, disty // 2))),
        RewindBy(51),
        MoveX(10),
        Repeat(7, (Repeat(20, (MoveY(2), MoveX(1))), MoveX(1))),
        MoveX(x0 + 4),
        MoveY(2),
        MoveX(-1),
        MoveY(-1),
        MoveX(-x0 - 4),
        Bind("N", "a"),
        # final exit path, closely following the repeated part
        RewindTo("start0"),
        MoveY(1),
        MoveX(1),
        Pump((SetColor("green"), Repeat(149, (MoveY(2), MoveX(1))))),
        MoveX(2),
        Repeat(2, (Repeat(148, (MoveY(2), MoveX(1))), MoveX(2))),
        MoveX(10),
        MoveY(2),
        MoveX(-1),
        MoveY(-1),
        MoveX(-2),
        Bind("N", "a"),
    ]
    return Program(tuple(instrs))
