"""Growth of assemblies at temperature 1.

``run_deterministic`` drives a worklist fixpoint: a frontier site fills as
soon as exactly one tile type can bond there, and filled sites are never
revisited (no detachment).  Strict mode raises ``ConflictError`` whenever a
site could ever have accepted two distinct tile types - both when a site is
examined with two candidates, and retrospectively when a tile was placed
although a competing type had already become attachable at the same site.

``run_exhaustive`` explores every attachment choice and returns the set of
terminal assemblies, for the small nondeterministic systems produced by the
automata translations.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field

from .core import NULL_GLUE, Assembly, Tileset

ENV_MAX_TILES = "TILEFORGE_MAX_TILES"


class ConflictError(RuntimeError):
    def __init__(self, point, candidates):
        super().__init__(f"ambiguous attachment at {point}: tiles {sorted(candidates)}")
        self.point = point
        self.candidates = frozenset(candidates)


@dataclass(frozen=True)
class SimLimits:
    max_tiles: int | None = None
    bbox: tuple | None = None  # ((xmin, ymin), (xmax, ymax)) for z2
    max_branches: int | None = None
    blocked: frozenset = frozenset()

    def resolved_max(self, ts: Tileset) -> int:
        if self.max_tiles is not None:
            return self.max_tiles
        env = os.environ.get(ENV_MAX_TILES)
        if env:
            return int(env)
        return 2 * len(ts) * len(ts)

    def inside(self, p) -> bool:
        if self.bbox is None:
            return True
        (xmin, ymin), (xmax, ymax) = self.bbox
        return xmin <= p[0] <= xmax and ymin <= p[1] <= ymax


@dataclass
class AssemblySequence:
    steps: list = field(default_factory=list)  # (point, tile id, parent point | None)

    def append(self, point, tid, parent):
        self.steps.append((point, tid, parent))

    def __iter__(self):
        return iter(self.steps)

    def __len__(self):
        return len(self.steps)


@dataclass
class SimResult:
    assembly: Assembly
    status: str  # "terminal" | "truncated"
    sequence: AssemblySequence
    warnings: list = field(default_factory=list)


def attachable(a_placements, ts: Tileset, p) -> set[int]:
    """Tile ids that would bond at empty site p given current placements.

    Accepts an Assembly or a bare placement map.
    """
    if isinstance(a_placements, Assembly):
        a_placements = a_placements.placements
    geom = ts.geometry
    idx = ts.attach_index()
    out: set[int] = set()
    for d in range(geom.n_sides):
        q, dback = geom.abutting(p, d)
        if q is None:
            continue
        tid = a_placements.get(q)
        if tid is None:
            continue
        g = ts.tile(tid).sides[dback]
        if g != NULL_GLUE:
            out.update(idx.get((d, g), ()))
    return out


def _support_parent(placements, ts, p, tid):
    """First placed neighbour the new tile actually bonds to."""
    geom = ts.geometry
    t = ts.tile(tid)
    for d in range(geom.n_sides):
        q, dback = geom.abutting(p, d)
        if q is None or q not in placements:
            continue
        g = t.sides[d]
        if g != NULL_GLUE and g == ts.tile(placements[q]).sides[dback]:
            return q
    return None


def run_deterministic(
    ts: Tileset,
    seed: Assembly,
    limits: SimLimits | None = None,
    mode: str = "strict",
    rng: random.Random | None = None,
    fair: bool = True,
    tie_break=min,
    order: str = "rounds",
) -> SimResult:
    """Grow to fixpoint.

    ``order`` selects the scheduling of frontier sites: "rounds" examines
    them in breadth-first rounds, "depth" follows each new placement
    eagerly (a site is examined as soon as its first support appears).
    ``rng`` shuffles the processing order.  With ``fair=True`` the shuffle
    happens within breadth-first rounds, modelling any bounded-delay
    schedule; ``fair=False`` pops uniformly from the whole frontier.
    ``tie_break`` picks the winner of an ambiguous site in permissive mode;
    sampling several policies lets callers check claims over the whole
    terminal set of a non-directed system.
    """
    if mode not in ("strict", "permissive"):
        raise ValueError(f"bad mode {mode!r}")
    if order not in ("rounds", "depth"):
        raise ValueError(f"bad order {order!r}")
    limits = limits or SimLimits()
    geom = ts.geometry
    max_tiles = limits.resolved_max(ts)

    placements = dict(seed.placements)
    order_placed: dict = {p: 0 for p in placements}
    step_counter = 0
    seq = AssemblySequence()
    warnings: list = []
    status = "terminal"

    unfair = rng is not None and not fair
    depth_first = order == "depth"
    current: list = []
    later: list = []
    head = 0
    pending: set = set()

    def push(site):
        if site not in pending and site not in placements:
            pending.add(site)
            (current if (unfair or depth_first) else later).append(site)

    for p in placements:
        for d in range(geom.n_sides):
            q = geom.step(p, d)
            if q is not None and q not in placements and q not in limits.blocked:
                push(q)
    if not (unfair or depth_first):
        current, later = later, []

    def pop_site():
        nonlocal current, later, head
        if depth_first:
            return current.pop() if current else None
        if unfair:
            if not current:
                return None
            i = rng.randrange(len(current))
            current[i], current[-1] = current[-1], current[i]
            return current.pop()
        if head == len(current):
            if not later:
                return None
            current, later = later, []
            head = 0
            if rng is not None:
                rng.shuffle(current)
        site = current[head]
        head += 1
        return site

    while True:
        site = pop_site()
        if site is None:
            break
        pending.discard(site)
        if site in placements:
            continue
        cands = attachable(placements, ts, site)
        if not cands:
            continue
        if len(cands) > 1:
            if mode == "strict":
                raise ConflictError(site, cands)
            warnings.append(("ambiguous", site, tuple(sorted(cands))))
            tid = tie_break(cands)
        else:
            (tid,) = cands
        if len(placements) >= max_tiles:
            status = "truncated"
            break
        if not limits.inside(site):
            status = "truncated"
            continue
        placements[site] = tid
        step_counter += 1
        order_placed[site] = step_counter
        seq.append(site, tid, _support_parent(placements, ts, site, tid))
        for d in range(geom.n_sides):
            q = geom.step(site, d)
            if q is not None and q not in placements and q not in limits.blocked:
                push(q)

    assembly = Assembly(placements=placements, seed_points=seed.seed_points)
    if mode == "strict" and status == "terminal":
        _strict_recheck(placements, order_placed, ts)
    return SimResult(assembly=assembly, status=status, sequence=seq, warnings=warnings)


def _strict_recheck(placements, order_placed, ts) -> None:
    """Flag sites where a competing tile type was attachable before the site
    was filled: such a site admitted two distinct tiles at some moment, so
    some assembly sequence diverges there."""
    geom = ts.geometry
    idx = ts.attach_index()
    for site, placed_tid in placements.items():
        t_fill = order_placed[site]
        for d in range(geom.n_sides):
            q, dback = geom.abutting(site, d)
            if q is None or q not in placements:
                continue
            if order_placed[q] >= t_fill:
                continue
            g = ts.tile(placements[q]).sides[dback]
            if g == NULL_GLUE:
                continue
            for cand in idx.get((d, g), ()):
                if cand != placed_tid:
                    raise ConflictError(site, {placed_tid, cand})


def run_exhaustive(
    ts: Tileset, seed: Assembly, limits: SimLimits | None = None
) -> tuple[set, bool]:
    """All terminal assemblies reachable within limits.

    Returns (set of Assembly, complete) where ``complete`` is False when a
    limit cut the exploration and the terminal set may therefore be partial.
    """
    limits = limits or SimLimits()
    max_tiles = limits.resolved_max(ts)
    max_branch = limits.max_branches or 1_000_000

    producible, terminal, complete = _explore(ts, seed, limits, max_tiles, max_branch)
    out = {
        Assembly(placements=dict(p), seed_points=seed.seed_points) for p in terminal
    }
    return out, complete


def enumerate_producible(
    ts: Tileset, seed: Assembly, max_tiles: int, limits: SimLimits | None = None
) -> set:
    """Every producible placement map with at most max_tiles tiles."""
    limits = limits or SimLimits()
    producible, _terminal, _complete = _explore(
        ts, seed, limits, max_tiles, 10_000_000
    )
    return producible


def _explore(ts, seed, limits, max_tiles, max_branch):
    geom = ts.geometry
    start = frozenset(seed.placements.items())
    producible: set = {start}
    terminal: set = set()
    complete = True
    stack = [start]
    visited = {start}
    while stack:
        if len(visited) > max_branch:
            complete = False
            break
        state = stack.pop()
        placements = dict(state)
        moves = []
        frontier: set = set()
        for p in placements:
            for d in range(geom.n_sides):
                q = geom.step(p, d)
                if (
                    q is not None
                    and q not in placements
                    and q not in limits.blocked
                    and limits.inside(q)
                ):
                    frontier.add(q)
        for site in frontier:
            for tid in attachable(placements, ts, site):
                moves.append((site, tid))
        if not moves:
            terminal.add(state)
            continue
        if len(placements) >= max_tiles:
            complete = False
            continue
        for site, tid in moves:
            nxt = state | {(site, tid)}
            if nxt not in visited:
                visited.add(nxt)
                producible.add(nxt)
                stack.append(nxt)
    return producible, terminal, complete
