"""Geometric and path-structure measurements over grown assemblies."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .core import Assembly, Tileset
from .simulator import AssemblySequence


class AnalysisError(ValueError):
    pass


def _require_z2(a_or_ts):
    geom = getattr(a_or_ts, "geometry", None)
    if geom is not None and geom.name != "z2":
        raise AnalysisError("this measurement is defined on the z2 geometry")


def manhattan_distance(p, q) -> int:
    return abs(p[0] - q[0]) + abs(p[1] - q[1])


def manhattan_diameter(a: Assembly) -> int:
    """Max |dx| + |dy| over placed pairs, via the rotated-coordinates trick."""
    if not a.placements:
        return 0
    pts = a.placements.keys()
    u = [x + y for x, y in pts]
    v = [x - y for x, y in pts]
    return max(max(u) - min(u), max(v) - min(v))


def manhattan_diameter_bruteforce(a: Assembly) -> int:
    """Quadratic oracle for the fast diameter."""
    pts = list(a.placements)
    best = 0
    for i, p in enumerate(pts):
        for q in pts[i + 1:]:
            best = max(best, manhattan_distance(p, q))
    return best


def manhattan_radius(a: Assembly, seed_point=None) -> int:
    if seed_point is None:
        if len(a.seed_points) != 1:
            raise AnalysisError("radius needs a seed point")
        (seed_point,) = a.seed_points
    if seed_point not in a.placements:
        raise AnalysisError(f"seed {seed_point} not in assembly")
    return max(manhattan_distance(p, seed_point) for p in a.placements)


def extents(a: Assembly) -> dict:
    """Occupied spans: counts of rows/columns, plus raw coordinate ranges."""
    xs = [p[0] for p in a.placements]
    ys = [p[1] for p in a.placements]
    return {
        "x_extent": max(xs) - min(xs) + 1,
        "y_extent": max(ys) - min(ys) + 1,
        "x_range": [min(xs), max(xs)],
        "y_range": [min(ys), max(ys)],
    }


# ---------------------------------------------------------------------------
# Growth tree and paths
# ---------------------------------------------------------------------------


@dataclass
class Path:
    points: list
    tiles: list

    def __post_init__(self):
        if len(set(self.points)) != len(self.points):
            raise AnalysisError("paths are self-avoiding")

    def __len__(self):
        return len(self.points)


@dataclass
class GrowthTree:
    root: tuple
    parent: dict  # point -> point (root absent)
    children: dict  # point -> list of points

    def leaf_paths(self, assembly: Assembly) -> list[Path]:
        out = []
        for leaf in self._leaves():
            pts = [leaf]
            while pts[-1] != self.root:
                pts.append(self.parent[pts[-1]])
            pts.reverse()
            out.append(Path(pts, [assembly.placements[p] for p in pts]))
        return out

    def longest_path(self, assembly: Assembly) -> Path:
        depth = {self.root: 0}
        best = self.root
        stack = [self.root]
        while stack:
            p = stack.pop()
            for c in self.children.get(p, ()):
                depth[c] = depth[p] + 1
                if depth[c] > depth[best]:
                    best = c
                stack.append(c)
        pts = [best]
        while pts[-1] != self.root:
            pts.append(self.parent[pts[-1]])
        pts.reverse()
        return Path(pts, [assembly.placements[p] for p in pts])

    def branch_points(self) -> list:
        return [p for p, cs in self.children.items() if len(cs) > 1]

    def _leaves(self):
        return [
            p
            for p in ([self.root] + list(self.parent))
            if not self.children.get(p)
        ]


def extract_paths(a: Assembly, seq: AssemblySequence) -> GrowthTree:
    """Growth tree: each tile hangs off the neighbour it bonded to first."""
    if len(a.seed_points) != 1:
        raise AnalysisError("growth tree needs a single-tile seed")
    (root,) = a.seed_points
    parent: dict = {}
    children: dict = {root: []}
    for point, _tid, par in seq:
        if par is None:
            raise AnalysisError(f"attachment at {point} has no recorded parent")
        parent[point] = par
        children.setdefault(par, []).append(point)
        children.setdefault(point, [])
    return GrowthTree(root=root, parent=parent, children=children)


def bond_tree_parents(a: Assembly, ts: Tileset) -> dict:
    """Breadth-first parent map over the binding graph, rooted at the seed."""
    from .core import binding_graph

    if len(a.seed_points) != 1:
        raise AnalysisError("bond tree needs a single-tile seed")
    (root,) = a.seed_points
    graph = binding_graph(a, ts)
    parent: dict = {root: None}
    queue = [root]
    head = 0
    while head < len(queue):
        p = queue[head]
        head += 1
        for q, _w in graph[p]:
            if q not in parent:
                parent[q] = p
                queue.append(q)
    return parent


def bond_path_to(a: Assembly, ts: Tileset, dest, parents: dict | None = None) -> Path:
    """The unique bond-tree path from the seed to ``dest``."""
    if parents is None:
        parents = bond_tree_parents(a, ts)
    pts = [dest]
    while parents[pts[-1]] is not None:
        pts.append(parents[pts[-1]])
    pts.reverse()
    return Path(pts, [a.placements[p] for p in pts])


# ---------------------------------------------------------------------------
# Caves
# ---------------------------------------------------------------------------


def find_caves(path: Path, orientation: str = "vertical") -> list[tuple[int, int]]:
    """Index pairs (i, j), j > i+1, where the path dips strictly below a
    prefix-maximum level and comes back to it: y_i == y_j, every earlier
    y_k <= y_i, and every y_k strictly between is < y_i.  ``horizontal``
    swaps the roles of the coordinates.
    """
    coord = 1 if orientation == "vertical" else 0
    ys = [p[coord] for p in path.points]
    caves = []
    prefix_max = None
    for i, y in enumerate(ys):
        if prefix_max is not None and y < prefix_max:
            continue
        prefix_max = y
        j = None
        for k in range(i + 1, len(ys)):
            if ys[k] >= y:
                j = k
                break
        if j is not None and j > i + 1 and ys[j] == y:
            caves.append((i, j))
    return caves


# ---------------------------------------------------------------------------
# Pumping
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PumpWitness:
    i: int
    j: int


def _is_monotone(vals) -> bool:
    inc = all(b >= a for a, b in zip(vals, vals[1:]))
    dec = all(b <= a for a, b in zip(vals, vals[1:]))
    return inc or dec


def monotone_pump_check(path: Path) -> PumpWitness | None:
    """A path monotone in x or in y that repeats a tile type is pumpable;
    return the first repeat as a witness after verifying a 3-fold expansion.
    """
    xs = [p[0] for p in path.points]
    ys = [p[1] for p in path.points]
    if not (_is_monotone(xs) or _is_monotone(ys)):
        return None
    seen: dict[int, int] = {}
    for j, t in enumerate(path.tiles):
        if t in seen:
            w = PumpWitness(seen[t], j)
            if verify_pump_witness(path, w):
                return w
            return None
        seen[t] = j
    return None


def verify_pump_witness(path: Path, w: PumpWitness, reps: int = 3) -> bool:
    """Translate path[i..j) by multiples of the period vector; repetition is
    self-consistent when overlapping positions agree on tile type and the
    junctions carry the same displacement."""
    i, j = w.i, w.j
    if not (0 <= i < j < len(path.points)):
        return False
    if path.tiles[i] != path.tiles[j]:
        return False
    vec = (
        path.points[j][0] - path.points[i][0],
        path.points[j][1] - path.points[i][1],
    )
    occupied: dict = {}
    for r in range(reps):
        for k in range(i, j):
            p = (
                path.points[k][0] + r * vec[0],
                path.points[k][1] + r * vec[1],
            )
            t = path.tiles[k]
            if occupied.setdefault(p, t) != t:
                return False
    return True


def find_partial_pumps(path: Path, min_reps: int = 2) -> list[tuple[int, int, int]]:
    """Maximal runs (start, period, reps) with reps >= min_reps where the
    (tile type, displacement) word repeats a block consecutively.

    A trailing truncated occurrence counts as one repetition: a partially
    pumped path by nature ends each pumped part in a copy cut short by a
    blocker, and that blocked copy is part of the repetition structure.
    """
    if min_reps < 2:
        raise AnalysisError("min_reps must be >= 2")
    n = len(path.points) - 1
    if n < 2:
        return []
    dirs = {(0, 1): 0, (1, 0): 1, (0, -1): 2, (-1, 0): 3}
    word = np.empty(n, dtype=np.int64)
    for k in range(n):
        dx = path.points[k + 1][0] - path.points[k][0]
        dy = path.points[k + 1][1] - path.points[k][1]
        word[k] = path.tiles[k] * 4 + dirs[(dx, dy)]
    runs = []
    for p in range(1, n // (min_reps - 1) + 1):
        if p > n - 1:
            break
        eq = word[p:] == word[:-p]
        if not eq.any():
            continue
        # maximal stretches of consecutive True
        padded = np.concatenate(([False], eq, [False]))
        edges = np.flatnonzero(np.diff(padded.astype(np.int8)))
        for s, e in zip(edges[::2], edges[1::2]):
            length = (e - s) + p  # total periodic stretch in letters
            full, rem = divmod(length, p)
            if full < 1:
                continue
            # a blocked trailing copy counts once it covers half the block
            reps = full + (1 if 2 * rem >= p else 0)
            if reps >= min_reps:
                runs.append((int(s), int(p), int(reps)))
    return _drop_subsumed(runs, n)


def _drop_subsumed(runs, n):
    """Keep runs not contained in a kept run of smaller dividing period."""
    runs = sorted(runs, key=lambda r: (r[1], r[0]))
    kept: list = []
    for start, period, reps in runs:
        end = min(start + period * reps, n)
        subsumed = False
        for ks, kp, kr in kept:
            ke = min(ks + kp * kr, n)
            if ks <= start and end <= ke and period % kp == 0:
                subsumed = True
                break
        if not subsumed:
            kept.append((start, period, reps))
    return kept


def expand_partial_pump(path: Path, run: tuple[int, int, int]) -> bool:
    """Re-derive the periodic stretch at the reported start and check that
    it supports the claimed repetition count (final copy may be truncated).
    """
    start, period, reps = run
    n = len(path.points) - 1
    k = start
    while k < n - period:
        if path.tiles[k] != path.tiles[k + period]:
            break
        d1 = (
            path.points[k + 1][0] - path.points[k][0],
            path.points[k + 1][1] - path.points[k][1],
        )
        d2 = (
            path.points[k + period + 1][0] - path.points[k + period][0],
            path.points[k + period + 1][1] - path.points[k + period][1],
        )
        if d1 != d2:
            break
        k += 1
    full, rem = divmod((k - start) + period, period)
    found = full + (1 if 2 * rem >= period else 0)
    return found >= reps


# ---------------------------------------------------------------------------
# Efficiency report
# ---------------------------------------------------------------------------


@dataclass
class EfficiencyReport:
    tile_types: int
    seed_size: int
    diameter: int
    radius: int
    x_extent: int
    y_extent: int
    efficient: bool
    extra: dict = field(default_factory=dict)

    def to_json(self) -> str:
        doc = {
            "tile_types": self.tile_types,
            "seed_size": self.seed_size,
            "diameter": self.diameter,
            "radius": self.radius,
            "x_extent": self.x_extent,
            "y_extent": self.y_extent,
            "efficient": self.efficient,
        }
        doc.update(self.extra)
        return json.dumps(doc, ensure_ascii=False, separators=(", ", ": ")) + "\n"


def efficiency_report(ts: Tileset, seed: Assembly, terminals) -> EfficiencyReport:
    """A system is efficient when every provided terminal assembly has
    Manhattan diameter strictly larger than |T| + |seed|."""
    terminals = list(terminals)
    if not terminals:
        raise AnalysisError("need at least one terminal assembly")
    bound = len(ts) + len(seed.placements)
    diam = [manhattan_diameter(a) for a in terminals]
    (seed_point,) = seed.seed_points
    a0 = terminals[0]
    ext = extents(a0)
    return EfficiencyReport(
        tile_types=len(ts),
        seed_size=len(seed.placements),
        diameter=diam[0],
        radius=manhattan_radius(a0, seed_point),
        x_extent=ext["x_extent"],
        y_extent=ext["y_extent"],
        efficient=all(d > bound for d in diam),
        extra={"x_range": ext["x_range"], "y_range": ext["y_range"],
               "assembly_size": len(a0)},
    )
