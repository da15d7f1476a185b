"""Tiles, glues, tilesets and assemblies at temperature 1.

Glue labels are interned integers; label 0 is the null glue and is the only
glue of strength 0, every other label has strength 1.  The engine hard-codes
temperature 1: a tile sticks as soon as one abutting pair of equal,
positive-strength labels exists.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .geometry import Geometry, Z2, get_geometry

NULL_GLUE = 0


class TilesetError(ValueError):
    pass


@dataclass(frozen=True)
class TileType:
    id: int
    sides: tuple[int, ...]  # glue label per side, NULL_GLUE for none
    name: str | None = None
    color: str | None = None

    def glue(self, d: int) -> int:
        return self.sides[d]


@dataclass
class Tileset:
    geometry: Geometry
    tiles: list[TileType]
    _attach_index: dict | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        n = self.geometry.n_sides
        for i, t in enumerate(self.tiles):
            if t.id != i:
                raise TilesetError(f"tile ids must be dense, got {t.id} at {i}")
            if len(t.sides) != n:
                raise TilesetError(f"tile {t.id}: expected {n} sides")

    def __len__(self) -> int:
        return len(self.tiles)

    def tile(self, tid: int) -> TileType:
        try:
            return self.tiles[tid]
        except IndexError:
            raise TilesetError(f"unknown tile id {tid}") from None

    def attach_index(self):
        """Map (side, label) -> tuple of tile ids carrying label on side."""
        if self._attach_index is None:
            idx: dict[tuple[int, int], list[int]] = {}
            for t in self.tiles:
                for d, g in enumerate(t.sides):
                    if g != NULL_GLUE:
                        idx.setdefault((d, g), []).append(t.id)
            self._attach_index = {k: tuple(v) for k, v in idx.items()}
        return self._attach_index

    def glue_labels(self) -> set[int]:
        out = set()
        for t in self.tiles:
            for g in t.sides:
                if g != NULL_GLUE:
                    out.add(g)
        return out


def back_sides(geometry: Geometry, d: int) -> tuple[int, ...]:
    """Sides of a neighbour that can abut side d of a tile.

    For Z^2 and BS(1,2) this is the single opposite side.  In the hyperbolic
    tree the parent side of a tile may face any child side of the tile above,
    depending on position.
    """
    if hasattr(geometry, "opposite"):
        return (geometry.opposite(d),)
    if d == geometry.PARENT:
        return tuple(range(geometry.CHILD0, geometry.k + 1))
    if geometry.CHILD0 <= d <= geometry.k:
        return (geometry.PARENT,)
    return (geometry.RING_PREV if d == geometry.RING_NEXT else geometry.RING_NEXT,)


def interacts(t1: TileType, t2: TileType, d: int, geometry: Geometry | None = None) -> bool:
    """True iff t2 placed across side d of t1 can form a strength-1 bond."""
    geom = geometry if geometry is not None else Z2
    g = t1.sides[d]
    return g != NULL_GLUE and any(g == t2.sides[db] for db in back_sides(geom, d))


@dataclass(eq=False)
class Assembly:
    placements: dict  # point -> tile id
    seed_points: frozenset

    def __post_init__(self):
        self.seed_points = frozenset(self.seed_points)
        missing = self.seed_points - set(self.placements)
        if missing:
            raise TilesetError(f"seed points not placed: {sorted(missing)}")

    def __len__(self) -> int:
        return len(self.placements)

    def key(self):
        return frozenset(self.placements.items())

    def __eq__(self, other):
        return (
            isinstance(other, Assembly)
            and self.placements == other.placements
            and self.seed_points == other.seed_points
        )

    def __hash__(self):
        return hash((self.key(), self.seed_points))


def binding_graph(a: Assembly, ts: Tileset) -> dict:
    """Adjacency map point -> list of (point, weight 1) over real bonds."""
    geom = ts.geometry
    graph: dict = {p: [] for p in a.placements}
    for p, tid in a.placements.items():
        t = ts.tile(tid)
        for d in range(geom.n_sides):
            q, dback = geom.abutting(p, d)
            if q is None or q not in a.placements:
                continue
            g = t.sides[d]
            if g != NULL_GLUE and g == ts.tile(a.placements[q]).sides[dback]:
                graph[p].append((q, 1))
    return graph


def is_tau_stable(a: Assembly, ts: Tileset) -> bool:
    """At temperature 1: the binding graph is connected."""
    if not a.placements:
        return True
    graph = binding_graph(a, ts)
    start = next(iter(a.placements))
    seen = {start}
    stack = [start]
    while stack:
        p = stack.pop()
        for q, _w in graph[p]:
            if q not in seen:
                seen.add(q)
                stack.append(q)
    return len(seen) == len(a.placements)


# ---------------------------------------------------------------------------
# JSON formats.  Keys are emitted in a fixed order, output is UTF-8 and
# newline-terminated so equal inputs serialize to identical bytes.
# ---------------------------------------------------------------------------


def tileset_to_json(ts: Tileset, seed: Assembly | None = None) -> str:
    geom = ts.geometry
    tiles = []
    for t in ts.tiles:
        entry: dict = {"id": t.id}
        if t.name is not None:
            entry["name"] = t.name
        if t.color is not None:
            entry["color"] = t.color
        entry["glues"] = {
            geom.side_names[d]: [g, 0 if g == NULL_GLUE else 1]
            for d, g in enumerate(t.sides)
        }
        tiles.append(entry)
    doc: dict = {"geometry": geom.name, "tiles": tiles}
    if seed is not None:
        doc["seed"] = [
            {"pos": geom.point_to_json(p), "tile": seed.placements[p]}
            for p in sorted(seed.placements)
        ]
    return json.dumps(doc, ensure_ascii=False, separators=(", ", ": ")) + "\n"


def tileset_from_json(text: str) -> tuple[Tileset, Assembly | None]:
    doc = json.loads(text)
    geom = get_geometry(doc["geometry"])
    tiles = []
    for entry in doc["tiles"]:
        sides = []
        for d in range(geom.n_sides):
            label, strength = entry["glues"][geom.side_names[d]]
            if (label == NULL_GLUE) != (strength == 0):
                raise TilesetError(
                    f"tile {entry['id']}: label {label} with strength {strength}"
                )
            sides.append(label)
        tiles.append(
            TileType(
                id=entry["id"],
                sides=tuple(sides),
                name=entry.get("name"),
                color=entry.get("color"),
            )
        )
    ts = Tileset(geometry=geom, tiles=tiles)
    seed = None
    if "seed" in doc:
        placements = {
            geom.point_from_json(e["pos"]): e["tile"] for e in doc["seed"]
        }
        seed = Assembly(placements=placements, seed_points=frozenset(placements))
    return ts, seed


def tileset_hash(ts: Tileset) -> str:
    return hashlib.sha256(tileset_to_json(ts).encode("utf-8")).hexdigest()[:16]


def assembly_to_json(a: Assembly, ts: Tileset, status: str = "terminal") -> str:
    geom = ts.geometry
    doc = {
        "tileset": tileset_hash(ts),
        "placements": [
            {"pos": geom.point_to_json(p), "tile": a.placements[p]}
            for p in sorted(a.placements)
        ],
        "status": status,
        "seed": [geom.point_to_json(p) for p in sorted(a.seed_points)],
    }
    return json.dumps(doc, ensure_ascii=False, separators=(", ", ": ")) + "\n"


def assembly_from_json(text: str, ts: Tileset) -> tuple[Assembly, str]:
    doc = json.loads(text)
    geom = ts.geometry
    placements = {
        geom.point_from_json(e["pos"]): e["tile"] for e in doc["placements"]
    }
    seeds = frozenset(geom.point_from_json(p) for p in doc.get("seed", []))
    if not seeds:
        seeds = frozenset([next(iter(placements))]) if placements else frozenset()
    return Assembly(placements=placements, seed_points=seeds), doc.get("status", "terminal")


# ---------------------------------------------------------------------------
# Tileset isomorphism: a bijection of tile ids preserving the interaction
# relation (and the seed tile, when given).  Glue labels themselves are not
# compared; only which pairs of tiles can bond across which sides matters.
# ---------------------------------------------------------------------------


def _interaction_table(ts: Tileset) -> list[set[tuple[int, int]]]:
    """For each tile, the set of (side, other tile) interactions."""
    geom = ts.geometry
    idx = ts.attach_index()
    table: list[set[tuple[int, int]]] = [set() for _ in ts.tiles]
    for t in ts.tiles:
        for d in range(geom.n_sides):
            g = t.sides[d]
            if g == NULL_GLUE:
                continue
            for dback in back_sides(geom, d):
                for other in idx.get((dback, g), ()):
                    table[t.id].add((d, other))
    return table


def verify_isomorphism(
    ts1: Tileset, ts2: Tileset, mapping: dict[int, int],
    seed1: int | None = None, seed2: int | None = None,
) -> bool:
    if len(ts1) != len(ts2) or len(mapping) != len(ts1):
        return False
    if sorted(mapping.values()) != list(range(len(ts2))):
        return False
    if seed1 is not None and mapping[seed1] != seed2:
        return False
    t1 = _interaction_table(ts1)
    t2 = _interaction_table(ts2)
    for a in range(len(ts1)):
        image = {(d, mapping[b]) for d, b in t1[a]}
        if image != t2[mapping[a]]:
            return False
    return True


def find_isomorphism(
    ts1: Tileset, ts2: Tileset, seed1: int | None = None, seed2: int | None = None
) -> dict[int, int] | None:
    """Search for an interaction-preserving bijection (small tilesets only).

    Uses iterated signature refinement, then backtracking within classes.
    """
    if len(ts1) != len(ts2):
        return None
    t1 = _interaction_table(ts1)
    t2 = _interaction_table(ts2)

    def refine(table, seed):
        colors = [0] * len(table)
        if seed is not None:
            colors[seed] = 1
        for _ in range(len(table)):
            sigs = []
            for a, inter in enumerate(table):
                sig = (colors[a], tuple(sorted((d, colors[b]) for d, b in inter)))
                sigs.append(sig)
            ranking = {s: i for i, s in enumerate(sorted(set(sigs)))}
            new = [ranking[s] for s in sigs]
            if new == colors:
                break
            colors = new
        return colors

    c1 = refine(t1, seed1)
    c2 = refine(t2, seed2)
    if sorted(c1) != sorted(c2):
        return None
    candidates = {a: [b for b in range(len(t2)) if c2[b] == c1[a]] for a in range(len(t1))}
    order = sorted(range(len(t1)), key=lambda a: len(candidates[a]))
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def ok_partial(a, b):
        for d, a2 in t1[a]:
            if a2 in mapping and (d, mapping[a2]) not in t2[b]:
                return False
        for d, b2 in t2[b]:
            inv = [x for x, y in mapping.items() if y == b2]
            if inv and (d, inv[0]) not in t1[a]:
                return False
        return len(t1[a]) == len(t2[b])

    def backtrack(i):
        if i == len(order):
            return True
        a = order[i]
        for b in candidates[a]:
            if b in used or not ok_partial(a, b):
                continue
            mapping[a] = b
            used.add(b)
            if backtrack(i + 1):
                return True
            del mapping[a]
            used.discard(b)
        return False

    if backtrack(0):
        full = dict(mapping)
        if verify_isomorphism(ts1, ts2, full, seed1, seed2):
            return full
    return None
