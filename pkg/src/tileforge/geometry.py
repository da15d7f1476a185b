"""Pluggable graph geometries for tile placement.

Three geometries are provided: the square grid Z^2, the Cayley graph of the
Baumslag-Solitar group B(1,2), and a "hyperbolic" k-ary tree with ring edges
between consecutive vertices of each level.

A geometry names the sides a tile has, says which point lies across each
side, and which side of the neighbour faces back.  Points are plain hashable
tuples so they can key assembly maps directly.
"""

from __future__ import annotations

from fractions import Fraction


class GeometryError(ValueError):
    pass


class Geometry:
    """Common interface: side names, stepping, and abutting sides."""

    name: str
    side_names: tuple[str, ...]

    @property
    def n_sides(self) -> int:
        return len(self.side_names)

    def side_index(self, name: str) -> int:
        try:
            return self.side_names.index(name)
        except ValueError:
            raise GeometryError(f"{self.name}: unknown side {name!r}") from None

    def step(self, p, d: int):
        """Point across side d of p, or None if that edge does not exist."""
        raise NotImplementedError

    def apply_generator(self, p, d: int):
        """Alias of step: the group action of side d on point p."""
        return self.step(p, d)

    def abutting(self, p, d: int):
        """(q, dback) with q = step(p, d) and step(q, dback) == p."""
        raise NotImplementedError

    def neighbors(self, p):
        """All (d, q) pairs with q adjacent to p across side d."""
        out = []
        for d in range(self.n_sides):
            q = self.step(p, d)
            if q is not None:
                out.append((d, q))
        return out

    def point_to_json(self, p):
        return list(p)

    def point_from_json(self, obj):
        return tuple(obj)


class Z2Geometry(Geometry):
    """The grid Z^2 with sides N, E, S, W."""

    name = "z2"
    side_names = ("N", "E", "S", "W")
    N, E, S, W = 0, 1, 2, 3
    _OFFS = ((0, 1), (1, 0), (0, -1), (-1, 0))

    def opposite(self, d: int) -> int:
        return (d + 2) % 4

    def step(self, p, d):
        ox, oy = self._OFFS[d]
        return (p[0] + ox, p[1] + oy)

    def abutting(self, p, d):
        return self.step(p, d), (d + 2) % 4


class BS12Geometry(Geometry):
    """Cayley graph of B(1,2) = <a, b | ba = a^2 b>.

    A group element is an affine map x -> 2^k x + t with t a dyadic rational,
    stored canonically as (num, exp, level) meaning t = num / 2^exp, k = level,
    with exp >= 0 and num odd unless exp == 0.  Generators act on the right:
    a = (1, 0) and b = (0, 1), composing as
    (t1, k1) . (t2, k2) = (t1 + 2^k1 * t2, k1 + k2).
    """

    name = "bs-1-2"
    side_names = ("g0+", "g0-", "g1+", "g1-")
    A_POS, A_NEG, B_POS, B_NEG = 0, 1, 2, 3

    IDENTITY = (0, 0, 0)

    def opposite(self, d: int) -> int:
        return d ^ 1

    @staticmethod
    def canonicalize(p):
        num, exp, level = p
        if num == 0:
            return (0, 0, level)
        while exp > 0 and num % 2 == 0:
            num //= 2
            exp -= 1
        return (num, exp, level)

    @staticmethod
    def value(p) -> Fraction:
        num, exp, _ = p
        return Fraction(num, 1 << exp)

    def compose(self, p, q):
        """Group product p . q in canonical form."""
        n1, e1, k1 = p
        n2, e2, k2 = q
        # t1 + 2^k1 * t2 over the common denominator 2^e
        e = max(e1, e2 - k1, 0)
        num = n1 * (1 << (e - e1)) + n2 * (1 << (e - e2 + k1))
        return self.canonicalize((num, e, k1 + k2))

    def step(self, p, d):
        num, exp, level = p
        if d == self.A_POS or d == self.A_NEG:
            # t +/- 2^level
            sign = 1 if d == self.A_POS else -1
            shift = level + exp
            if shift >= 0:
                return self.canonicalize((num + sign * (1 << shift), exp, level))
            num2 = num * (1 << -shift) + sign
            return self.canonicalize((num2, exp - shift, level))
        delta = 1 if d == self.B_POS else -1
        return (num, exp, level + delta)

    def abutting(self, p, d):
        return self.step(p, d), d ^ 1


class HypGeometry(Geometry):
    """Tree of degree k with level rings: each vertex has one parent edge,
    k child edges, and edges to the previous/next vertex of its level (the
    first and last vertices of a level are also joined).

    Points are (level, index) with 0 <= index < k**level.
    """

    def __init__(self, k: int):
        if k < 2:
            raise GeometryError("hyperbolic tree degree must be >= 2")
        self.k = k
        self.name = f"hyp-k{k}"
        self.side_names = (
            ("parent",)
            + tuple(f"child{i}" for i in range(k))
            + ("ring-", "ring+")
        )
        self.PARENT = 0
        self.CHILD0 = 1
        self.RING_PREV = k + 1
        self.RING_NEXT = k + 2

    IDENTITY = (0, 0)

    def width(self, level: int) -> int:
        return self.k ** level

    def step(self, p, d):
        level, index = p
        k = self.k
        if d == self.PARENT:
            if level == 0:
                return None
            return (level - 1, index // k)
        if self.CHILD0 <= d <= k:
            return (level + 1, index * k + (d - 1))
        w = self.width(level)
        if w <= 1:
            return None
        if d == self.RING_PREV:
            return (level, (index - 1) % w)
        if d == self.RING_NEXT:
            return (level, (index + 1) % w)
        raise GeometryError(f"bad direction {d}")

    def abutting(self, p, d):
        q = self.step(p, d)
        if q is None:
            return None, None
        if d == self.PARENT:
            return q, self.CHILD0 + (p[1] % self.k)
        if self.CHILD0 <= d <= self.k:
            return q, self.PARENT
        return q, (self.RING_PREV if d == self.RING_NEXT else self.RING_NEXT)

    def neighbors(self, p):
        out = []
        seen = set()
        for d in range(self.n_sides):
            q = self.step(p, d)
            if q is not None and (d, q) not in seen:
                seen.add((d, q))
                out.append((d, q))
        return out


Z2 = Z2Geometry()
BS12 = BS12Geometry()


def get_geometry(name: str) -> Geometry:
    """Look a geometry up by its tileset-header name."""
    if name == "z2":
        return Z2
    if name == "bs-1-2":
        return BS12
    if name.startswith("hyp-k"):
        try:
            k = int(name[5:])
        except ValueError:
            raise GeometryError(f"bad geometry name {name!r}") from None
        return HypGeometry(k)
    raise GeometryError(f"unknown geometry {name!r}")
