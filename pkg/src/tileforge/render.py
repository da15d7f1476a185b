"""SVG and TikZ drawings of tilesets and assemblies.

Output is deterministic: tiles are emitted in sorted position order, and
equal inputs produce byte-identical files.  Non-grid geometries fall back
to a schematic adjacency drawing with a warning on stderr.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

from .core import NULL_GLUE, Assembly, Tileset

_NAMED = {
    "blue": "#1f4fd8",
    "red": "#d81f1f",
    "green": "#1f9e3a",
    "black": "#000000",
}


@dataclass(frozen=True)
class RenderOptions:
    scale: int = 16  # pixels per tile
    font_size: int = 6
    show_glues: bool = False
    show_paths: bool = False
    offset: int = 1  # margin in tile units
    rotation: int = 0  # 0, 90, 180, 270

    def __post_init__(self):
        if self.scale <= 0:
            raise ValueError("scale must be positive")
        if self.rotation not in (0, 90, 180, 270):
            raise ValueError("rotation must be a quarter turn")


def _rotate(p, rotation):
    x, y = p
    if rotation == 0:
        return (x, y)
    if rotation == 90:
        return (-y, x)
    if rotation == 180:
        return (-x, -y)
    return (y, -x)


def _color_of(tile) -> str:
    if tile.color is None:
        return "#ffffff"
    return _NAMED.get(tile.color, tile.color)


def render_svg(a: Assembly, ts: Tileset, opts: RenderOptions | None = None) -> str:
    opts = opts or RenderOptions()
    if ts.geometry.name != "z2":
        return _svg_schematic(a, ts, opts)
    s = opts.scale
    pts = {_rotate(p, opts.rotation): tid for p, tid in a.placements.items()}
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    x0, y0 = min(xs) - opts.offset, min(ys) - opts.offset
    x1, y1 = max(xs) + opts.offset, max(ys) + opts.offset
    width = (x1 - x0 + 1) * s
    height = (y1 - y0 + 1) * s

    def px(p):
        # svg y grows downward; flip so north is up
        return ((p[0] - x0) * s, (y1 - p[1]) * s)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
    ]
    for p in sorted(pts):
        tile = ts.tile(pts[p])
        cx, cy = px(p)
        fill = _color_of(tile)
        out.append(
            f'<rect x="{cx}" y="{cy}" width="{s}" height="{s}" '
            f'fill="{fill}" stroke="#222222" stroke-width="1"/>'
        )
        if opts.show_glues:
            fs = opts.font_size
            labels = (
                (tile.sides[0], cx + s / 2, cy + fs, "middle"),
                (tile.sides[1], cx + s - 1, cy + s / 2, "end"),
                (tile.sides[2], cx + s / 2, cy + s - 2, "middle"),
                (tile.sides[3], cx + 1, cy + s / 2, "start"),
            )
            for glue, tx, ty, anchor in labels:
                if glue != NULL_GLUE:
                    out.append(
                        f'<text x="{tx}" y="{ty}" font-size="{fs}" '
                        f'text-anchor="{anchor}">{glue}</text>'
                    )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _svg_schematic(a: Assembly, ts: Tileset, opts: RenderOptions) -> str:
    """Adjacency-graph drawing for BS(1,2) and hyperbolic assemblies."""
    print(
        f"render: geometry {ts.geometry.name} drawn schematically",
        file=sys.stderr,
    )
    geom = ts.geometry
    s = opts.scale

    def plane(p):
        if geom.name.startswith("hyp"):
            level, index = p
            width = geom.width(level)
            return (s * 40 * (index + 0.5) / width, s * 2 * level)
        num, exp, level = p
        return (s * 4 * num / (2**exp), s * 2 * level)

    coords = {p: plane(p) for p in a.placements}
    xs = [c[0] for c in coords.values()]
    ys = [c[1] for c in coords.values()]
    x0, y0 = min(xs) - s, min(ys) - s
    w = max(xs) - x0 + s
    h = max(ys) - y0 + s
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0f}" '
        f'height="{h:.0f}" viewBox="0 0 {w:.0f} {h:.0f}">',
    ]
    for p in sorted(coords):
        cx, cy = coords[p]
        for d, q in geom.neighbors(p):
            if q in coords and sorted((str(p), str(q)))[0] == str(p):
                qx, qy = coords[q]
                out.append(
                    f'<line x1="{cx - x0:.1f}" y1="{cy - y0:.1f}" '
                    f'x2="{qx - x0:.1f}" y2="{qy - y0:.1f}" stroke="#999999"/>'
                )
    for p in sorted(coords):
        cx, cy = coords[p]
        tile = ts.tile(a.placements[p])
        out.append(
            f'<circle cx="{cx - x0:.1f}" cy="{cy - y0:.1f}" r="{s / 3:.1f}" '
            f'fill="{_color_of(tile)}" stroke="#222222"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_tikz(a: Assembly, ts: Tileset, opts: RenderOptions | None = None) -> str:
    opts = opts or RenderOptions()
    if ts.geometry.name != "z2":
        raise ValueError("tikz output targets the z2 geometry")
    out = []
    pts = {_rotate(p, opts.rotation): tid for p, tid in a.placements.items()}
    for p in sorted(pts):
        tile = ts.tile(pts[p])
        x, y = p
        style = ""
        if tile.color is not None:
            style = f"[fill={tile.color}!20]"
        out.append(f"\\draw{style}({x},{y})rectangle({x + 1},{y + 1});")
        if opts.show_glues:
            cx = x + 0.5
            cy = y + 0.5
            anchors = (
                (tile.sides[0], cx, y + 1, "north"),
                (tile.sides[1], x + 1, cy, "east"),
                (tile.sides[2], cx, y, "south"),
                (tile.sides[3], x, cy, "west"),
            )
            for glue, gx, gy, anchor in anchors:
                if glue != NULL_GLUE:
                    out.append(
                        f"\\draw({gx},{gy})node[anchor={anchor}]{{{glue}}};"
                    )
    return "\n".join(out) + "\n"
