"""Poincare-disc SVG pictures of patches and configurations."""

from dataclasses import dataclass, field
from xml.sax.saxutils import escape

from harptile.heptagrid import OUTSIDE

DEFAULT_COLORS = {
    "root": "#d62728",
    "rootHalt": "#d62728",
    "borderL": "#2ca02c",
    "borderR": "#1f6f1f",
    "borderRChordStart": "#1f6f1f",
    "borderRExec": "#ff7f0e",
    "inside": "#fff3b0",
    "chordPass": "#9ecae1",
    "chordExec": "#ff7f0e",
    "transitSignal": "#fdae6b",
    "silverEmit_i": "#7f7f7f",
    "silverTransit": "#c7c7c7",
    "silverChordCross": "#a6a6c8",
    "cornerLeft_m": "#555555",
    "cornerRight_n": "#555555",
    "borderSilverEnd": "#555555",
}
NEUTRAL = "#ffffff"


class MissingRoleColor(KeyError):
    pass


@dataclass
class RenderStyle:
    colors: dict = field(default_factory=lambda: dict(DEFAULT_COLORS))
    stroke_width: float = 0.002
    radius_px: int = 400
    depth: object = None
    guides: bool = False


def layout(patch):
    """[(address, [(x, y)] * 7)] in address order."""
    return [(a, [(z.real, z.imag) for z in patch.vertices[a]]) for a in patch]


def shared_vertex_adjacency(lay, tol=1e-6):
    """Pairs of tiles sharing two vertices, read off the layout alone."""
    scale = 0.1 / tol
    buckets = {}
    for a, vs in lay:
        for x, y in vs:
            buckets.setdefault((round(x * scale), round(y * scale)), []).append((a, x, y))
    counts = {}
    for (kx, ky), items in buckets.items():
        for a, xa, ya in items:
            hits = set()
            for dx in (-1, 0, 1):
                for dy in (-1, 0, 1):
                    for b, xb, yb in buckets.get((kx + dx, ky + dy), ()):
                        if a < b and abs(xa - xb) < tol and abs(ya - yb) < tol:
                            hits.add(b)
            for b in hits:
                counts[a, b] = counts.get((a, b), 0) + 1
    return {k for k, n in counts.items() if n >= 2}


def _fmt(v):
    return ("%.6f" % v).rstrip("0").rstrip(".")


def to_svg(lay, cfg=None, style=None):
    style = style or RenderStyle()
    placements = cfg.placements if cfg is not None else {}
    ts = cfg.tileset if cfg is not None else None
    R = style.radius_px
    size = 2 * R + 20

    def px(x, y):
        return "%s,%s" % (_fmt(R + 10 + x * R), _fmt(R + 10 - y * R))

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="%d" height="%d" viewBox="0 0 %d %d">'
        % (size, size, size, size),
        '<circle cx="%d" cy="%d" r="%d" fill="#f4f4f4" stroke="#000000" stroke-width="1"/>' % (R + 10, R + 10, R),
    ]
    sw = _fmt(style.stroke_width * R)
    for a, vs in lay:
        if style.depth is not None and a.level > style.depth:
            continue
        pts = " ".join(px(x, y) for x, y in vs)
        if a in placements:
            pid, rot = placements[a]
            role = ts[pid].role
            if role not in style.colors:
                raise MissingRoleColor("no colour for role %s" % role)
            out.append('<polygon points="%s" fill="%s" stroke="#000000" stroke-width="%s" '
                       'data-address="%s" data-role="%s" data-tile="%s"/>'
                       % (pts, style.colors[role], sw, escape(str(a)), role, escape(pid)))
        else:
            out.append('<polygon points="%s" fill="%s" stroke="#888888" stroke-width="%s" data-address="%s"/>'
                       % (pts, NEUTRAL, sw, escape(str(a))))
    if style.guides and placements:
        out.extend(_guides(lay, placements, ts, px))
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _guides(lay, placements, ts, px):
    # mid-point polylines through the border tiles, for looks only
    verts = dict(lay)
    lines = []
    for roles in (("borderL", "cornerLeft_m"), ("borderR", "borderRChordStart", "borderRExec", "cornerRight_n")):
        pts = []
        for a in sorted(placements):
            if ts[placements[a][0]].role in roles or (a.level == 0 and not a.is_center):
                vs = verts[a]
                pts.append(((vs[0][0] + vs[1][0]) / 2, (vs[0][1] + vs[1][1]) / 2))
        if len(pts) > 1:
            lines.append('<polyline points="%s" fill="none" stroke="#e6b800" stroke-width="3"/>'
                         % " ".join(px(x, y) for x, y in pts))
    return lines


def adjacency_pairs(patch):
    """Adjacent pairs according to an AdjacencyMap."""
    pairs = set()
    for a in patch:
        for s in patch.table[a]:
            if s is not OUTSIDE:
                b = s[0]
                pairs.add((a, b) if a < b else (b, a))
    return pairs
