"""
Validity of finite configurations.

Unplaced cells are blank.  A configuration is a finite solution when it has
at least one tile, every edge shared by two placed tiles shows the same
colour from both sides, and every edge facing an unplaced cell is blank.
Blank against blank always matches, so checking the support and its
one-tile margin decides the whole plane.
"""

from dataclasses import dataclass

from harptile.heptagrid import OUTSIDE

COLOR_MISMATCH = "ColorMismatch"
NON_BLANK_BOUNDARY = "NonBlankBoundary"
UNKNOWN_TILE = "UnknownTile"
EMPTY_CONFIGURATION = "EmptyConfiguration"


class PatchTooSmall(Exception):
    pass


@dataclass(frozen=True)
class Violation:
    kind: str
    address: object = None
    edge: object = None
    detail: str = ""

    def line(self):
        a = "-" if self.address is None else str(self.address)
        e = "-" if self.edge is None else str(self.edge)
        return "VIOLATION %s %s %s %s" % (self.kind, a, e, self.detail or "-")


def check(placements, ts, patch):
    """Return the list of all violations (empty when valid)."""
    if hasattr(placements, "placements"):
        placements = placements.placements
    if not placements:
        return [Violation(EMPTY_CONFIGURATION, detail="no tile of T placed")]
    for a in placements:
        if a not in patch:
            raise PatchTooSmall("cell %s lies outside the patch" % a)
        if any(s is OUTSIDE for s in patch.table[a]):
            raise PatchTooSmall("cell %s has no one-tile margin in the patch" % a)

    out = []
    colors = {}
    for a, (pid, rot) in placements.items():
        if pid not in ts:
            out.append(Violation(UNKNOWN_TILE, a, None, "unknown tile id %s" % pid))
            continue
        colors[a] = ts[pid].rotated(rot)

    for a in sorted(colors):
        mine = colors[a]
        for e in range(7):
            b, f = patch.table[a][e]
            c = mine[e]
            if b in placements:
                if b not in colors:
                    continue
                other = colors[b][f]
                # report each mismatched edge once, from its smaller side
                if c != other and a < b:
                    out.append(Violation(COLOR_MISMATCH, a, e, "%s vs %s at %s edge %d" % (c, other, b, f)))
            elif not c.is_blank:
                out.append(Violation(NON_BLANK_BOUNDARY, a, e, "%s faces blank %s" % (c, b)))
    return out


def is_finite_solution(placements, ts, patch):
    return not check(placements, ts, patch)
