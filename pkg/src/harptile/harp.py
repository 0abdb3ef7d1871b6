"""
Build the finite harp configuration of a halting machine.

The harp lives in the tree of sector 0.  Level n is time n.  Tape cell k is
the chord starting at the rightmost tile of level k and continuing through
middle sons.  Step n executes on chord p(n) at level n.  The computing
signal then drops one level down that chord and walks along the next level
to the chord of the new head position.  The level of the halting step is
closed by the silver row, and everything below it is blank.

Edge colours are computed here directly from the trace; each tile's colour
tuple is then looked up among the compiled prototypes.  A miss means the
compiler and the construction disagree, and is a bug.

Configuration file grammar, version 1::

    config v1
    tileset <path>
    cell <address> tile=<id> rot=<0..6>
"""

import re
from dataclasses import dataclass, field

from harptile import heptagrid as hg
from harptile.heptagrid import CENTER, TileAddress, level_size, from_rank
from harptile.machine import run
from harptile.reduction import BL, BR, BLANK, IN, H, ag, compile_machine, h, v


class NotHaltedWithinBudget(Exception):
    def __init__(self, max_steps):
        Exception.__init__(self, "machine did not halt within %d steps" % max_steps)
        self.max_steps = max_steps


class ConfigParseError(ValueError):
    pass


@dataclass
class Configuration:
    placements: dict = field(default_factory=dict)   # address -> (id, rot)
    tileset: object = None

    def __len__(self):
        return len(self.placements)

    def addresses(self):
        return sorted(self.placements)

    def to_text(self, tileset_ref="tiles.txt"):
        lines = ["config v1", "tileset %s" % tileset_ref]
        for a in self.addresses():
            pid, rot = self.placements[a]
            lines.append("cell %s tile=%s rot=%d" % (a, pid, rot))
        return "\n".join(lines) + "\n"


def parse_config(text):
    """Return (placements, tileset reference)."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or lines[0] != "config v1":
        raise ConfigParseError("expected header 'config v1'")
    if len(lines) < 2 or not lines[1].startswith("tileset "):
        raise ConfigParseError("expected 'tileset <path>' on the second line")
    ref = lines[1][len("tileset "):].strip()
    placements = {}
    for ln in lines[2:]:
        m = re.match(r"^cell (\S+) tile=(\S+) rot=(\d+)$", ln)
        if not m:
            raise ConfigParseError("bad line %r" % ln)
        try:
            a = TileAddress.parse(m.group(1))
        except ValueError as e:
            raise ConfigParseError(str(e)) from None
        rot = int(m.group(3))
        if not 0 <= rot < 7:
            raise ConfigParseError("rotation out of range in %r" % ln)
        if a in placements:
            raise ConfigParseError("cell %s placed twice" % a)
        placements[a] = (m.group(2), rot)
    return placements, ref


# ---------------------------------------------------------------------------
# chords and routing

def chord_of(k, n, sector=0):
    """The tile of chord k (tape cell k) on level n."""
    if k < 0 or n < k:
        raise ValueError("chord %d does not reach level %d" % (k, n))
    return TileAddress(sector, (2,) * k + (1,) * (n - k))


def chord_index(a):
    """k if ``a`` is the level-n tile of chord k, else None."""
    if a.is_center:
        return None
    p = a.path
    k = 0
    while k < len(p) and p[k] == 2:
        k += 1
    if all(i == 1 for i in p[k:]):
        return k
    return None


@dataclass
class Itinerary:
    executions: list          # step n -> address where it executes
    lateral_paths: list       # step n -> addresses walked on level n


def route_signal(trace, sector=0):
    execs, paths = [], []
    for n, p in enumerate(trace.positions):
        target = chord_of(p, n, sector)
        execs.append(target)
        if n == 0 or trace.moves[n - 1] == "S":
            paths.append([])
            continue
        land = chord_of(trace.positions[n - 1], n, sector)
        step = 1 if target.rank > land.rank else -1
        paths.append([from_rank(sector, n, r) for r in range(land.rank + step, target.rank + step, step)])
    return Itinerary(execs, paths)


# ---------------------------------------------------------------------------
# construction

def _is_left_border(a):
    return all(i == 0 for i in a.path)


def _is_right_border(a):
    return all(i == 2 for i in a.path)


class _HarpColoring(object):
    """Edge colours of the space-time diagram of a halting trace."""

    def __init__(self, trace, sector=0):
        self.trace = trace
        self.t = trace.halt_time
        self.sector = sector
        self.halt_rank = chord_of(trace.positions[self.t], self.t, sector).rank

    def inside(self, a):
        return not a.is_center and a.sector == self.sector and a.level <= self.t

    def vertical(self, a):
        """Colour of the edge between ``a`` and its father."""
        tr = self.trace
        n = a.level
        if _is_left_border(a):
            return BL
        if _is_right_border(a):
            return BR
        k = chord_index(a)
        if k is None:
            return v(a.path[-1])
        sym = tr.symbol(n, k)
        if tr.positions[n - 1] == k:
            return v(1, sym, tr.states[n], tr.moves[n - 1])
        return v(1, sym)

    def horizontal(self, left, right):
        tr = self.trace
        n = left.level
        head = None
        if n >= 1 and tr.moves[n - 1] != "S":
            src = chord_of(tr.positions[n - 1], n, self.sector).rank
            dst = chord_of(tr.positions[n], n, self.sector).rank
            lo, hi = min(src, dst), max(src, dst)
            if lo <= left.rank and right.rank <= hi:
                head = (tr.states[n], tr.moves[n - 1])
        if n < self.t:
            return h(*head) if head else H
        flow = "L" if right.rank <= self.halt_rank else "R"
        return ag(flow, *head) if head else ag(flow)

    def edges(self, a):
        nbrs = hg.neighbors(a)
        if a.kind == hg.W:
            lateral = {1: "right", 6: "left"}
            diag = (2,)
        else:
            lateral = {1: "right", 5: "left"}
            diag = (2, 6)
        out = []
        for e, b in enumerate(nbrs):
            if b is None or not self.inside(b):
                out.append(BLANK)
            elif e == 0:
                out.append(self.vertical(a))
            elif e in lateral:
                out.append(self.horizontal(a, b) if lateral[e] == "right" else self.horizontal(b, a))
            elif e in diag:
                out.append(IN)
            else:
                out.append(self.vertical(b))
        return tuple(out)


def build_harp(tm, max_steps, tileset=None):
    """Return (Configuration, Itinerary) for a machine halting within budget."""
    trace = run(tm, max_steps)
    if not trace.halted:
        raise NotHaltedWithinBudget(max_steps)
    ts = tileset if tileset is not None else compile_machine(tm)
    itinerary = route_signal(trace)
    coloring = _HarpColoring(trace)
    placements = {}
    for n in range(trace.halt_time + 1):
        for r in range(level_size(n)):
            a = from_rank(0, n, r)
            edges = coloring.edges(a)
            pid = ts.lookup(edges)
            if pid is None:
                raise AssertionError("no prototype for %s with edges %s" % (a, ",".join(map(str, edges))))
            placements[a] = (pid, 0)
    return Configuration(placements, ts), itinerary


def harp_size(t):
    return sum(level_size(i) for i in range(t + 1))


def chord_symbol(cfg, k, n, blank):
    """Cell symbol carried by chord k at level n of a harp configuration."""
    a = chord_of(k, n)
    pid, rot = cfg.placements[a]
    father_edge = cfg.tileset[pid].rotated(rot)[0]
    if father_edge == BR or (a.level == 0 and father_edge == BLANK):
        return blank
    return father_edge.sym
