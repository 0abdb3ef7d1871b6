"""
Compile a Turing machine into a finite set of edge-coloured heptagonal
prototiles plus a blank tile.

Tiles are described in the edge order of heptagrid (edge 0 faces the
father).  The colours encode the tree skeleton and the computation:

    blank          outside the finite region
    in             the diagonal edge joining a tile to the B son of its
                   right neighbour
    bl, br         vertical edges along the left / right border
    v<i>           father/son edge of son slot i; on a chord it carries the
                   cell symbol, ``v1:sym=s``, and just below an execution
                   also the new state and move, ``v1:sym=s,q=q,d=R``
    h              lateral edge on a level, ``h:q=q,d=R`` while the
                   computing signal travels along it
    ag:flow=L|R    lateral edge of the closing silver row, flowing away
                   from the halting tile; may also carry the signal

A copy of a prototype may be placed in any of the 7 rotations: rotation r
puts prototype edge j on cell edge (j + r) mod 7.  Reflections are not
allowed.

Tileset file grammar, version 1::

    tileset v1
    blank <id>
    tile <id> role=<role> edges=<c0>,<c1>,<c2>,<c3>,<c4>,<c5>,<c6>

Colour tokens contain commas themselves (``h:q=a,d=R``); a comma starts a
new token only when followed by a colour tag.
"""

import re
from dataclasses import dataclass

ROLES = (
    "root", "rootHalt", "borderL", "borderR", "borderRChordStart", "borderRExec",
    "inside", "chordPass", "chordExec", "transitSignal", "silverEmit_i",
    "silverTransit", "silverChordCross", "cornerLeft_m", "cornerRight_n",
    "borderSilverEnd",
)
BORDER_ROLE_PREFIXES = ("root", "border", "silver", "corner")

TAGS = ("blank", "in", "bl", "br", "ag", "v", "h")


class TileSetParseError(ValueError):
    pass


@dataclass(frozen=True)
class EdgeColor:
    tag: str
    slot: object = None
    sym: object = None
    state: object = None
    move: object = None
    flow: object = None

    def __str__(self):
        head = self.tag if self.tag != "v" else "v%d" % self.slot
        parts = []
        if self.flow is not None:
            parts.append("flow=" + self.flow)
        if self.sym is not None:
            parts.append("sym=" + self.sym)
        if self.state is not None:
            parts += ["q=" + self.state, "d=" + self.move]
        return head + (":" + ",".join(parts) if parts else "")

    __repr__ = __str__

    @property
    def is_blank(self):
        return self.tag == "blank"

    @classmethod
    def parse(cls, token):
        head, _, rest = token.partition(":")
        m = re.match(r"^v(\d)$", head)
        if m:
            tag, slot = "v", int(m.group(1))
        elif head in TAGS and head != "v":
            tag, slot = head, None
        else:
            raise TileSetParseError("unknown colour %r" % token)
        kw = {}
        if rest:
            for item in rest.split(","):
                k, eq, val = item.partition("=")
                if not eq or k not in ("sym", "q", "d", "flow") or k in kw or not val:
                    raise TileSetParseError("bad colour payload in %r" % token)
                kw[k] = val
        c = cls(tag, slot, kw.get("sym"), kw.get("q"), kw.get("d"), kw.get("flow"))
        if str(c) != token:
            raise TileSetParseError("non-canonical colour %r" % token)
        return c


BLANK = EdgeColor("blank")
IN = EdgeColor("in")
BL = EdgeColor("bl")
BR = EdgeColor("br")
H = EdgeColor("h")


def v(slot, sym=None, state=None, move=None):
    return EdgeColor("v", slot, sym, state, move)


def h(state=None, move=None):
    return EdgeColor("h", None, None, state, move)


def ag(flow, state=None, move=None):
    return EdgeColor("ag", None, None, state, move, flow)


def w_edges(father, right, diag, son2, son1, son0, left):
    return (father, right, diag, son2, son1, son0, left)


def b_edges(father, right, diag, son1, son0, left, inner):
    return (father, right, diag, son1, son0, left, inner)


def bottom_w(father, right, left):
    return w_edges(father, right, BLANK, BLANK, BLANK, BLANK, left)


def bottom_b(father, right, left, inner=IN):
    return b_edges(father, right, BLANK, BLANK, BLANK, left, inner)


def silver_flow_for(move):
    """Flow on the silver row where the signal travels with ``move``.

    The signal heads for the halting tile, so it travels against the flow.
    """
    return "L" if move == "R" else "R"


@dataclass(frozen=True)
class TilePrototype:
    id: str
    role: str
    edges: tuple

    def line(self):
        return "tile %s role=%s edges=%s" % (self.id, self.role, ",".join(str(c) for c in self.edges))

    def rotated(self, rot):
        """Colours seen on cell edges 0..6 when placed with rotation ``rot``."""
        return tuple(self.edges[(e - rot) % 7] for e in range(7))


BLANK_TILE = TilePrototype("b", "blank", (BLANK,) * 7)


class TileSet(object):

    def __init__(self, prototypes, blank=BLANK_TILE):
        self.prototypes = list(prototypes)
        self.blank = blank
        self.by_id = {p.id: p for p in self.prototypes}
        self._by_edges = None

    def __len__(self):
        return len(self.prototypes)

    def __iter__(self):
        return iter(self.prototypes)

    def __getitem__(self, pid):
        return self.by_id[pid]

    def __contains__(self, pid):
        return pid in self.by_id

    def lookup(self, edges):
        """Prototype id whose edges are exactly ``edges`` (rotation 0)."""
        if self._by_edges is None:
            self._by_edges = {p.edges: p.id for p in self.prototypes}
        return self._by_edges.get(tuple(edges))

    def to_text(self):
        lines = ["tileset v1", "blank %s" % self.blank.id]
        lines += [p.line() for p in self.prototypes]
        return "\n".join(lines) + "\n"


def _split_edges(text):
    tokens = []
    for piece in text.split(","):
        if tokens and re.match(r"^(sym|q|d|flow)=", piece):
            tokens[-1] += "," + piece
        else:
            tokens.append(piece)
    return tokens


def parse_tileset(text):
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or lines[0].strip() != "tileset v1":
        raise TileSetParseError("expected header 'tileset v1'")
    blank_id = None
    protos = []
    for ln in lines[1:]:
        words = ln.split()
        if words[0] == "blank" and len(words) == 2:
            if blank_id is not None:
                raise TileSetParseError("duplicate blank line")
            blank_id = words[1]
            continue
        m = re.match(r"^tile (\S+) role=(\S+) edges=(\S+)$", ln.strip())
        if not m:
            raise TileSetParseError("bad line %r" % ln)
        pid, role, edges = m.groups()
        if role not in ROLES:
            raise TileSetParseError("unknown role %r" % role)
        colors = tuple(EdgeColor.parse(t) for t in _split_edges(edges))
        if len(colors) != 7:
            raise TileSetParseError("tile %s has %d edges" % (pid, len(colors)))
        protos.append(TilePrototype(pid, role, colors))
    if blank_id is None:
        raise TileSetParseError("missing blank line")
    return TileSet(protos, TilePrototype(blank_id, "blank", (BLANK,) * 7))


def load_tileset(path):
    with open(path, encoding="utf-8") as f:
        return parse_tileset(f.read())


# ---------------------------------------------------------------------------
# the compiler

def _exec_tiles(rule, blank_symbol):
    """The execution tiles of one rule, one per way the signal can arrive."""
    q, s = rule.state, rule.symbol
    tiles = []
    tag = "%s.%s" % (q, s)
    if rule.halting:
        arrivals = [
            ("S", v(1, s, q, "S"), ag("R"), ag("L")),
            ("R", v(1, s), ag("R"), ag("L", q, "R")),
            ("L", v(1, s), ag("R", q, "L"), ag("L")),
        ]
        for d, father, right, left in arrivals:
            tiles.append(TilePrototype("emit.%s.%s" % (tag, d), "silverEmit_i",
                                       bottom_w(father, right, left)))
        if s == blank_symbol:
            tiles.append(TilePrototype("cornerR.%s" % tag, "cornerRight_n",
                                       bottom_w(BR, BLANK, ag("L", q, "R"))))
        return tiles
    out = v(1, rule.write, rule.new_state, rule.move)
    arrivals = [
        ("S", v(1, s, q, "S"), H, H),
        ("R", v(1, s), H, h(q, "R")),
        ("L", v(1, s), h(q, "L"), H),
    ]
    for d, father, right, left in arrivals:
        tiles.append(TilePrototype("exec.%s.%s" % (tag, d), "chordExec",
                                   w_edges(father, right, IN, v(2), out, v(0), left)))
    if s == blank_symbol:
        tiles.append(TilePrototype("borderR.%s" % tag, "borderRExec",
                                   w_edges(BR, BLANK, BLANK, BR, out, v(0), h(q, "R"))))
    return tiles


class _CompiledRule(object):

    def __init__(self, rule, halts):
        self.state, self.symbol = rule.state, rule.symbol
        self.new_state, self.write, self.move = rule.new_state, rule.write, rule.move
        self.halting = rule.new_state in halts


def compile_machine(tm):
    """Emit the tile set T (and blank b) for machine ``tm``."""
    tm.check()
    blank = tm.blank
    work = tm.working_states
    rules = [_CompiledRule(r, tm.halts) for r in tm.rules]
    T = []
    add = T.append

    # origin
    if tm.start in tm.halts:
        add(TilePrototype("rootHalt", "rootHalt", (BLANK,) * 7))
    else:
        r0 = next(r for r in rules if r.state == tm.start and r.symbol == blank)
        if r0.halting:
            add(TilePrototype("rootHalt", "rootHalt", (BLANK,) * 7))
        else:
            add(TilePrototype("root", "root", w_edges(
                BLANK, BLANK, BLANK, BR, v(1, r0.write, r0.new_state, r0.move), BL, BLANK)))

    # skeleton
    add(TilePrototype("borderL", "borderL", b_edges(BL, H, IN, v(1), BL, BLANK, BLANK)))
    add(TilePrototype("cornerL", "cornerLeft_m", bottom_b(BL, ag("L"), BLANK, BLANK)))
    add(TilePrototype("borderR", "borderRChordStart",
                      w_edges(BR, BLANK, BLANK, BR, v(1, blank), v(0), H)))
    add(TilePrototype("cornerR", "cornerRight_n", bottom_w(BR, BLANK, ag("R"))))
    add(TilePrototype("inside.W1", "inside", w_edges(v(1), H, IN, v(2), v(1), v(0), H)))
    add(TilePrototype("inside.W2", "inside", w_edges(v(2), H, IN, v(2), v(1), v(0), H)))
    add(TilePrototype("inside.B", "inside", b_edges(v(0), H, IN, v(1), v(0), H, IN)))
    for f in "LR":
        add(TilePrototype("silver.W1.%s" % f, "silverTransit", bottom_w(v(1), ag(f), ag(f))))
        add(TilePrototype("silver.W2.%s" % f, "silverTransit", bottom_w(v(2), ag(f), ag(f))))
        add(TilePrototype("silver.B.%s" % f, "silverTransit", bottom_b(v(0), ag(f), ag(f))))

    # computing signal crossing non-chord tiles
    for q in work:
        for d in "LR":
            hq = h(q, d)
            add(TilePrototype("transit.W1.%s.%s" % (q, d), "transitSignal",
                              w_edges(v(1), hq, IN, v(2), v(1), v(0), hq)))
            add(TilePrototype("transit.W2.%s.%s" % (q, d), "transitSignal",
                              w_edges(v(2), hq, IN, v(2), v(1), v(0), hq)))
            add(TilePrototype("transit.B.%s.%s" % (q, d), "transitSignal",
                              b_edges(v(0), hq, IN, v(1), v(0), hq, IN)))
            a = ag(silver_flow_for(d), q, d)
            add(TilePrototype("silver.W1.%s.%s" % (q, d), "silverTransit", bottom_w(v(1), a, a)))
            add(TilePrototype("silver.W2.%s.%s" % (q, d), "silverTransit", bottom_w(v(2), a, a)))
            add(TilePrototype("silver.B.%s.%s" % (q, d), "silverTransit", bottom_b(v(0), a, a)))

    # chords
    if work:
        for s in tm.alphabet:
            add(TilePrototype("chord.%s" % s, "chordPass",
                              w_edges(v(1, s), H, IN, v(2), v(1, s), v(0), H)))
            for f in "LR":
                add(TilePrototype("chordAg.%s.%s" % (s, f), "silverChordCross",
                                  bottom_w(v(1, s), ag(f), ag(f))))
    # the signal lands one level down a chord and leaves sideways
    for s in tm.alphabet:
        for q in work:
            for d in "LR":
                hq = h(q, d)
                right, left = (hq, H) if d == "R" else (H, hq)
                add(TilePrototype("land.%s.%s.%s" % (s, q, d), "chordPass",
                                  w_edges(v(1, s, q, d), right, IN, v(2), v(1, s), v(0), left)))
                f = silver_flow_for(d)
                a = ag(f, q, d)
                right, left = (a, ag(f)) if d == "R" else (ag(f), a)
                add(TilePrototype("landAg.%s.%s.%s" % (s, q, d), "silverChordCross",
                                  bottom_w(v(1, s, q, d), right, left)))

    for r in rules:
        T.extend(_exec_tiles(r, blank))
    return TileSet(T)


def prototile_census(tm):
    """
    Predicted prototype count per role, without building the tiles.

    With Q the non-halting states, S the alphabet, D the rules, D_h the rules
    entering a halting state and D_b the rules reading the blank:

        root or rootHalt        1
        borderL, cornerLeft_m   1 each
        borderRChordStart       1
        cornerRight_n           1 + |D_h with blank|
        borderRExec             |D_b| - |D_h with blank|
        inside                  3
        silverTransit           6 + 6|Q|
        transitSignal           6|Q|
        chordPass               |S| + 2|S||Q|   (|S| only if Q is non-empty)
        silverChordCross        2|S| + 2|S||Q|  (2|S| only if Q is non-empty)
        chordExec               3 (|D| - |D_h|)
        silverEmit_i            3 |D_h|

    The total is 14 + 13|Q| + 3|S| + 4|S||Q| + 3|D| for non-empty Q and 14
    otherwise, a function of |Q|, |S| and |D| only.
    """
    work = tm.working_states
    rules = tm.rules
    halting = [r for r in rules if r.new_state in tm.halts]
    halting_blank = [r for r in halting if r.symbol == tm.blank]
    nq, ns = len(work), len(tm.alphabet)
    root_halts = tm.start in tm.halts or tm.delta[tm.start, tm.blank].new_state in tm.halts
    c = {
        "root": 0 if root_halts else 1,
        "rootHalt": 1 if root_halts else 0,
        "borderL": 1,
        "cornerLeft_m": 1,
        "borderRChordStart": 1,
        "cornerRight_n": 1 + len(halting_blank),
        "borderRExec": nq - len(halting_blank),
        "inside": 3,
        "silverTransit": 6 + 6 * nq,
        "transitSignal": 6 * nq,
        "chordPass": (ns if nq else 0) + 2 * ns * nq,
        "silverChordCross": (2 * ns if nq else 0) + 2 * ns * nq,
        "chordExec": 3 * (len(rules) - len(halting)),
        "silverEmit_i": 3 * len(halting),
    }
    return {k: n for k, n in c.items() if n}


def census_of(ts):
    c = {}
    for p in ts:
        c[p.role] = c.get(p.role, 0) + 1
    return c


# ---------------------------------------------------------------------------
# validation

def _may_have_blank(role):
    return role.startswith(BORDER_ROLE_PREFIXES)


def validate_tileset(ts):
    """Return a list of violation strings; empty means valid."""
    out = []
    seen = set()
    for p in ts.prototypes:
        if p.id in seen:
            out.append("duplicate id %s" % p.id)
        seen.add(p.id)
        if len(p.edges) != 7:
            out.append("%s: %d edges, expected 7" % (p.id, len(p.edges)))
            continue
        if p.role not in ROLES:
            out.append("%s: unknown role %r" % (p.id, p.role))
        if not _may_have_blank(p.role) and any(c.is_blank for c in p.edges):
            out.append("%s: blank edge on non-border role %s" % (p.id, p.role))
        for c in p.edges:
            if c.sym is not None and c.tag != "v":
                out.append("%s: symbol payload off a vertical edge (%s)" % (p.id, c))
            if c.state is not None and c.tag not in ("h", "ag") and c.sym is None:
                out.append("%s: state payload on %s" % (p.id, c))
            if c.flow is not None and c.tag != "ag":
                out.append("%s: flow payload on %s" % (p.id, c))
            if c.tag == "blank" and c != BLANK:
                out.append("%s: blank colour with payload" % p.id)
    if ts.blank.id in seen:
        out.append("blank tile %s is also in T" % ts.blank.id)
    if any(not c.is_blank for c in ts.blank.edges):
        out.append("blank tile has a non-blank edge")
    return out
