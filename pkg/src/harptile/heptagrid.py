"""
The heptagrid {7,3}: Fibonacci-tree addressing, adjacency and disc geometry.

A central cell is surrounded by 7 sectors, each spanned by a Fibonacci
tree.  Tree nodes are of two kinds: W nodes have sons (B, W, W), B nodes
have sons (B, W), listed left to right.  Sector roots are W.

Every tile numbers its edges counterclockwise starting from the edge it
shares with its father (the center numbers from the edge facing sector 0).
With that convention a W node sees

    0 father, 1 right, 2 right's first son, 3 son2, 4 son1, 5 son0, 6 left

and a B node sees

    0 father, 1 right, 2 right's first son, 3 son1, 4 son0, 5 left,
    6 left's father

where "left" and "right" are same-level neighbours (left to right is the
clockwise order seen from the center).  ``build_patch`` does not trust this
table: it generates heptagons by hyperbolic reflections and reads the
adjacency off the geometry.  The tests check the two agree.
"""

import bisect
import cmath
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import acosh, cos, pi, sin, sqrt, tanh, tan

W, B = "W", "B"
LEFT, RIGHT = "left", "right"

SON_KINDS = {W: (B, W, W), B: (B, W)}
# edge slot carrying son i
SON_SLOT = {W: (5, 4, 3), B: (4, 3)}

# cosh of center-to-vertex and center-to-edge distances of the heptagon
COSH_CIRCUMRADIUS = (1 / tan(pi / 7)) * (1 / tan(pi / 3))
COSH_INRADIUS = cos(pi / 3) / sin(pi / 7)
CIRCUMRADIUS = acosh(COSH_CIRCUMRADIUS)
INRADIUS = acosh(COSH_INRADIUS)

MAX_LEVEL = 60


class BorderExceeded(Exception):
    pass


class BudgetError(Exception):
    def __init__(self, msg, level_reached):
        Exception.__init__(self, msg)
        self.level_reached = level_reached


# ---------------------------------------------------------------------------
# level tables

class _Levels(object):
    """Lazily grown per-level node kinds of one sector tree."""

    def __init__(self):
        self.kinds = [[W]]
        self.first_son = []   # first_son[n][r] = rank at level n+1 of son 0

    def ensure(self, n):
        if n > MAX_LEVEL:
            raise OverflowError("level %d beyond supported range" % n)
        while len(self.kinds) <= n:
            cur = self.kinds[-1]
            nxt, firsts = [], []
            for k in cur:
                firsts.append(len(nxt))
                nxt.extend(SON_KINDS[k])
            self.first_son.append(firsts)
            self.kinds.append(nxt)

    def size(self, n):
        self.ensure(n)
        return len(self.kinds[n])

    def father_rank(self, n, r):
        # rank at level n-1 of the father of (n, r)
        self.ensure(n)
        return bisect.bisect_right(self.first_son[n - 1], r) - 1


_levels = _Levels()


@lru_cache(maxsize=None)
def level_size(n):
    """Number of tiles at level n of one sector tree: 1, 3, 8, 21, 55, ..."""
    if n < 0:
        raise ValueError("negative level")
    if n > MAX_LEVEL:
        raise OverflowError("level %d beyond supported range" % n)
    if n == 0:
        return 1
    if n == 1:
        return 3
    return 3 * level_size(n - 1) - level_size(n - 2)


# ---------------------------------------------------------------------------
# addresses

@dataclass(frozen=True)
class TileAddress:
    sector: object = None      # None for the center, else 0..6
    path: tuple = ()

    def __post_init__(self):
        if self.sector is None:
            if self.path:
                raise ValueError("center has no path")
            return
        if not 0 <= self.sector < 7:
            raise ValueError("sector out of range: %r" % (self.sector,))
        kind = W
        for i in self.path:
            if not 0 <= i < len(SON_KINDS[kind]):
                raise ValueError("invalid son index %r under %s node" % (i, kind))
            kind = SON_KINDS[kind][i]

    @property
    def is_center(self):
        return self.sector is None

    @property
    def level(self):
        return len(self.path)

    @cached_property
    def kind(self):
        kind = W
        for i in self.path:
            kind = SON_KINDS[kind][i]
        return kind

    @cached_property
    def rank(self):
        if self.is_center:
            return 0
        _levels.ensure(len(self.path))
        r = 0
        for n, i in enumerate(self.path):
            r = _levels.first_son[n][r] + i
        return r

    def sort_key(self):
        if self.is_center:
            return (-1, -1, -1)
        return (self.level, self.sector, self.rank)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        if self.is_center:
            return "C"
        return "s%d:%s" % (self.sector, ".".join(str(i) for i in self.path))

    __repr__ = __str__

    @classmethod
    def parse(cls, text):
        text = text.strip()
        if text == "C":
            return CENTER
        if not text.startswith("s") or ":" not in text:
            raise ValueError("bad address %r" % text)
        head, _, tail = text.partition(":")
        try:
            sector = int(head[1:])
            path = tuple(int(x) for x in tail.split(".")) if tail else ()
        except ValueError:
            raise ValueError("bad address %r" % text) from None
        return cls(sector, path)


CENTER = TileAddress()


def sector_root(k):
    return TileAddress(k % 7, ())


def from_rank(sector, level, rank):
    if not 0 <= rank < level_size(level):
        raise ValueError("rank %d out of range at level %d" % (rank, level))
    path = []
    r = rank
    for n in range(level, 0, -1):
        f = _levels.father_rank(n, r)
        path.append(r - _levels.first_son[n - 1][f])
        r = f
    return TileAddress(sector, tuple(reversed(path)))


def sons(a):
    if a.is_center:
        return [sector_root(k) for k in range(7)]
    return [TileAddress(a.sector, a.path + (i,)) for i in range(len(SON_KINDS[a.kind]))]


def father(a):
    if a.is_center:
        return None
    if not a.path:
        return CENTER
    return TileAddress(a.sector, a.path[:-1])


def lateral(a, dir):
    """Same-level neighbour inside the sector tree; BorderExceeded at the edge."""
    if a.is_center:
        raise ValueError("center has no lateral neighbour")
    r = a.rank + (1 if dir == RIGHT else -1)
    if not 0 <= r < level_size(a.level):
        raise BorderExceeded("%s has no %s neighbour in its sector" % (a, dir))
    return from_rank(a.sector, a.level, r)


def ring_lateral(a, dir):
    """Same-level neighbour, crossing into the adjacent sector when needed."""
    try:
        return lateral(a, dir)
    except BorderExceeded:
        size = level_size(a.level)
        if dir == RIGHT:
            return from_rank((a.sector - 1) % 7, a.level, 0)
        return from_rank((a.sector + 1) % 7, a.level, size - 1)


def chord_successor(a):
    """Next tile down a chord: the middle son of a W, the first son of a B."""
    if a.is_center:
        raise ValueError("center is not a tree node")
    return TileAddress(a.sector, a.path + ((1,) if a.kind == W else (0,)))


def neighbors(a):
    """The 7 neighbours of ``a`` in edge order, from the combinatorial rules."""
    if a.is_center:
        return sons(a)
    right = ring_lateral(a, RIGHT)
    left = ring_lateral(a, LEFT)
    ss = sons(a)
    if a.kind == W:
        return [father(a), right, sons(right)[0], ss[2], ss[1], ss[0], left]
    return [father(a), right, sons(right)[0], ss[1], ss[0], left, father(left)]


def tree_addresses(sector, levels):
    for n in range(levels + 1):
        for r in range(level_size(n)):
            yield from_rank(sector, n, r)


# ---------------------------------------------------------------------------
# disc geometry

def disc_distance(z, w):
    num = 2 * abs(z - w) ** 2
    den = (1 - abs(z) ** 2) * (1 - abs(w) ** 2)
    return acosh(1 + num / den)


def reflect(points, a, b):
    """Reflect points in the hyperbolic line through disc points a, b."""
    cross = a.real * b.imag - a.imag * b.real
    if abs(cross) < 1e-14:
        # line through the origin: Euclidean mirror
        u = a if abs(a) > abs(b) else b
        u = u / abs(u)
        return [u * u * z.conjugate() for z in points]
    # circle orthogonal to the unit circle through a and b
    ra = (1 + abs(a) ** 2) / 2
    rb = (1 + abs(b) ** 2) / 2
    det = a.real * b.imag - a.imag * b.real
    cx = (ra * b.imag - rb * a.imag) / det
    cy = (a.real * rb - b.real * ra) / det
    c = complex(cx, cy)
    rho2 = abs(c) ** 2 - 1
    return [c + rho2 / (z - c).conjugate() for z in points]


def central_vertices():
    r = tanh(CIRCUMRADIUS / 2)
    return [r * cmath.exp(1j * (2 * j - 1) * pi / 7) for j in range(7)]


def _rotate_list(xs, k):
    return xs[k:] + xs[:k]


class Outside(object):
    """Marker for an edge slot whose neighbour lies outside the patch."""

    def __repr__(self):
        return "Outside"


OUTSIDE = Outside()


class AdjacencyMap(object):
    """
    Center plus 7 sector trees truncated at ``levels``.

    ``table[a][e]`` is ``(b, f)`` with b's edge f glued to a's edge e, or
    OUTSIDE.  ``centers`` and ``vertices`` hold disc coordinates, vertex i
    and i+1 bounding edge i.
    """

    def __init__(self, levels, table, centers, vertices):
        self.levels = levels
        self.table = table
        self.centers = centers
        self.vertices = vertices

    def __contains__(self, a):
        return a in self.table

    def __len__(self):
        return len(self.table)

    def __iter__(self):
        return iter(sorted(self.table))

    def neighbor(self, a, e):
        return self.table[a][e]

    def geometric_center(self, a):
        return self.centers[a]

    def interior(self, a):
        return all(s is not OUTSIDE for s in self.table[a])


def _key(z):
    return (round(z.real * 1e6), round(z.imag * 1e6))


class _PointIndex(object):

    def __init__(self, tol=1e-9):
        self.tol = tol
        self.buckets = {}

    def add(self, z, value):
        self.buckets.setdefault(_key(z), []).append((z, value))

    def find(self, z):
        kx, ky = _key(z)
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for w, value in self.buckets.get((kx + dx, ky + dy), ()):
                    if abs(w - z) < self.tol:
                        return value
        return None


def build_patch(levels, max_tiles=None):
    if levels < 0:
        raise ValueError("levels must be >= 0")
    centers = {CENTER: 0j}
    vertices = {CENTER: central_vertices()}
    seen = _PointIndex()
    seen.add(0j, CENTER)

    def spawn(parent, e, child):
        vs = vertices[parent]
        a, b = vs[e], vs[(e + 1) % 7]
        img = reflect(vs + [centers[parent]], a, b)
        c = img[-1]
        ring = img[:-1][::-1]           # reflection reverses orientation
        # edge i of the reversed list joins ring[i], ring[i+1]; find the one
        # equal to the shared edge (b, a) and make it edge 0
        for f in range(7):
            if abs(ring[f] - b) < 1e-9 and abs(ring[(f + 1) % 7] - a) < 1e-9:
                break
        else:
            raise AssertionError("reflected heptagon lost its shared edge")
        if seen.find(c) is not None:
            raise AssertionError("%s generated twice (clashes with %s)" % (child, seen.find(c)))
        seen.add(c, child)
        centers[child] = c
        vertices[child] = _rotate_list(ring, f)

    frontier = [CENTER]
    for k in range(7):
        spawn(CENTER, k, sector_root(k))
    frontier = [sector_root(k) for k in range(7)]
    for n in range(levels):
        nxt = []
        for a in frontier:
            for i, s in enumerate(sons(a)):
                spawn(a, SON_SLOT[a.kind][i], s)
                nxt.append(s)
        frontier = nxt
        if max_tiles is not None and len(centers) > max_tiles:
            raise BudgetError("tile budget exceeded", n + 1)

    mids = _PointIndex()
    for a, vs in vertices.items():
        for e in range(7):
            mids.add((vs[e] + vs[(e + 1) % 7]) / 2, (a, e))
    table = {}
    for a, vs in vertices.items():
        row = []
        for e in range(7):
            m = (vs[e] + vs[(e + 1) % 7]) / 2
            kx, ky = _key(m)
            hit = OUTSIDE
            for dx in (-1, 0, 1):
                for dy in (-1, 0, 1):
                    for w, (b, f) in mids.buckets.get((kx + dx, ky + dy), ()):
                        if b != a and abs(w - m) < 1e-9:
                            hit = (b, f)
            row.append(hit)
        table[a] = row
    return AdjacencyMap(levels, table, centers, vertices)


def geometric_center(a, patch=None):
    if patch is None:
        patch = build_patch(max(a.level, 0))
    z = patch.geometric_center(a)
    assert abs(z) < 1
    return (z.real, z.imag)
