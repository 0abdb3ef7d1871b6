"""
Exhaustive backtracking search for finite tilings inside a bounded patch.

{7,3} is tile-transitive, so the first tile can be anchored on the central
cell; every prototype in every rotation is tried there.  The search then
grows only through non-blank edges: a cell is demanded as soon as a placed
tile shows it a non-blank colour, and the most constrained demanded cell is
filled next.  When nothing is demanded, every edge facing an unplaced cell
is blank and the placed tiles form a solution.  Any finite solution contains
such a component, so the search decides existence within the bounds.

Each anchor option gets its own node budget.  That makes the verdict
independent of anchor order and of how anchors are split across worker
processes; only ``time_limit`` depends on the clock.
"""

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from harptile.heptagrid import CENTER, OUTSIDE, build_patch
from harptile.harp import Configuration
from harptile.reduction import BLANK

FOUND, NONE, EXHAUSTED = "FOUND", "NONE", "EXHAUSTED"


@dataclass
class SearchBudget:
    max_cells: int = 40
    radius: int = 3
    max_nodes: int = 1000000
    time_limit: float = 300.0

    def __post_init__(self):
        for name in ("max_cells", "max_nodes", "time_limit"):
            if getattr(self, name) <= 0:
                raise ValueError("%s must be positive" % name)
        if self.radius < 0:
            raise ValueError("radius must be >= 0")


@dataclass
class SearchResult:
    verdict: str
    config: object = None
    nodes: int = 0
    depth: int = 0
    count: object = None
    radius: int = 0

    def line(self):
        if self.verdict == FOUND:
            return "FOUND %d" % len(self.config)
        if self.verdict == NONE:
            return "NONE radius=%d" % self.radius
        return "EXHAUSTED nodes=%d" % self.nodes


class _Exhausted(Exception):
    pass


class _Search(object):

    def __init__(self, ts, budget, patch=None):
        self.ts = ts
        self.budget = budget
        self.patch = patch if patch is not None else build_patch(budget.radius)
        self.options = [(p.id, r, p.rotated(r)) for p in ts for r in range(7)]
        index = [{} for _ in range(7)]
        for i, (_, _, cols) in enumerate(self.options):
            for e, c in enumerate(cols):
                index[e][c] = index[e].get(c, 0) | (1 << i)
        self.index = index
        self.all = (1 << len(self.options)) - 1
        self.cells = list(self.patch)
        self.init_cand = {}
        for a in self.cells:
            m = self.all
            for e, s in enumerate(self.patch.table[a]):
                if s is OUTSIDE:
                    m &= index[e].get(BLANK, 0)
            self.init_cand[a] = m

    def run_anchor(self, opt, count=False):
        """Search below one anchor option.  Returns (solutions, nodes, depth)."""
        self.nodes = 0
        self.depth = 0
        self.deadline = time.monotonic() + self.budget.time_limit
        self.cand = dict(self.init_cand)
        self.demand = {}
        self.placed = {}
        self.count = count
        self.found = []
        if not (self.cand[CENTER] >> opt) & 1:
            return [], 0, 0
        try:
            self._place(CENTER, opt)
        except _Exhausted:
            return None, self.nodes, self.depth
        return self.found, self.nodes, self.depth

    def _place(self, a, opt):
        self.nodes += 1
        if self.nodes > self.budget.max_nodes or (
                self.nodes % 2048 == 0 and time.monotonic() > self.deadline):
            raise _Exhausted()
        cols = self.options[opt][2]
        saved = []
        dead = False
        self.placed[a] = opt
        own_demand = self.demand.pop(a, 0)
        self.depth = max(self.depth, len(self.placed))
        for e, s in enumerate(self.patch.table[a]):
            if s is OUTSIDE:
                continue
            b, f = s
            if b in self.placed:
                continue
            saved.append((b, self.cand[b], self.demand.get(b, 0)))
            self.cand[b] &= self.index[f].get(cols[e], 0)
            if not cols[e].is_blank:
                self.demand[b] = self.demand.get(b, 0) + 1
            if not self.cand[b] and self.demand.get(b, 0):
                dead = True
        if not dead:
            self._extend()
        for b, c, d in reversed(saved):
            self.cand[b] = c
            if d:
                self.demand[b] = d
            else:
                self.demand.pop(b, None)
        if own_demand:
            self.demand[a] = own_demand
        del self.placed[a]

    def _extend(self):
        if self.found and not self.count:
            return
        demanded = [b for b, d in self.demand.items() if d]
        if not demanded:
            self.found.append(dict(self.placed))
            return
        # every demanded cell needs a tile of its own
        if len(self.placed) + len(demanded) > self.budget.max_cells:
            return
        best, best_n = None, None
        for b in demanded:
            n = self.cand[b].bit_count()
            if best is None or n < best_n or (n == best_n and b < best):
                best, best_n = b, n
                if n == 0:
                    return
        m = self.cand[best]
        while m:
            low = m & -m
            self._place(best, low.bit_length() - 1)
            if self.found and not self.count:
                return
            m ^= low


def _to_placements(search, sol):
    return {a: search.options[o][:2] for a, o in sol.items()}


def canonical(placements, ts):
    """Colour pattern of a solution, up to rotation about the central cell."""
    forms = []
    for s in range(7):
        items = []
        for a, (pid, rot) in placements.items():
            cols = ts[pid].rotated(rot)
            if a.is_center:
                b = a
                cols = tuple(cols[(e - s) % 7] for e in range(7))
            else:
                b = type(a)((a.sector + s) % 7, a.path)
            items.append((str(b), tuple(str(c) for c in cols)))
        forms.append(tuple(sorted(items)))
    return min(forms)


def _worker(args):
    ts, budget, opts, count = args
    s = _Search(ts, budget)
    out = []
    for o in opts:
        sols, nodes, depth = s.run_anchor(o, count)
        if sols is None:
            out.append((o, None, nodes, depth))
        else:
            out.append((o, [_to_placements(s, x) for x in sols], nodes, depth))
        if sols and not count:
            break
    return out


def _run(ts, budget, count, threads, order):
    n_opts = len(ts) * 7
    opts = list(order) if order is not None else list(range(n_opts))
    if threads > 1 and len(opts) > 1:
        chunks = [opts[i::threads] for i in range(threads)]
        with ProcessPoolExecutor(threads) as ex:
            parts = list(ex.map(_worker, [(ts, budget, c, count) for c in chunks]))
        results = sorted((r for p in parts for r in p), key=lambda r: opts.index(r[0]))
    else:
        results = _worker((ts, budget, opts, count))
    return results


def find_finite_tiling(ts, budget, threads=1, order=None):
    results = _run(ts, budget, False, threads, order)
    nodes = sum(r[2] for r in results)
    depth = max([r[3] for r in results] + [0])
    for o, sols, _, _ in results:
        if sols:
            return SearchResult(FOUND, Configuration(sols[0], ts), nodes, depth, radius=budget.radius)
    verdict = EXHAUSTED if any(r[1] is None for r in results) else NONE
    return SearchResult(verdict, None, nodes, depth, radius=budget.radius)


def count_solutions(ts, budget, threads=1):
    """Distinct anchored solutions, up to rotation about the anchor cell."""
    results = _run(ts, budget, True, threads, None)
    nodes = sum(r[2] for r in results)
    depth = max([r[3] for r in results] + [0])
    if any(r[1] is None for r in results):
        return SearchResult(EXHAUSTED, None, nodes, depth, radius=budget.radius)
    forms = set()
    for _, sols, _, _ in results:
        for pl in sols:
            forms.add(canonical(pl, ts))
    return SearchResult(FOUND if forms else NONE, None, nodes, depth, len(forms), budget.radius)
