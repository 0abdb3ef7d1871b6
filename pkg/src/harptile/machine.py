"""
Deterministic Turing machines on a semi-infinite tape, started on an empty
tape with the head on cell 0.

Machine file grammar (UTF-8, one directive per line, ``#`` starts a comment,
names are ``[A-Za-z0-9_]+``, list items separated by blanks or commas)::

    states:   q0 q1 halt
    alphabet: _ 1
    blank:    _
    start:    q0
    halts:    halt
    rule:     q0 _ -> q1 1 R

Every (non-halting state, symbol) pair needs exactly one rule; halting
states have none.
"""

import re
from dataclasses import dataclass, field

MOVES = {"L": -1, "R": 1, "S": 0}
NAME = re.compile(r"^[A-Za-z0-9_]+$")


class ParseError(ValueError):
    def __init__(self, line, column, reason):
        ValueError.__init__(self, "line %d, column %d: %s" % (line, column, reason))
        self.line = line
        self.column = column
        self.reason = reason


class LeftEdgeViolation(Exception):
    def __init__(self, step):
        Exception.__init__(self, "head moves left of cell 0 at step %d" % step)
        self.step = step


@dataclass(frozen=True)
class Rule:
    state: str
    symbol: str
    new_state: str
    write: str
    move: str


@dataclass
class TuringMachine:
    states: tuple
    alphabet: tuple
    blank: str
    start: str
    halts: frozenset
    delta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.check()

    def check(self):
        errs = []
        if len(set(self.states)) != len(self.states):
            errs.append("duplicate state")
        if len(set(self.alphabet)) != len(self.alphabet):
            errs.append("duplicate symbol")
        if self.blank not in self.alphabet:
            errs.append("blank symbol not in alphabet")
        if self.start not in self.states:
            errs.append("unknown start state %r" % self.start)
        for h in self.halts:
            if h not in self.states:
                errs.append("unknown halting state %r" % h)
        for (q, s), r in self.delta.items():
            if q in self.halts:
                errs.append("rule defined on halting state %r" % q)
            if r.new_state not in self.states or r.write not in self.alphabet or r.move not in MOVES:
                errs.append("malformed rule %r" % (r,))
        for q in self.working_states:
            for s in self.alphabet:
                if (q, s) not in self.delta:
                    errs.append("non-total transition table: no rule for (%s, %s)" % (q, s))
        if errs:
            raise ValueError("; ".join(errs))

    @property
    def working_states(self):
        return tuple(q for q in self.states if q not in self.halts)

    @property
    def rules(self):
        """Rules in a fixed order: by state, then symbol, as declared."""
        return [self.delta[q, s] for q in self.working_states for s in self.alphabet]

    def signature(self):
        return (len(self.states), len(self.alphabet), len(self.delta))

    def to_text(self):
        lines = [
            "states: " + " ".join(self.states),
            "alphabet: " + " ".join(self.alphabet),
            "blank: " + self.blank,
            "start: " + self.start,
            "halts: " + " ".join(q for q in self.states if q in self.halts),
        ]
        for r in self.rules:
            lines.append("rule: %s %s -> %s %s %s" % (r.state, r.symbol, r.new_state, r.write, r.move))
        return "\n".join(lines) + "\n"


def _names(text, lineno, col):
    items = [x for x in re.split(r"[\s,]+", text.strip()) if x]
    for x in items:
        if not NAME.match(x):
            raise ParseError(lineno, col, "bad name %r" % x)
    return items


def parse_machine(text):
    header = {}
    rules = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        m = re.match(r"^\s*(\w+)\s*:(.*)$", line)
        if not m:
            raise ParseError(lineno, 1, "expected '<directive>: ...'")
        key, rest = m.group(1), m.group(2)
        col = m.start(2) + 1
        if key == "rule":
            rm = re.match(r"^\s*(\S+)\s+(\S+)\s*->\s*(\S+)\s+(\S+)\s+(\S+)\s*$", rest)
            if not rm:
                raise ParseError(lineno, col, "expected 'rule: <q> <s> -> <q'> <s'> <L|R|S>'")
            rules.append((lineno, col, rm.groups()))
        elif key in ("states", "alphabet", "blank", "start", "halts"):
            if key in header:
                raise ParseError(lineno, 1, "duplicate directive %r" % key)
            header[key] = (lineno, col, _names(rest, lineno, col))
        else:
            raise ParseError(lineno, 1, "unknown directive %r" % key)

    for key in ("states", "alphabet", "blank", "start"):
        if key not in header:
            raise ParseError(0, 0, "missing directive %r" % key)
    states = header["states"][2]
    alphabet = header["alphabet"][2]
    for key in ("blank", "start"):
        ln, col, vals = header[key]
        if len(vals) != 1:
            raise ParseError(ln, col, "%s takes exactly one name" % key)
    blank = header["blank"][2][0]
    start = header["start"][2][0]
    halts = header.get("halts", (0, 0, []))[2]
    if blank not in alphabet:
        raise ParseError(header["blank"][0], header["blank"][1], "blank %r not in alphabet" % blank)
    if start not in states:
        raise ParseError(header["start"][0], header["start"][1], "unknown state %r" % start)
    for h in halts:
        if h not in states:
            raise ParseError(header["halts"][0], header["halts"][1], "unknown state %r" % h)

    delta = {}
    for ln, col, (q, s, q2, s2, mv) in rules:
        for name in (q, q2):
            if name not in states:
                raise ParseError(ln, col, "unknown state %r" % name)
        for name in (s, s2):
            if name not in alphabet:
                raise ParseError(ln, col, "unknown symbol %r" % name)
        if mv not in MOVES:
            raise ParseError(ln, col, "move must be L, R or S, got %r" % mv)
        if q in halts:
            raise ParseError(ln, col, "rule on halting state %r" % q)
        if (q, s) in delta:
            raise ParseError(ln, col, "duplicate rule for (%s, %s)" % (q, s))
        delta[q, s] = Rule(q, s, q2, s2, mv)
    for q in states:
        if q in halts:
            continue
        for s in alphabet:
            if (q, s) not in delta:
                raise ParseError(0, 0, "non-total transition table: no rule for (%s, %s)" % (q, s))
    return TuringMachine(tuple(states), tuple(alphabet), blank, start, frozenset(halts), delta)


def load_machine(path):
    with open(path, encoding="utf-8") as f:
        return parse_machine(f.read())


@dataclass
class Trace:
    """
    Step n executes in ``states[n]`` at cell ``positions[n]`` on tape
    ``tapes[n]`` (tape as it was before that step).  ``halt_time`` is the
    index of the step whose rule enters a halting state (0 when the start
    state already halts), or None when the budget ran out first.
    """
    machine: TuringMachine
    states: list
    positions: list
    tapes: list
    moves: list
    final_tape: dict
    halt_time: object = None

    @property
    def halted(self):
        return self.halt_time is not None

    def symbol(self, n, k):
        if n == len(self.tapes):
            return self.final_tape.get(k, self.machine.blank)
        return self.tapes[n].get(k, self.machine.blank)

    @property
    def max_excursion(self):
        return max(self.positions) if self.positions else 0


def run(tm, max_steps):
    if max_steps < 0:
        raise ValueError("max_steps must be >= 0")
    q, p, tape = tm.start, 0, {}
    states, positions, tapes, moves = [], [], [], []
    if q in tm.halts:
        return Trace(tm, [q], [0], [{}], [], {}, 0)
    for n in range(max_steps + 1):
        states.append(q)
        positions.append(p)
        tapes.append(dict(tape))
        r = tm.delta[q, tape.get(p, tm.blank)]
        if r.write == tm.blank:
            tape.pop(p, None)
        else:
            tape[p] = r.write
        moves.append(r.move)
        if r.new_state in tm.halts:
            return Trace(tm, states, positions, tapes, moves, tape, n)
        p += MOVES[r.move]
        if p < 0:
            raise LeftEdgeViolation(n)
        q = r.new_state
    return Trace(tm, states, positions, tapes, moves, tape, None)


def cell_history(trace, k):
    """(time, symbol) for cell k at every recorded time 0..len(tapes)."""
    return [(n, trace.symbol(n, k)) for n in range(len(trace.tapes) + 1)]
