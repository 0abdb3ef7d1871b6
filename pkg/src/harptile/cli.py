"""
Command line: compile, harp, check, search, render, demo.

Exit codes: 0 success or solution, 1 violations or nothing found,
2 input error, 3 budget exhausted (including a machine that does not halt
within ``--max-steps``).
"""

import argparse
import os
import sys
import time

from harptile import __version__
from harptile.checker import PatchTooSmall, check
from harptile.harp import (ConfigParseError, Configuration, NotHaltedWithinBudget,
                           build_harp, parse_config)
from harptile.heptagrid import build_patch
from harptile.machine import LeftEdgeViolation, ParseError, load_machine, run
from harptile.reduction import (TileSetParseError, compile_machine, load_tileset,
                                validate_tileset)
from harptile.render import RenderStyle, layout, to_svg
from harptile.search import EXHAUSTED, FOUND, SearchBudget, count_solutions, find_finite_tiling

OK, FAIL, INPUT_ERROR, BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)


def _machine(path):
    try:
        return load_machine(path)
    except OSError as e:
        raise InputError("cannot read machine: %s" % e)
    except (ParseError, ValueError) as e:
        raise InputError("%s: %s" % (path, e))


def _tileset(path):
    try:
        ts = load_tileset(path)
    except OSError as e:
        raise InputError("cannot read tileset: %s" % e)
    except TileSetParseError as e:
        raise InputError("%s: %s" % (path, e))
    errs = validate_tileset(ts)
    if errs:
        raise InputError("%s: invalid tileset: %s" % (path, "; ".join(errs)))
    return ts


def _config(path, ts_path=None):
    try:
        with open(path, encoding="utf-8") as f:
            placements, ref = parse_config(f.read())
    except OSError as e:
        raise InputError("cannot read configuration: %s" % e)
    except ConfigParseError as e:
        raise InputError("%s: %s" % (path, e))
    if ts_path is None:
        ts_path = ref if os.path.isabs(ref) else os.path.join(os.path.dirname(path), ref)
    return Configuration(placements, _tileset(ts_path))


def _rel(target, start_file):
    return os.path.relpath(target, os.path.dirname(os.path.abspath(start_file)))


def cmd_compile(args):
    tm = _machine(args.machine)
    ts = compile_machine(tm)
    _write(args.output, ts.to_text())
    print("compiled %d prototypes" % len(ts), file=sys.stderr)
    return OK


def cmd_harp(args):
    tm = _machine(args.machine)
    ts = compile_machine(tm)
    try:
        cfg, _ = build_harp(tm, args.max_steps, ts)
    except NotHaltedWithinBudget as e:
        print(str(e), file=sys.stderr)
        return BUDGET
    except LeftEdgeViolation as e:
        raise InputError(str(e))
    ts_path = args.tileset or (args.output + ".tiles" if args.output not in (None, "-") else "tiles.txt")
    _write(ts_path, ts.to_text())
    ref = _rel(ts_path, args.output) if args.output not in (None, "-") else ts_path
    _write(args.output, cfg.to_text(ref))
    print("harp with %d tiles" % len(cfg), file=sys.stderr)
    return OK


def _check_patch(cfg, radius):
    depth = max((a.level for a in cfg.placements if not a.is_center), default=0)
    return build_patch(radius if radius is not None else depth + 1)


def cmd_check(args):
    cfg = _config(args.config, args.tileset)
    try:
        violations = check(cfg, cfg.tileset, _check_patch(cfg, args.radius))
    except PatchTooSmall as e:
        raise InputError(str(e))
    if not violations:
        print("OK %d" % len(cfg))
        return OK
    for v in violations:
        print(v.line())
    return FAIL


def cmd_search(args):
    ts = _tileset(args.tileset)
    budget = SearchBudget(args.max_cells, args.radius, args.max_nodes, args.time_limit)
    if args.count:
        res = count_solutions(ts, budget, threads=args.threads)
        if res.verdict == EXHAUSTED:
            print(res.line())
            return BUDGET
        print("COUNT %d radius=%d" % (res.count, args.radius))
        return OK if res.count else FAIL
    res = find_finite_tiling(ts, budget, threads=args.threads)
    print(res.line())
    if res.verdict == FOUND:
        if args.output:
            ref = _rel(args.tileset, args.output) if args.output != "-" else args.tileset
            _write(args.output, res.config.to_text(ref))
        return OK
    return BUDGET if res.verdict == EXHAUSTED else FAIL


def cmd_render(args):
    cfg = None
    if args.config:
        cfg = _config(args.config, args.tileset)
        deepest = max((a.level for a in cfg.placements if not a.is_center), default=0)
        if deepest > args.depth:
            raise InputError("configuration reaches level %d, deeper than --depth %d" % (deepest, args.depth))
    style = RenderStyle(radius_px=args.size, guides=args.guides)
    _write(args.output, to_svg(layout(build_patch(args.depth)), cfg, style))
    return OK


def cmd_demo(args):
    tm = _machine(args.machine)
    t0 = time.monotonic()
    ts = compile_machine(tm)
    try:
        trace = run(tm, args.max_steps)
    except LeftEdgeViolation as e:
        raise InputError(str(e))
    print("machine: %s" % args.machine)
    print("prototiles: %d" % len(ts))
    if not trace.halted:
        print("halt_time: none within %d steps" % args.max_steps)
        print("harp: not built (no halt, so no finite solution is claimed)")
        return BUDGET
    cfg, itin = build_harp(tm, args.max_steps, ts)
    violations = check(cfg, ts, _check_patch(cfg, None))
    print("halt_time=%d tiles=%d check=%s" % (trace.halt_time, len(cfg), "OK" if not violations else "FAIL"))
    print("executions: %s" % " ".join(str(a) for a in itin.executions))
    if args.svg:
        depth = trace.halt_time + 1
        _write(args.svg, to_svg(layout(build_patch(depth)), cfg, RenderStyle(guides=True)))
        print("svg: %s" % args.svg)
    witnessed = not violations
    print("equivalence: machine halts => finite solution %s" % ("witnessed" if witnessed else "NOT witnessed"))
    print("elapsed: %.2fs" % (time.monotonic() - t0))
    return OK if witnessed else FAIL


def make_parser():
    p = argparse.ArgumentParser(prog="harptile", description=__doc__.strip().splitlines()[0])
    p.add_argument("--version", action="version",
                   version="harptile %s (machine text, tileset v1, config v1)" % __version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("compile", help="machine -> tile set")
    s.add_argument("-m", "--machine", required=True)
    s.add_argument("-o", "--output", default="-")
    s.set_defaults(func=cmd_compile)

    s = sub.add_parser("harp", help="build the finite harp configuration")
    s.add_argument("-m", "--machine", required=True)
    s.add_argument("--max-steps", type=int, default=1000)
    s.add_argument("-o", "--output", required=True)
    s.add_argument("-t", "--tileset", help="where to write the tile set (default: <output>.tiles)")
    s.set_defaults(func=cmd_harp)

    s = sub.add_parser("check", help="verify a configuration")
    s.add_argument("-c", "--config", required=True)
    s.add_argument("-t", "--tileset", help="override the tile set named in the configuration")
    s.add_argument("--radius", type=int)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("search", help="bounded search for a finite tiling")
    s.add_argument("-t", "--tileset", required=True)
    s.add_argument("--max-cells", type=int, default=20)
    s.add_argument("--radius", type=int, default=3)
    s.add_argument("--max-nodes", type=int, default=10 ** 7)
    s.add_argument("--time-limit", type=float, default=300.0)
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--count", action="store_true", help="count solutions instead")
    s.add_argument("-o", "--output", help="write the configuration found")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("render", help="SVG in the Poincare disc")
    s.add_argument("-c", "--config")
    s.add_argument("-t", "--tileset")
    s.add_argument("--depth", type=int, default=3)
    s.add_argument("--size", type=int, default=400, help="disc radius in pixels")
    s.add_argument("--guides", action="store_true")
    s.add_argument("-o", "--output", default="-")
    s.set_defaults(func=cmd_render)

    s = sub.add_parser("demo", help="compile, harp, check and render in one go")
    s.add_argument("-m", "--machine", required=True)
    s.add_argument("--max-steps", type=int, default=1000)
    s.add_argument("--svg")
    s.set_defaults(func=cmd_demo)
    return p


def main(argv=None):
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return INPUT_ERROR if e.code else OK
    try:
        return args.func(args)
    except (InputError, ValueError) as e:
        print("error: %s" % e, file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
