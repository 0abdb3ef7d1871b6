import pytest

from conftest import HALTING, LOOPING, machine
from harptile.checker import check
from harptile.harp import (ConfigParseError, NotHaltedWithinBudget, build_harp, chord_of,
                           chord_symbol, harp_size, parse_config, route_signal)
from harptile.heptagrid import CENTER, TileAddress, build_patch
from harptile.machine import cell_history, run
from harptile.reduction import BL, BR


def test_harp_size_formula():
    assert [harp_size(t) for t in range(5)] == [1, 4, 12, 33, 88]


@pytest.mark.parametrize("name, t", sorted(HALTING.items()))
def test_harp_is_solution(name, t):
    cfg, _ = build_harp(machine(name), 200)
    assert len(cfg) == harp_size(t)
    assert {a.level for a in cfg.placements} == set(range(t + 1))
    assert all(a.sector == 0 for a in cfg.placements)
    assert check(cfg, cfg.tileset, build_patch(t + 1)) == []


@pytest.mark.parametrize("name", sorted(HALTING))
def test_chords_match_tape(name):
    tm = machine(name)
    tr = run(tm, 200)
    cfg, _ = build_harp(tm, 200)
    for k in range(tr.max_excursion + 1):
        hist = dict(cell_history(tr, k))
        for n in range(k, tr.halt_time + 1):
            assert chord_symbol(cfg, k, n, tm.blank) == hist[n], (k, n)


def test_itinerary_incrementer():
    tr = run(machine("incrementer"), 50)
    it = route_signal(tr)
    assert [str(a) for a in it.executions] == ["s0:", "s0:2", "s0:2.2", "s0:2.2.2"]
    # moving right by one: the signal walks one tile to the right
    assert [len(p) for p in it.lateral_paths] == [0, 1, 1, 1]


def test_itinerary_bounce():
    tr = run(machine("bounce2"), 50)
    it = route_signal(tr)
    assert it.executions == [chord_of(0, 0), chord_of(1, 1), chord_of(0, 2)]
    assert it.lateral_paths[2][-1] == chord_of(0, 2)


def test_deterministic():
    a, _ = build_harp(machine("mixed3"), 50)
    b, _ = build_harp(machine("mixed3"), 50)
    assert a.to_text() == b.to_text()


def test_borders():
    cfg, _ = build_harp(machine("incrementer"), 50)
    for a, (pid, rot) in cfg.placements.items():
        father_edge = cfg.tileset[pid].rotated(rot)[0]
        if a.path and all(i == 0 for i in a.path):
            assert father_edge == BL
        elif a.path and all(i == 2 for i in a.path):
            assert father_edge == BR


@pytest.mark.parametrize("name", LOOPING)
def test_not_halted(name):
    with pytest.raises(NotHaltedWithinBudget):
        build_harp(machine(name), 200)


def test_chord_of_bounds():
    with pytest.raises(ValueError):
        chord_of(3, 2)
    assert chord_of(0, 0) == TileAddress(0, ())


def test_config_roundtrip():
    cfg, _ = build_harp(machine("bounce2"), 50)
    placements, ref = parse_config(cfg.to_text("x.tiles"))
    assert ref == "x.tiles" and placements == cfg.placements


@pytest.mark.parametrize("text", ["", "config v1\n", "config v1\ntileset t\ncell C tile=a rot=7\n",
                                  "config v1\ntileset t\ncell s9: tile=a rot=0\n",
                                  "config v1\ntileset t\ncell C tile=a rot=0\ncell C tile=a rot=0\n"])
def test_config_parse_errors(text):
    with pytest.raises(ConfigParseError):
        parse_config(text)


def test_center_not_used():
    cfg, _ = build_harp(machine("halt1"), 10)
    assert CENTER not in cfg.placements
