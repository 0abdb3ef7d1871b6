import pytest

from conftest import HALTING, LOOPING, machine
from harptile.reduction import (BLANK, ROLES, EdgeColor, TileSetParseError, ag, census_of,
                                compile_machine, h, parse_tileset, prototile_census, v,
                                validate_tileset)

ALL = sorted(HALTING) + list(LOOPING) + ["census_fast", "census_slow"]


def formula(tm):
    nq, ns, nd = len(tm.working_states), len(tm.alphabet), len(tm.delta)
    return 14 + 13 * nq + 3 * ns + 4 * ns * nq + 3 * nd if nq else 14


@pytest.fixture(scope="module")
def compiled():
    return {n: compile_machine(machine(n)) for n in ALL}


@pytest.mark.parametrize("name", ALL)
def test_census(name, compiled):
    tm, ts = machine(name), compiled[name]
    assert census_of(ts) == prototile_census(tm)
    assert len(ts) == formula(tm)


def test_known_sizes(compiled):
    assert {n: len(compiled[n]) for n in ("halt0", "halt1", "bounce2", "incrementer")} == {
        "halt0": 37, "halt1": 74, "bounce2": 101, "incrementer": 128}


@pytest.mark.parametrize("name", ALL)
def test_validate(name, compiled):
    assert validate_tileset(compiled[name]) == []


def test_roles_known(compiled):
    for ts in compiled.values():
        assert {p.role for p in ts} <= set(ROLES)
        assert len({p.id for p in ts}) == len(ts)


def test_immediate_halt_root(compiled):
    ts = compiled["halt0"]
    roots = [p for p in ts if p.role == "rootHalt"]
    assert len(roots) == 1
    assert all(c == BLANK for c in roots[0].edges)


def test_non_border_roles_have_no_blank(compiled):
    from harptile.reduction import BORDER_ROLE_PREFIXES
    for ts in compiled.values():
        for p in ts:
            if not p.role.startswith(BORDER_ROLE_PREFIXES):
                assert not any(c.is_blank for c in p.edges), p.line()


def test_roundtrip(compiled):
    for ts in compiled.values():
        back = parse_tileset(ts.to_text())
        assert back.prototypes == ts.prototypes
        assert back.to_text() == ts.to_text()


@pytest.mark.parametrize("c", [BLANK, v(1, "1", "q0", "R"), v(0), h("q", "L"), h(), ag("L"),
                               ag("R", "q2", "S")])
def test_color_roundtrip(c):
    assert EdgeColor.parse(str(c)) == c


@pytest.mark.parametrize("text", ["", "tileset v2\nblank b\n", "tileset v1\n",
                                  "tileset v1\nblank b\ntile x role=nope edges=blank\n",
                                  "tileset v1\nblank b\ntile x role=inside edges=blank,blank\n"])
def test_parse_errors(text):
    with pytest.raises((TileSetParseError, ValueError)):
        parse_tileset(text)


def test_sons_accept_what_fathers_send(compiled):
    # every colour sent down a son slot is accepted on some father edge
    for ts in compiled.values():
        accepted = {p.edges[0] for p in ts}
        for p in ts:
            for c in p.edges[3:6]:
                if c.tag == "v":
                    assert c in accepted, p.line()


def test_census_independent_of_runtime(compiled):
    a, b = machine("census_fast"), machine("census_slow")
    assert a.signature() == b.signature()
    assert census_of(compiled["census_fast"]) == census_of(compiled["census_slow"])
