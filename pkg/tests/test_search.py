import random

import pytest

from conftest import machine
from harptile.checker import check
from harptile.heptagrid import build_patch
from harptile.reduction import compile_machine
from harptile.search import (EXHAUSTED, FOUND, NONE, SearchBudget, count_solutions,
                             find_finite_tiling)


@pytest.fixture(scope="module")
def ts_halt1():
    return compile_machine(machine("halt1"))


def test_budget_validation():
    with pytest.raises(ValueError):
        SearchBudget(max_cells=0)
    with pytest.raises(ValueError):
        SearchBudget(radius=-1)


def test_immediate_halt_found():
    ts = compile_machine(machine("halt0"))
    res = find_finite_tiling(ts, SearchBudget(max_cells=5, radius=2))
    assert res.verdict == FOUND and len(res.config) == 1
    assert res.line() == "FOUND 1"


def test_found_is_sound(ts_halt1):
    res = find_finite_tiling(ts_halt1, SearchBudget(max_cells=10, radius=2))
    assert res.verdict == FOUND and len(res.config) == 4
    assert check(res.config, ts_halt1, build_patch(3)) == []


def test_none_when_cells_too_few(ts_halt1):
    res = find_finite_tiling(ts_halt1, SearchBudget(max_cells=3, radius=2))
    assert res.verdict == NONE
    assert res.line() == "NONE radius=2"


def test_exhausted(ts_halt1):
    res = find_finite_tiling(ts_halt1, SearchBudget(max_cells=10, radius=2, max_nodes=1))
    assert res.verdict in (EXHAUSTED, FOUND)
    res = find_finite_tiling(compile_machine(machine("loop_bounce")),
                             SearchBudget(max_cells=20, radius=3, max_nodes=2))
    assert res.verdict == EXHAUSTED
    assert res.line().startswith("EXHAUSTED nodes=")


def test_anchor_order_independent(ts_halt1):
    b = SearchBudget(max_cells=6, radius=2)
    n = len(ts_halt1) * 7
    base = find_finite_tiling(ts_halt1, b).verdict
    order = list(range(n))
    random.Random(5).shuffle(order)
    res = find_finite_tiling(ts_halt1, b, order=order)
    assert res.verdict == base == FOUND
    assert check(res.config, ts_halt1, build_patch(3)) == []


def test_threads_agree(ts_halt1):
    b = SearchBudget(max_cells=3, radius=2)
    assert find_finite_tiling(ts_halt1, b, threads=2).verdict == NONE


def test_count_halt1(ts_halt1):
    # the 4-tile harp, anchored at each of its tiles
    res = count_solutions(ts_halt1, SearchBudget(max_cells=6, radius=2))
    assert res.count == 4


def test_count_none(ts_halt1):
    res = count_solutions(ts_halt1, SearchBudget(max_cells=3, radius=2))
    assert res.verdict == NONE and res.count == 0


@pytest.mark.slow
def test_incrementer_needs_its_harp():
    # the only finite solutions are harp-sized (33 cells)
    ts = compile_machine(machine("incrementer"))
    assert find_finite_tiling(ts, SearchBudget(max_cells=20, radius=3, max_nodes=10 ** 8)).verdict == NONE
    res = find_finite_tiling(ts, SearchBudget(max_cells=33, radius=3))
    assert res.verdict == FOUND and len(res.config) == 33
    assert check(res.config, ts, build_patch(4)) == []
