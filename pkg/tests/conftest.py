import os

import pytest

from harptile.machine import load_machine

MACHINES = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "machines")

HALTING = {"halt0": 0, "halt1": 1, "bounce2": 2, "incrementer": 3, "mixed3": 3}
LOOPING = ("loop_inplace", "loop_right", "loop_bounce")


def machine_path(name):
    return os.path.join(MACHINES, name + ".tm")


def machine(name):
    return load_machine(machine_path(name))


@pytest.fixture
def tm():
    return machine


# one line per acceptance criterion, printed after the run
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[key])
