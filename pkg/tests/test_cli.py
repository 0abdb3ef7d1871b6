import os

import pytest

from conftest import machine_path
from harptile.cli import main


def run(*args):
    return main([str(a) for a in args])


def test_version(capsys):
    assert run("--version") == 0
    assert "config v1" in capsys.readouterr().out


def test_pipeline(tmp_path, capsys):
    cfg = tmp_path / "h.cfg"
    assert run("harp", "-m", machine_path("mixed3"), "-o", cfg) == 0
    assert os.path.exists(str(cfg) + ".tiles")
    assert run("check", "-c", cfg) == 0
    assert "OK 33" in capsys.readouterr().out
    svg = tmp_path / "h.svg"
    assert run("render", "-c", cfg, "--depth", 3, "-o", svg) == 0
    assert svg.read_text().count("data-role") == 33
    assert run("render", "-c", cfg, "--depth", 2, "-o", svg) == 2


def test_check_violations(tmp_path, capsys):
    cfg = tmp_path / "b.cfg"
    run("harp", "-m", machine_path("bounce2"), "-o", cfg)
    lines = cfg.read_text().splitlines()
    lines = [ln for ln in lines if "s0:2" not in ln or ln.startswith("tileset")]
    cfg.write_text("\n".join(lines) + "\n")
    capsys.readouterr()
    assert run("check", "-c", cfg) == 1
    assert capsys.readouterr().out.startswith("VIOLATION ")


def test_search_roundtrip(tmp_path, capsys):
    ts = tmp_path / "t.tiles"
    out = tmp_path / "f.cfg"
    assert run("compile", "-m", machine_path("halt1"), "-o", ts) == 0
    assert run("search", "-t", ts, "--max-cells", 10, "--radius", 2, "-o", out) == 0
    assert "FOUND 4" in capsys.readouterr().out
    assert run("check", "-c", out) == 0
    assert run("search", "-t", ts, "--max-cells", 3, "--radius", 2) == 1
    assert run("search", "-t", ts, "--max-cells", 10, "--radius", 2, "--count") == 0
    assert "COUNT 4" in capsys.readouterr().out.splitlines()[-1]


def test_not_halting(tmp_path):
    assert run("harp", "-m", machine_path("loop_right"), "--max-steps", 30, "-o", tmp_path / "x") == 3
    assert run("demo", "-m", machine_path("loop_right"), "--max-steps", 30) == 3


def test_input_errors(tmp_path):
    bad = tmp_path / "bad.tm"
    bad.write_text("states: a\n")
    assert run("compile", "-m", bad) == 2
    assert run("compile", "-m", tmp_path / "missing.tm") == 2
    assert run("check", "-c", tmp_path / "missing.cfg") == 2
    assert run("demo", "-m", machine_path("left_edge")) == 2
    assert run("bogus") == 2


def test_demo(tmp_path, capsys):
    svg = tmp_path / "d.svg"
    assert run("demo", "-m", machine_path("incrementer"), "--svg", svg) == 0
    out = capsys.readouterr().out
    assert "halt_time=3 tiles=33 check=OK" in out
    assert "witnessed" in out and svg.exists()
