import xml.etree.ElementTree as ET

import pytest

from conftest import machine
from harptile.harp import build_harp
from harptile.heptagrid import build_patch
from harptile.render import (MissingRoleColor, RenderStyle, adjacency_pairs, layout,
                             shared_vertex_adjacency, to_svg)

NS = "{http://www.w3.org/2000/svg}"


def polygons(svg):
    return ET.fromstring(svg.encode()).findall(NS + "polygon")


def test_neutral_patch():
    polys = polygons(to_svg(layout(build_patch(2))))
    assert len(polys) == 85
    assert not any("data-role" in p.attrib for p in polys)


def test_harp_roles():
    cfg, _ = build_harp(machine("incrementer"), 50)
    svg = to_svg(layout(build_patch(4)), cfg)
    roles = [p for p in polygons(svg) if "data-role" in p.attrib]
    assert len(roles) == 33
    assert {p.get("data-address") for p in roles} == {str(a) for a in cfg.placements}


def test_deterministic():
    cfg, _ = build_harp(machine("bounce2"), 50)
    lay = layout(build_patch(3))
    assert to_svg(lay, cfg, RenderStyle(guides=True)) == to_svg(lay, cfg, RenderStyle(guides=True))


def test_depth_limit():
    assert len(polygons(to_svg(layout(build_patch(3)), style=RenderStyle(depth=1)))) == 1 + 7 * 4


def test_missing_color():
    cfg, _ = build_harp(machine("halt1"), 10)
    with pytest.raises(MissingRoleColor):
        to_svg(layout(build_patch(2)), cfg, RenderStyle(colors={}))


def test_shared_vertex_adjacency():
    p = build_patch(3)
    assert shared_vertex_adjacency(layout(p)) == adjacency_pairs(p)
