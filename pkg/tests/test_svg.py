import xml.etree.ElementTree as ET

import pytest

from dualgeo.core import Line2, Point2, preset
from dualgeo.envelope import upper_envelope
from dualgeo.errors import EmptyInputError, ValidationError
from dualgeo.halfplane import HalfPlane, Polygon, Side
from dualgeo.svg import Scene, SceneElement, decode_scene, dual_scene, encode_scene, fmt, render_svg

NS = "{http://www.w3.org/2000/svg}"


def tags(svg):
    root = ET.fromstring(svg)
    out = {}
    for el in root.iter():
        t = el.tag.replace(NS, "")
        out[t] = out.get(t, 0) + 1
    return out


def test_single_point_single_circle():
    svg = render_svg(Scene((SceneElement("point", Point2(1, 2)),)))
    assert tags(svg).get("circle") == 1
    root = ET.fromstring(svg)
    assert root.get("version") == "1.1"


def test_deterministic_bytes():
    scene = Scene((
        SceneElement("point", Point2(0.1, 0.2), "p"),
        SceneElement("line", Line2(1 / 3, -1), "L"),
        SceneElement("polygon", Polygon(((0, 0), (1, 0), (0, 1))), "tri"),
        SceneElement("envelope", upper_envelope([Line2(1, 0), Line2(-1, 0)])),
        SceneElement("region", ((HalfPlane(Line2(0, 1), Side.TOP), HalfPlane(Line2(0, -1), Side.BOTTOM)), ())),
        SceneElement("segment", (Point2(0, 0), Point2(2, 2))),
    ))
    a = render_svg(scene, (-3, -3, 3, 3))
    b = render_svg(scene, (-3, -3, 3, 3))
    assert a == b
    assert a.encode() == render_svg(decode_scene(encode_scene(scene)), (-3, -3, 3, 3)).encode()
    t = tags(a)
    assert t["circle"] == 1 and t["polygon"] == 2 and t["polyline"] == 1 and t["line"] == 2 and t["text"] == 3


def test_dual_scene_swaps_roles():
    p = Point2(1, 2)
    L = Line2(2, 0)  # passes through p
    primal = Scene((SceneElement("point", p, "p"), SceneElement("line", L, "L")))
    dual = dual_scene(primal, preset("berg"))
    kinds = [e.kind for e in dual.elements]
    assert kinds == ["line", "point"]
    assert [e.style for e in dual.elements] == ["dual", "dual"]
    tp, td = tags(render_svg(primal)), tags(render_svg(dual))
    assert (tp["circle"], tp["line"]) == (td["line"], td["circle"]) == (1, 1)


def test_number_format():
    assert fmt(1.0) == "1"
    assert fmt(-0.0) == "0"
    assert fmt(0.1) == "0.1"
    assert fmt(1e-300) == "1e-300"


def test_errors():
    with pytest.raises(EmptyInputError):
        render_svg(Scene(()))
    with pytest.raises(ValidationError):
        Scene((SceneElement("point", Point2(0, 0), "a"), SceneElement("point", Point2(1, 1), "a")))
    with pytest.raises(ValidationError):
        Scene((SceneElement("blob", None),))
    with pytest.raises(ValidationError):
        render_svg(Scene((SceneElement("point", Point2(0, 0)),)), (1, 1, 0, 2))
    with pytest.raises(ValidationError):
        decode_scene({"elements": [{"type": "blob"}]})


def test_labels_are_escaped():
    svg = render_svg(Scene((SceneElement("point", Point2(0, 0), "a<b"),)))
    assert "a&lt;b" in svg
    ET.fromstring(svg)
