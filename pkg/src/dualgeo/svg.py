"""Static SVG rendering of primal/dual scenes.

World coordinates are written directly with y negated, so the viewBox is the
viewport itself and every number is the shortest decimal that round-trips.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from xml.sax.saxutils import escape

from .core import Line2, Point2, dual_line, dual_point
from .envelope import Envelope, lower_envelope, upper_envelope
from .errors import EmptyInputError, ValidationError
from .halfplane import ClampKind, FeasibleRegion, HalfPlane, Polygon, Side, XClamp, intersect_halfplanes

KINDS = ("point", "line", "segment", "polygon", "region", "envelope")

STYLE = (
    ".point{fill:#1f4e79}"
    ".line,.segment,.envelope{stroke:#1f4e79;fill:none}"
    ".polygon{stroke:#333;fill:#dde7f0}"
    ".region{stroke:#7a3b00;fill:#f6d8b8;fill-opacity:0.6}"
    ".dual.point{fill:#a11}"
    ".dual.line{stroke:#a11}"
    "text{font:10px sans-serif}"
)


@dataclass(frozen=True)
class SceneElement:
    """One drawable item.

    ``data`` depends on ``kind``: Point2; Line2; a pair of Point2; Polygon;
    ``(halfplanes, clamps)`` for a region; Envelope for an envelope.
    """

    kind: str
    data: object
    label: str | None = None
    style: str | None = None


@dataclass(frozen=True)
class Scene:
    elements: tuple

    def __post_init__(self):
        labels = [e.label for e in self.elements if e.label is not None]
        if len(labels) != len(set(labels)):
            raise ValidationError("scene labels must be unique", "label")
        for e in self.elements:
            if e.kind not in KINDS:
                raise ValidationError(f"unknown scene element kind {e.kind!r}", "kind")


def fmt(v) -> str:
    s = repr(float(v) + 0.0)
    return s[:-2] if s.endswith(".0") else s


def _anchor(e: SceneElement, vp):
    d = e.data
    if e.kind == "point":
        return d
    if e.kind == "line":
        xm = 0.5 * (vp[0] + vp[2])
        return Point2(xm, d.at(xm))
    if e.kind == "segment":
        return d[0]
    if e.kind == "polygon":
        return d.vertices[0]
    return None


def bounding_viewport(scene: Scene, pad=0.1):
    xs, ys = [], []
    for e in scene.elements:
        if e.kind == "point":
            xs.append(e.data.x)
            ys.append(e.data.y)
        elif e.kind == "segment":
            xs += [p.x for p in e.data]
            ys += [p.y for p in e.data]
        elif e.kind == "polygon":
            xs += [p.x for p in e.data.vertices]
            ys += [p.y for p in e.data.vertices]
    if not xs:
        return (-5.0, -5.0, 5.0, 5.0)
    w = max(max(xs) - min(xs), max(ys) - min(ys), 1.0)
    return (min(xs) - pad * w, min(ys) - pad * w, max(xs) + pad * w, max(ys) + pad * w)


def _viewport_constraints(vp):
    x0, y0, x1, y1 = vp
    return (
        [HalfPlane(Line2(0.0, y1), Side.TOP), HalfPlane(Line2(0.0, y0), Side.BOTTOM)],
        [XClamp(ClampKind.LOWER, x0), XClamp(ClampKind.UPPER, x1)],
    )


def _pts(points):
    return " ".join(f"{fmt(x)},{fmt(-y)}" for x, y in points)


def _element_svg(e: SceneElement, vp, r):
    x0, _, x1, _ = vp
    cls = e.kind if not e.style else f"{e.style} {e.kind}"
    d = e.data
    if e.kind == "point":
        return f'<circle class="{cls}" cx="{fmt(d.x)}" cy="{fmt(-d.y)}" r="{fmt(r)}"/>'
    if e.kind == "line":
        return (f'<line class="{cls}" x1="{fmt(x0)}" y1="{fmt(-d.at(x0))}" '
                f'x2="{fmt(x1)}" y2="{fmt(-d.at(x1))}" vector-effect="non-scaling-stroke"/>')
    if e.kind == "segment":
        p, q = d
        return (f'<line class="{cls}" x1="{fmt(p.x)}" y1="{fmt(-p.y)}" '
                f'x2="{fmt(q.x)}" y2="{fmt(-q.y)}" vector-effect="non-scaling-stroke"/>')
    if e.kind == "polygon":
        return f'<polygon class="{cls}" points="{_pts(d.vertices)}" vector-effect="non-scaling-stroke"/>'
    if e.kind == "region":
        halfplanes, clamps = d
        hv, cv = _viewport_constraints(vp)
        region: FeasibleRegion = intersect_halfplanes(list(halfplanes) + hv, list(clamps) + cv)
        if region.is_empty or len(region.vertices) < 3:
            return None
        return f'<polygon class="{cls}" points="{_pts(region.vertices)}" vector-effect="non-scaling-stroke"/>'
    if e.kind == "envelope":
        env: Envelope = d
        xs = [x0] + [b for b in env.breakpoints if x0 < b < x1] + [x1]
        return f'<polyline class="{cls}" points="{_pts((x, env.at(x)) for x in xs)}" vector-effect="non-scaling-stroke"/>'
    raise ValidationError(f"unknown scene element kind {e.kind!r}", "kind")


def render_svg(scene: Scene, viewport=None) -> str:
    """SVG 1.1 document for ``scene``; identical input gives identical bytes."""
    if not scene.elements:
        raise EmptyInputError("cannot render an empty scene")
    vp = tuple(float(v) for v in (viewport or bounding_viewport(scene)))
    x0, y0, x1, y1 = vp
    if not (x1 > x0 and y1 > y0):
        raise ValidationError("viewport must have positive width and height", "viewport")
    w, h = x1 - x0, y1 - y0
    r = 0.008 * math.hypot(w, h)
    width = 480
    height = max(1, round(width * h / w))
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="{fmt(x0)} {fmt(-y1)} {fmt(w)} {fmt(h)}">',
        f"<style>{STYLE}</style>",
    ]
    for e in scene.elements:
        s = _element_svg(e, vp, r)
        if s is not None:
            out.append(s)
    for e in scene.elements:
        a = _anchor(e, vp)
        if e.label is not None and a is not None:
            out.append(f'<text x="{fmt(a.x + r)}" y="{fmt(-a.y - r)}" font-size="{fmt(3 * r)}">{escape(e.label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def dual_scene(scene: Scene, params) -> Scene:
    """Points become their dual lines and lines their dual points; other items are dropped."""
    out = []
    for e in scene.elements:
        label = None if e.label is None else f"d({e.label})"
        if e.kind == "point":
            out.append(SceneElement("line", dual_point(e.data, params), label, "dual"))
        elif e.kind == "line":
            out.append(SceneElement("point", dual_line(e.data, params), label, "dual"))
    return Scene(tuple(out))


# --------------------------------------------------------------------------
# JSON form


def decode_scene(doc) -> Scene:
    from .serialize import decode_clamp, decode_halfplane, decode_line, decode_point

    if not isinstance(doc, dict) or not isinstance(doc.get("elements"), list):
        raise ValidationError("scene must be an object with an 'elements' array", "scene")
    elements = []
    for raw in doc["elements"]:
        kind = raw.get("type")
        label, style = raw.get("label"), raw.get("class")
        if kind == "point":
            data = decode_point(raw["at"], "scene.point")
        elif kind == "line":
            data = decode_line(raw["line"], "scene.line")
        elif kind == "segment":
            a, b = raw["ends"]
            data = (decode_point(a), decode_point(b))
        elif kind == "polygon":
            data = Polygon(tuple(decode_point(p) for p in raw["vertices"]))
        elif kind == "region":
            data = (
                tuple(decode_halfplane(h) for h in raw.get("halfplanes", [])),
                tuple(decode_clamp(c) for c in raw.get("clamps", [])),
            )
        elif kind == "envelope":
            lines = [decode_line(x) for x in raw["lines"]]
            data = (upper_envelope if raw.get("kind", "upper") == "upper" else lower_envelope)(lines)
        else:
            raise ValidationError(f"unknown scene element type {kind!r}", "type")
        elements.append(SceneElement(kind, data, label, style))
    return Scene(tuple(elements))


def encode_scene(scene: Scene) -> dict:
    from .serialize import encode

    out = []
    for e in scene.elements:
        d = {"type": e.kind}
        if e.kind == "point":
            d["at"] = encode(e.data)
        elif e.kind == "line":
            d["line"] = encode(e.data)
        elif e.kind == "segment":
            d["ends"] = [encode(p) for p in e.data]
        elif e.kind == "polygon":
            d["vertices"] = encode(e.data)
        elif e.kind == "region":
            d["halfplanes"] = [encode(h) for h in e.data[0]]
            d["clamps"] = [encode(c) for c in e.data[1]]
        elif e.kind == "envelope":
            d["kind"] = e.data.kind
            d["lines"] = [encode(ln) for ln in e.data.lines]
        if e.label is not None:
            d["label"] = e.label
        if e.style is not None:
            d["class"] = e.style
        out.append(d)
    return {"elements": out}


def points_scene(points, label_prefix="p"):
    return [SceneElement("point", p, f"{label_prefix}{i}") for i, p in enumerate(points)]
