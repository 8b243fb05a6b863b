"""JSON encoding and decoding of every domain object.

Numbers are written with Python's shortest round-tripping ``repr``, object
keys come out in a fixed order, and infinite interval ends are written as
the strings ``"inf"`` / ``"-inf"`` because JSON has no infinity.
"""

from __future__ import annotations

import json
import math

from .core import (
    AffineMapParams,
    DualityClass,
    DualParams,
    GeneralLine,
    Line2,
    Order,
    Point2,
    preset,
)
from .dual_d import DualityClassD, DualParamsD, HyperplaneD, NormalizedHyperplane, PointD, preset_d
from .envelope import Envelope, EnvelopePiece, Hull
from .errors import DualGeoError, ValidationError
from .halfplane import (
    ClampKind,
    FeasibleRegion,
    HalfPlane,
    LPObjective,
    LPResult,
    Polygon,
    Side,
    Status,
    XClamp,
)
from .lifting import KnnEntry, KnnResult, LineArrangement1D
from .tolerance import Tolerance


class ParseError(DualGeoError, ValueError):
    """Malformed JSON; carries the 1-based line and column."""

    def __init__(self, message, line, column):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


def _num(v, field):
    if isinstance(v, str) and v in ("inf", "-inf"):
        return float(v)
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ValidationError(f"{field} must be a number, got {v!r}", field)
    return float(v)


def _enc_num(v):
    v = float(v)
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    if math.isnan(v):
        return None
    return v


def _need(obj, key, field):
    if not isinstance(obj, dict) or key not in obj:
        raise ValidationError(f"{field} is missing '{key}'", field)
    return obj[key]


# --------------------------------------------------------------------------
# decoders


def decode_point(v, field="point"):
    if not isinstance(v, (list, tuple)) or not v:
        raise ValidationError(f"{field} must be a non-empty array of numbers", field)
    coords = [_num(x, field) for x in v]
    if any(math.isinf(x) for x in coords):
        raise ValidationError(f"{field} coordinates must be finite", field)
    return Point2(*coords) if len(coords) == 2 else PointD(tuple(coords))


def decode_point_d(v, field="point"):
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        v = [v]
    p = decode_point(v, field)
    return PointD((p.x, p.y)) if isinstance(p, Point2) else p


def decode_line(v, field="line"):
    m = _need(v, "m", field)
    c = _num(_need(v, "c", field), f"{field}.c")
    if isinstance(m, list):
        return HyperplaneD(tuple(_num(x, f"{field}.m") for x in m), c)
    return Line2(_num(m, f"{field}.m"), c)


def decode_params(v, field="params", d=None):
    if not isinstance(v, dict):
        raise ValidationError(f"{field} must be an object", field)
    if "preset" in v:
        if "alpha" in v or "mu" in v or "a" in v:
            raise ValidationError("give either a preset or explicit parameters, not both", field)
        name = str(v["preset"])
        if name.lower().startswith("edelsbrunner") or name.lower() in ("p4", "p13"):
            dim = v.get("d", d)
            if dim is None:
                raise ValidationError("d-dimensional preset needs 'd'", field)
            return preset_d(name, int(dim))
        return preset(name)
    if "a" in v:
        a = v["a"]
        if not isinstance(a, list):
            raise ValidationError(f"{field}.a must be an array", field)
        return DualParamsD(tuple(_num(x, f"{field}.a") for x in a))
    return DualParams(_num(_need(v, "alpha", field), "alpha"), _num(_need(v, "mu", field), "mu"))


def decode_halfplane(v, field="halfplane"):
    side = str(_need(v, "side", field)).lower()
    try:
        side = Side(side)
    except ValueError:
        raise ValidationError(f"{field}.side must be 'top' or 'bottom'", field) from None
    line = decode_line(_need(v, "line", field), f"{field}.line")
    if not isinstance(line, Line2):
        raise ValidationError(f"{field}.line must be planar", field)
    return HalfPlane(line, side)


def decode_clamp(v, field="clamp"):
    kind = str(_need(v, "kind", field)).lower()
    try:
        kind = ClampKind(kind)
    except ValueError:
        raise ValidationError(f"{field}.kind must be 'lower' or 'upper'", field) from None
    return XClamp(kind, _num(_need(v, "a", field), f"{field}.a"))


def decode_objective(v, field="objective"):
    if isinstance(v, list):
        if len(v) != 2:
            raise ValidationError("objective must be [cx, cy]", field)
        return LPObjective(_num(v[0], field), _num(v[1], field))
    return LPObjective(_num(_need(v, "cx", field), field), _num(_need(v, "cy", field), field))


def _list(v, field):
    if not isinstance(v, list):
        raise ValidationError(f"{field} must be an array", field)
    return v


def _decode_envelope(v):
    pieces = tuple(
        EnvelopePiece(decode_line(p["line"]), _num(p["lo"], "lo"), _num(p["hi"], "hi")) for p in v["pieces"]
    )
    return Envelope(v["kind"], pieces)


def _decode_region(v):
    lo, hi = v["x_range"]
    return FeasibleRegion(
        Status(v["status"]),
        None if v["upper_chain"] is None else _decode_envelope(v["upper_chain"]),
        None if v["lower_chain"] is None else _decode_envelope(v["lower_chain"]),
        (math.nan if lo is None else _num(lo, "x_range"), math.nan if hi is None else _num(hi, "x_range")),
        tuple(decode_point(p) for p in v["vertices"]),
        tuple((_num(r[0], "rays"), _num(r[1], "rays")) for r in v["rays"]),
        int(v.get("merge_iterations", 0)),
    )


def _decode_class(v):
    cls = DualityClassD if v.get("d_dimensional") else DualityClass
    return cls(bool(v["is_involution"]), Order(v["order"]), _num(v["vertical_scale"], "vertical_scale"))


_DECODERS = {
    "point": decode_point,
    "point_d": decode_point_d,
    "points": lambda v: [decode_point(p, "points[]") for p in _list(v, "points")],
    "line": decode_line,
    "hyperplane": decode_line,
    "lines": lambda v: [decode_line(x, "lines[]") for x in _list(v, "lines")],
    "params": decode_params,
    "halfplanes": lambda v: [decode_halfplane(h, "halfplanes[]") for h in _list(v, "halfplanes")],
    "halfplane": decode_halfplane,
    "clamps": lambda v: [decode_clamp(c, "clamps[]") for c in _list(v, "clamps")],
    "clamp": decode_clamp,
    "polygon": lambda v: Polygon(tuple(decode_point(p, "polygon[]") for p in _list(v, "polygon"))),
    "objective": decode_objective,
    "sites": lambda v: [decode_point_d(p, "sites[]") for p in _list(v, "sites")],
    "query": decode_point_d,
    "general_line": lambda v: GeneralLine(_num(_need(v, "a", "general_line"), "a"), _num(_need(v, "b", "general_line"), "b")),
    "normalized_hyperplane": lambda v: NormalizedHyperplane(tuple(_num(x, "n") for x in _need(v, "n", "normalized_hyperplane"))),
    "affine_map": lambda v: AffineMapParams(*(_num(_need(v, k, "affine_map"), k) for k in "abcd")),
    "tolerance": lambda v: Tolerance(_num(_need(v, "eps_abs", "tolerance"), "eps_abs"), _num(_need(v, "eps_rel", "tolerance"), "eps_rel")),
    "hull": lambda v: Hull(tuple(decode_point(p, "hull[]") for p in _list(v, "hull"))),
    "envelope": _decode_envelope,
    "region": _decode_region,
    "class": _decode_class,
    "lp": lambda v: LPResult(v["status"], None if v["vertex"] is None else decode_point(v["vertex"]), v["value"]),
    "knn": lambda v: KnnResult(tuple(KnnEntry(int(e["site"]), _num(e["distance"], "distance"), _num(e["f"], "f")) for e in v)),
    "arrangement": lambda v: LineArrangement1D(tuple(decode_line(x) for x in v["lines"]), tuple(_num(e, "events") for e in v["events"])),
    "k": lambda v: int(v),
    "kind": str,
    "viewport": lambda v: tuple(_num(x, "viewport") for x in v),
}


def loads(text):
    """Parse a JSON document, reporting syntax errors with line and column."""
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None


def parse_input(text) -> dict:
    """Decode every recognised top-level key of a JSON document into domain objects.

    Unknown keys pass through untouched. Scenes are decoded by
    :func:`dualgeo.svg.decode_scene`.
    """
    doc = loads(text) if isinstance(text, (str, bytes)) else text
    if not isinstance(doc, dict):
        raise ValidationError("top-level JSON value must be an object", "document")
    out = {}
    for key, value in doc.items():
        dec = _DECODERS.get(key)
        out[key] = dec(value) if dec else value
    return out


# --------------------------------------------------------------------------
# encoders


def _enc_env(e: Envelope):
    return {
        "kind": e.kind,
        "pieces": [{"line": encode(p.line), "lo": _enc_num(p.lo), "hi": _enc_num(p.hi)} for p in e.pieces],
    }


def encode(obj):
    """JSON-ready value for a domain object (no top-level key)."""
    if isinstance(obj, Point2):
        return [float(obj.x), float(obj.y)]
    if isinstance(obj, PointD):
        return [float(x) for x in obj.coords]
    if isinstance(obj, Line2):
        return {"m": float(obj.m), "c": float(obj.c)}
    if isinstance(obj, HyperplaneD):
        return {"m": [float(x) for x in obj.m], "c": float(obj.c)}
    if isinstance(obj, DualParams):
        return {"alpha": float(obj.alpha), "mu": float(obj.mu)}
    if isinstance(obj, DualParamsD):
        return {"a": [float(x) for x in obj.a]}
    if isinstance(obj, GeneralLine):
        return {"a": float(obj.a), "b": float(obj.b)}
    if isinstance(obj, NormalizedHyperplane):
        return {"n": [float(x) for x in obj.n]}
    if isinstance(obj, AffineMapParams):
        return {k: float(getattr(obj, k)) for k in "abcd"}
    if isinstance(obj, Tolerance):
        return {"eps_abs": obj.eps_abs, "eps_rel": obj.eps_rel}
    if isinstance(obj, HalfPlane):
        return {"line": encode(obj.line), "side": obj.side.value}
    if isinstance(obj, XClamp):
        return {"kind": obj.kind.value, "a": float(obj.a)}
    if isinstance(obj, LPObjective):
        return {"cx": float(obj.cx), "cy": float(obj.cy)}
    if isinstance(obj, Polygon):
        return [encode(p) for p in obj.vertices]
    if isinstance(obj, Hull):
        return [encode(p) for p in obj.vertices]
    if isinstance(obj, Envelope):
        return _enc_env(obj)
    if isinstance(obj, (DualityClass, DualityClassD)):
        out = {
            "is_involution": obj.is_involution,
            "order": obj.order.value,
            "vertical_scale": float(obj.vertical_scale),
        }
        if isinstance(obj, DualityClassD):
            out["d_dimensional"] = True
        return out
    if isinstance(obj, FeasibleRegion):
        return {
            "status": obj.status.value,
            "x_range": [_enc_num(v) for v in obj.x_range],
            "vertices": [encode(p) for p in obj.vertices],
            "rays": [[float(a), float(b)] for a, b in obj.rays],
            "upper_chain": None if obj.upper_chain is None else _enc_env(obj.upper_chain),
            "lower_chain": None if obj.lower_chain is None else _enc_env(obj.lower_chain),
            "merge_iterations": obj.merge_iterations,
        }
    if isinstance(obj, LPResult):
        return {
            "status": obj.status,
            "vertex": None if obj.vertex is None else encode(obj.vertex),
            "value": obj.value,
        }
    if isinstance(obj, KnnResult):
        return [{"site": e.site_index, "distance": e.distance, "f": e.f_value} for e in obj.entries]
    if isinstance(obj, LineArrangement1D):
        return {"lines": [encode(ln) for ln in obj.lines], "events": list(obj.events)}
    if isinstance(obj, (list, tuple)):
        return [encode(x) for x in obj]
    if isinstance(obj, (str, int, float, bool)) or obj is None:
        return obj
    raise TypeError(f"cannot encode {type(obj).__name__}")


_KEYS = [
    (Point2, "point"),
    (PointD, "point_d"),
    (Line2, "line"),
    (HyperplaneD, "hyperplane"),
    (DualParams, "params"),
    (DualParamsD, "params"),
    (GeneralLine, "general_line"),
    (NormalizedHyperplane, "normalized_hyperplane"),
    (AffineMapParams, "affine_map"),
    (Tolerance, "tolerance"),
    (HalfPlane, "halfplane"),
    (XClamp, "clamp"),
    (LPObjective, "objective"),
    (Polygon, "polygon"),
    (Hull, "hull"),
    (Envelope, "envelope"),
    (DualityClass, "class"),
    (DualityClassD, "class"),
    (FeasibleRegion, "region"),
    (LPResult, "lp"),
    (KnnResult, "knn"),
    (LineArrangement1D, "arrangement"),
]


def key_for(obj) -> str:
    for cls, key in _KEYS:
        if isinstance(obj, cls):
            return key
    raise TypeError(f"no document key for {type(obj).__name__}")


def dumps(doc) -> str:
    return json.dumps(doc, allow_nan=False, separators=(",", ":"))


def serialize(obj) -> str:
    """One-key JSON document for ``obj``; ``parse_input`` reads it back."""
    return dumps({key_for(obj): encode(obj)})
