"""Planar point/line duality.

Every permissible transform is fixed by two nonzero reals ``alpha`` and ``mu``:

    point (r, s)   ->  line  y = alpha*r*x - alpha*mu*s
    line y = mx+c  ->  point (mu*m, -alpha*mu*c)

Incidence is preserved for every choice. ``alpha*mu == 1`` makes the map an
involution, ``alpha*mu < 0`` makes it preserve above/below, and vertical
distances are scaled by ``|alpha*mu|``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DegenerateInputError, NumericRangeError, ValidationError
from .tolerance import Tolerance, resolve


def _check_finite(owner, **values):
    for name, v in values.items():
        if not math.isfinite(v):
            raise ValidationError(f"{owner}.{name} must be finite, got {v!r}", name)


@dataclass(frozen=True)
class Point2:
    x: float
    y: float

    def __post_init__(self):
        _check_finite("Point2", x=self.x, y=self.y)

    def __iter__(self):
        yield self.x
        yield self.y


@dataclass(frozen=True)
class Line2:
    """Non-vertical line ``y = m*x + c``."""

    m: float
    c: float

    def __post_init__(self):
        _check_finite("Line2", m=self.m, c=self.c)

    def at(self, x):
        return self.m * x + self.c

    @classmethod
    def through(cls, p: Point2, q: Point2) -> "Line2":
        if p.x == q.x:
            raise DegenerateInputError("points share an abscissa; the line through them is vertical")
        m = (q.y - p.y) / (q.x - p.x) + 0.0  # no -0.0 slopes
        return cls(m, p.y - m * p.x + 0.0)


@dataclass(frozen=True)
class DualParams:
    alpha: float
    mu: float

    def __post_init__(self):
        _check_finite("DualParams", alpha=self.alpha, mu=self.mu)
        if self.alpha == 0:
            raise ValidationError("alpha must be nonzero", "alpha")
        if self.mu == 0:
            raise ValidationError("mu must be nonzero", "mu")

    @property
    def product(self) -> float:
        return self.alpha * self.mu


class Order(enum.Enum):
    PRESERVING = "preserving"
    REVERSING = "reversing"


class Position(enum.Enum):
    ABOVE = "above"
    ON = "on"
    BELOW = "below"

    def flipped(self) -> "Position":
        if self is Position.ABOVE:
            return Position.BELOW
        if self is Position.BELOW:
            return Position.ABOVE
        return self


@dataclass(frozen=True)
class DualityClass:
    is_involution: bool
    order: Order
    vertical_scale: float


@dataclass(frozen=True)
class GeneralLine:
    """Line ``a*x + b*y + 1 = 0``; lines through the origin are not representable."""

    a: float
    b: float

    def __post_init__(self):
        _check_finite("GeneralLine", a=self.a, b=self.b)
        if self.a == 0 and self.b == 0:
            raise DegenerateInputError("GeneralLine needs (a, b) != (0, 0)")

    def residual(self, p: Point2) -> float:
        return self.a * p.x + self.b * p.y + 1.0

    def contains(self, p: Point2, tol: Tolerance | None = None) -> bool:
        tol = resolve(tol)
        return tol.is_zero(self.residual(p), self.a * p.x, self.b * p.y, 1.0)


@dataclass(frozen=True)
class AffineMapParams:
    """Candidate map ``(p, q) -> y = (a*p + b*q)*x + (c*p + d*q)``."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        _check_finite("AffineMapParams", a=self.a, b=self.b, c=self.c, d=self.d)


class Preset(enum.Enum):
    JAJA_LEE_CHING = "jaja"
    OROURKE = "orourke"
    BERG_ET_AL = "berg"


_PRESETS = {
    Preset.JAJA_LEE_CHING: (1.0, -1.0),
    Preset.OROURKE: (2.0, 0.5),
    Preset.BERG_ET_AL: (1.0, 1.0),
}

_PRESET_ALIASES = {
    "jaja": Preset.JAJA_LEE_CHING,
    "jajaleeching": Preset.JAJA_LEE_CHING,
    "leeching": Preset.JAJA_LEE_CHING,
    "orourke": Preset.OROURKE,
    "berg": Preset.BERG_ET_AL,
    "bergetal": Preset.BERG_ET_AL,
}


def preset(name) -> DualParams:
    """Parameters of a named literature transform.

    Accepts a :class:`Preset` or a case-insensitive name such as ``"berg"``,
    ``"BergEtAl"``, ``"orourke"`` or ``"jaja"``.
    """
    if not isinstance(name, Preset):
        key = "".join(ch for ch in str(name).lower() if ch.isalnum())
        try:
            name = _PRESET_ALIASES[key]
        except KeyError:
            raise ValidationError(f"unknown preset {name!r}", "preset") from None
    return DualParams(*_PRESETS[name])


BERG = preset(Preset.BERG_ET_AL)


def _finite_or_raise(*vals):
    for v in vals:
        if not math.isfinite(v):
            raise NumericRangeError("dual transform overflowed")


def dual_point(p: Point2, params: DualParams) -> Line2:
    m = params.alpha * p.x
    c = -params.alpha * params.mu * p.y
    _finite_or_raise(m, c)
    return Line2(m, c)


def dual_line(line: Line2, params: DualParams) -> Point2:
    x = params.mu * line.m
    y = -params.alpha * params.mu * line.c
    _finite_or_raise(x, y)
    return Point2(x, y)


def dual_line_inverse(p: Point2, params: DualParams) -> Line2:
    """The unique line whose dual is ``p``."""
    m = p.x / params.mu
    c = -p.y / (params.alpha * params.mu)
    _finite_or_raise(m, c)
    return Line2(m, c)


def dual_point_inverse(line: Line2, params: DualParams) -> Point2:
    """The unique point whose dual is ``line``."""
    x = line.m / params.alpha
    y = -line.c / (params.alpha * params.mu)
    _finite_or_raise(x, y)
    return Point2(x, y)


def classify(params: DualParams, tol: Tolerance | None = None) -> DualityClass:
    tol = resolve(tol)
    k = params.product
    if abs(k) <= tol.eps_abs:
        raise ValidationError("alpha*mu is numerically zero", "params")
    order = Order.PRESERVING if k < 0 else Order.REVERSING
    return DualityClass(
        is_involution=abs(k - 1.0) <= tol.eps_rel,
        order=order,
        vertical_scale=abs(k),
    )


def residual(p: Point2, line: Line2) -> float:
    """Signed vertical offset of ``p`` above ``line``."""
    return p.y - line.m * p.x - line.c


def relative_position(p: Point2, line: Line2, tol: Tolerance | None = None) -> Position:
    tol = resolve(tol)
    r = residual(p, line)
    if tol.is_zero(r, p.y, line.m * p.x, line.c):
        return Position.ON
    return Position.ABOVE if r > 0 else Position.BELOW


def vertical_distance(p: Point2, line: Line2) -> float:
    return abs(line.m * p.x + line.c - p.y)


def orthogonal_distance(p: Point2, line: Line2) -> float:
    return vertical_distance(p, line) / math.hypot(1.0, line.m)


def line_intersection(l1: Line2, l2: Line2) -> Point2 | None:
    """Crossing point of two lines, ``None`` when parallel.

    The pair is put in a canonical order first so the result is bit-identical
    regardless of argument order.
    """
    if (l1.m, l1.c) > (l2.m, l2.c):
        l1, l2 = l2, l1
    dm = l1.m - l2.m
    if dm == 0:
        return None
    x = (l2.c - l1.c) / dm + 0.0  # + 0.0 folds -0.0 into 0.0
    return Point2(x, l1.m * x + l1.c + 0.0)


def polar_dual_point(p: Point2) -> GeneralLine:
    if p.x == 0 and p.y == 0:
        raise DegenerateInputError("the origin has no polar line")
    return GeneralLine(p.x, p.y)


def polar_dual_line(g: GeneralLine) -> Point2:
    return Point2(g.a, g.b)


def affine_map_line(p: Point2, m: AffineMapParams) -> Line2:
    return Line2(m.a * p.x + m.b * p.y, m.c * p.x + m.d * p.y)


def affine_map_bijective(m: AffineMapParams, tol: Tolerance | None = None) -> bool:
    tol = resolve(tol)
    return abs(m.a * m.d - m.b * m.c) > tol.eps_abs


def affine_map_collision(m: AffineMapParams, tol: Tolerance | None = None):
    """Two distinct points sent to the same line, or ``None`` if the map is injective."""
    if affine_map_bijective(m, tol):
        return None
    # Any nonzero null vector v of [[a, b], [c, d]] gives p and p + v the same image.
    rows = [(m.a, m.b), (m.c, m.d)]
    a, b = max(rows, key=lambda r: abs(r[0]) + abs(r[1]))
    v = (1.0, 0.0) if a == 0 and b == 0 else (-b, a)
    return Point2(1.0, 0.0), Point2(1.0 + v[0], v[1])
