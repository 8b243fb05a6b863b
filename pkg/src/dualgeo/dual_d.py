"""Point/hyperplane duality in d dimensions.

With nonzero constants ``a_1..a_d``:

    point P = (p_1..p_d)                 ->  x_d = sum_{i<d} a_i p_i x_i + a_d p_d
    hyperplane x_d = sum m_i x_i + c     ->  (-a_d m_1/a_1, ..., -a_d m_{d-1}/a_{d-1}, a_d c)

``a_d == -1`` gives an involution, ``a_d > 0`` preserves above/below, and
vertical distances scale by ``|a_d|``. The planar family is the case d = 2
with ``alpha = a_1`` and ``mu = -a_2 / a_1``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .core import DualParams, Order, Position
from .errors import DegenerateInputError, DimensionMismatchError, ValidationError
from .tolerance import Tolerance, resolve


def _floats(values, owner):
    out = tuple(float(v) for v in values)
    if not all(math.isfinite(v) for v in out):
        raise ValidationError(f"{owner} entries must be finite", owner)
    return out


@dataclass(frozen=True)
class PointD:
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", _floats(self.coords, "coords"))
        if len(self.coords) < 1:
            raise ValidationError("a point needs at least one coordinate", "coords")

    @property
    def dim(self):
        return len(self.coords)


@dataclass(frozen=True)
class HyperplaneD:
    """Non-vertical hyperplane ``x_d = sum_i m_i x_i + c``."""

    m: tuple
    c: float

    def __post_init__(self):
        object.__setattr__(self, "m", _floats(self.m, "m"))
        if not math.isfinite(self.c):
            raise ValidationError("hyperplane offset must be finite", "c")
        object.__setattr__(self, "c", float(self.c))

    @property
    def dim(self):
        return len(self.m) + 1

    def at(self, xs):
        return sum(mi * xi for mi, xi in zip(self.m, xs)) + self.c


@dataclass(frozen=True)
class DualParamsD:
    a: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", _floats(self.a, "a"))
        if len(self.a) < 2:
            raise ValidationError("need at least two coefficients", "a")
        for i, v in enumerate(self.a):
            if v == 0:
                raise ValidationError(f"a[{i}] must be nonzero", "a")

    @property
    def dim(self):
        return len(self.a)

    @classmethod
    def from_planar(cls, params: DualParams) -> "DualParamsD":
        return cls((params.alpha, -params.alpha * params.mu))

    def to_planar(self) -> DualParams:
        if self.dim != 2:
            raise DimensionMismatchError("only d = 2 parameters have a planar form")
        a1, a2 = self.a
        return DualParams(a1, -a2 / a1)


@dataclass(frozen=True)
class DualityClassD:
    is_involution: bool
    order: Order
    vertical_scale: float


@dataclass(frozen=True)
class NormalizedHyperplane:
    """Hyperplane ``sum_i n_i x_i = 1``; cannot pass through the origin."""

    n: tuple

    def __post_init__(self):
        object.__setattr__(self, "n", _floats(self.n, "n"))
        if not any(self.n):
            raise DegenerateInputError("normal vector must be nonzero")

    def contains(self, p: PointD, tol: Tolerance | None = None) -> bool:
        tol = resolve(tol)
        terms = [ni * xi for ni, xi in zip(self.n, p.coords)]
        return tol.is_zero(sum(terms) - 1.0, 1.0, *terms)


class PresetD(enum.Enum):
    EDELSBRUNNER_P4 = "edelsbrunner-p4"
    EDELSBRUNNER_P13 = "edelsbrunner-p13"


def preset_d(name, d: int) -> DualParamsD:
    """Named coefficient vector of length ``d``.

    ``edelsbrunner-p4``: all ones with ``a_d = -1``; ``edelsbrunner-p13``:
    twos with ``a_d = -1``.
    """
    if d < 2:
        raise ValidationError("dimension must be at least 2", "d")
    if not isinstance(name, PresetD):
        key = "".join(ch for ch in str(name).lower() if ch.isalnum())
        table = {"edelsbrunnerp4": PresetD.EDELSBRUNNER_P4, "p4": PresetD.EDELSBRUNNER_P4,
                 "edelsbrunnerp13": PresetD.EDELSBRUNNER_P13, "p13": PresetD.EDELSBRUNNER_P13}
        if key not in table:
            raise ValidationError(f"unknown d-dimensional preset {name!r}", "preset")
        name = table[key]
    lead = 1.0 if name is PresetD.EDELSBRUNNER_P4 else 2.0
    return DualParamsD((lead,) * (d - 1) + (-1.0,))


def _check_dims(params: DualParamsD, d: int):
    if params.dim != d:
        raise DimensionMismatchError(f"parameters have dimension {params.dim}, object has {d}")


def dual_point_d(p: PointD, params: DualParamsD) -> HyperplaneD:
    _check_dims(params, p.dim)
    a = params.a
    m = tuple(a[i] * p.coords[i] for i in range(p.dim - 1))
    return HyperplaneD(m, a[-1] * p.coords[-1])


def dual_hyperplane_d(h: HyperplaneD, params: DualParamsD) -> PointD:
    _check_dims(params, h.dim)
    a = params.a
    ad = a[-1]
    coords = tuple(-ad * h.m[i] / a[i] for i in range(h.dim - 1)) + (ad * h.c,)
    return PointD(coords)


def classify_d(params: DualParamsD, tol: Tolerance | None = None) -> DualityClassD:
    tol = resolve(tol)
    ad = params.a[-1]
    return DualityClassD(
        is_involution=abs(ad + 1.0) <= tol.eps_rel,
        order=Order.PRESERVING if ad > 0 else Order.REVERSING,
        vertical_scale=abs(ad),
    )


def residual_d(p: PointD, h: HyperplaneD) -> float:
    if p.dim != h.dim:
        raise DimensionMismatchError(f"point has dimension {p.dim}, hyperplane {h.dim}")
    return p.coords[-1] - h.at(p.coords)


def relative_position_d(p: PointD, h: HyperplaneD, tol: Tolerance | None = None) -> Position:
    tol = resolve(tol)
    r = residual_d(p, h)
    terms = [mi * xi for mi, xi in zip(h.m, p.coords)]
    if tol.is_zero(r, p.coords[-1], h.c, *terms):
        return Position.ON
    return Position.ABOVE if r > 0 else Position.BELOW


def vertical_distance_d(p: PointD, h: HyperplaneD) -> float:
    return abs(residual_d(p, h))


def polar_dual_d(p: PointD) -> NormalizedHyperplane:
    if not any(p.coords):
        raise DegenerateInputError("the origin has no polar hyperplane")
    return NormalizedHyperplane(p.coords)


def polar_dual_d_inverse(h: NormalizedHyperplane) -> PointD:
    return PointD(h.n)
