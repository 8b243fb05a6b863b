"""Half-plane intersection through dual hulls, planar LP, and polygon kernels.

Top constraints (``y <= m*x + c``) bound the region from above by their lower
envelope; bottom constraints (``y >= m*x + c``) bound it from below by their
upper envelope. Both envelopes come out sorted by x, so one merge sweep finds
the x-interval where the upper boundary is on or above the lower one.
Vertical boundaries, which have no slope-intercept form, enter as x-clamps.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import BERG, DualParams, Line2, Point2, line_intersection
from .envelope import Envelope, envelope_chain, envelope_from_lines
from .errors import InvalidPolygonError, ValidationError
from .tolerance import Tolerance, resolve

SIMPLICITY_CHECK_LIMIT = 10_000


class Side(enum.Enum):
    TOP = "top"  # y <= m*x + c
    BOTTOM = "bottom"  # y >= m*x + c


class ClampKind(enum.Enum):
    LOWER = "lower"  # x >= a
    UPPER = "upper"  # x <= a


class Status(enum.Enum):
    EMPTY = "empty"
    BOUNDED = "bounded"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class HalfPlane:
    line: Line2
    side: Side

    def slack(self, p: Point2) -> float:
        """Nonnegative when ``p`` satisfies the constraint."""
        r = self.line.at(p.x) - p.y
        return r if self.side is Side.TOP else -r

    def satisfied(self, p: Point2, tol: Tolerance | None = None) -> bool:
        tol = resolve(tol)
        return self.slack(p) >= -tol.band(p.y, self.line.m * p.x, self.line.c)


@dataclass(frozen=True)
class XClamp:
    kind: ClampKind
    a: float

    def __post_init__(self):
        if not math.isfinite(self.a):
            raise ValidationError("XClamp.a must be finite", "a")

    def slack(self, p: Point2) -> float:
        return p.x - self.a if self.kind is ClampKind.LOWER else self.a - p.x

    def satisfied(self, p: Point2, tol: Tolerance | None = None) -> bool:
        tol = resolve(tol)
        return self.slack(p) >= -tol.band(p.x, self.a)


@dataclass(frozen=True)
class FeasibleRegion:
    status: Status
    upper_chain: Envelope | None  # lower envelope of top lines; None = no top constraint
    lower_chain: Envelope | None  # upper envelope of bottom lines
    x_range: tuple  # (lo, hi); may be infinite, meaningless when EMPTY
    vertices: tuple = ()  # finite boundary corners, counter-clockwise
    rays: tuple = ()  # generators of the recession cone when UNBOUNDED
    merge_iterations: int = 0

    @property
    def is_empty(self):
        return self.status is Status.EMPTY

    def upper_at(self, x):
        return math.inf if self.upper_chain is None else self.upper_chain.at(x)

    def lower_at(self, x):
        return -math.inf if self.lower_chain is None else self.lower_chain.at(x)

    def contains(self, p: Point2, tol: Tolerance | None = None) -> bool:
        if self.is_empty:
            return False
        tol = resolve(tol)
        lo, hi = self.x_range
        if p.x < lo - tol.band(lo, p.x) or p.x > hi + tol.band(hi, p.x):
            return False
        u, l = self.upper_at(p.x), self.lower_at(p.x)
        if math.isfinite(u) and p.y > u + tol.band(u, p.y):
            return False
        if math.isfinite(l) and p.y < l - tol.band(l, p.y):
            return False
        return True


@dataclass(frozen=True)
class LPObjective:
    cx: float
    cy: float

    def __post_init__(self):
        if not (math.isfinite(self.cx) and math.isfinite(self.cy)):
            raise ValidationError("objective coefficients must be finite", "objective")
        if self.cx == 0 and self.cy == 0:
            raise ValidationError("objective must be nonzero", "objective")

    def value(self, p: Point2) -> float:
        return self.cx * p.x + self.cy * p.y


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal", "unbounded" or "infeasible"
    vertex: Point2 | None = None
    value: float | None = None


@dataclass(frozen=True)
class Polygon:
    vertices: tuple

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(Point2(*p) if not isinstance(p, Point2) else p for p in self.vertices))
        if len(self.vertices) < 3:
            raise InvalidPolygonError("a polygon needs at least 3 vertices")
        n = len(self.vertices)
        for i in range(n):
            if self.vertices[i] == self.vertices[(i + 1) % n]:
                raise InvalidPolygonError(f"vertices {i} and {(i + 1) % n} coincide")

    def signed_area(self):
        v = self.vertices
        n = len(v)
        return 0.5 * sum(v[i].x * v[(i + 1) % n].y - v[(i + 1) % n].x * v[i].y for i in range(n))

    def ccw(self) -> "Polygon":
        return self if self.signed_area() > 0 else Polygon(self.vertices[::-1])

    def edges(self):
        v = self.vertices
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]

    def is_simple(self) -> bool:
        xs = [p.x for p in self.vertices]
        ys = [p.y for p in self.vertices]
        return kernels.first_crossing(xs, ys) is None


# --------------------------------------------------------------------------
# half-plane intersection


def _chain_for(lines, upper, params):
    if not lines:
        return None
    arr = np.array([(ln.m, ln.c) for ln in lines], dtype=np.float64)
    m, c, _, _ = envelope_chain(arr[:, 0], arr[:, 1], upper, params)
    return envelope_from_lines([Line2(float(a), float(b)) for a, b in zip(m, c)], "upper" if upper else "lower")


def _slabs(upper: Envelope | None, lower: Envelope | None):
    """Merge the two breakpoint lists; yield ``(lo, hi, upper_line, lower_line)``."""
    ub = upper.breakpoints if upper else []
    lb = lower.breakpoints if lower else []
    i = j = 0
    lo = -math.inf
    while True:
        nu = ub[i] if i < len(ub) else math.inf
        nl = lb[j] if j < len(lb) else math.inf
        hi = min(nu, nl)
        yield (
            lo,
            hi,
            upper.pieces[i].line if upper else None,
            lower.pieces[j].line if lower else None,
        )
        if hi == math.inf:
            return
        if nu == hi:
            i += 1
        if nl == hi:
            j += 1
        lo = hi


@dataclass
class _End:
    x: float
    # "root": the two chains cross here; "clamp"/"inf": range boundary.
    kind: str
    u: Line2 | None = None
    l: Line2 | None = None


def intersect_halfplanes(constraints, clamps=(), params: DualParams = BERG, tol: Tolerance | None = None) -> FeasibleRegion:
    constraints = list(constraints)
    clamps = list(clamps)
    if not constraints and not clamps:
        raise ValidationError("need at least one constraint or clamp", "constraints")
    tol = resolve(tol)
    tops = [h.line for h in constraints if h.side is Side.TOP]
    bottoms = [h.line for h in constraints if h.side is Side.BOTTOM]
    upper = _chain_for(tops, False, params)
    lower = _chain_for(bottoms, True, params)

    xlo = max((c.a for c in clamps if c.kind is ClampKind.LOWER), default=-math.inf)
    xhi = min((c.a for c in clamps if c.kind is ClampKind.UPPER), default=math.inf)
    empty = FeasibleRegion(Status.EMPTY, upper, lower, (math.nan, math.nan))
    if xlo > xhi:
        if xlo - xhi > tol.band(xlo, xhi):
            return empty
        xhi = xlo

    first = last = None
    iterations = 0
    for s_lo, s_hi, u, l in _slabs(upper, lower):
        iterations += 1
        a_kind = "clamp" if s_lo <= xlo else "slab"
        b_kind = "clamp" if s_hi >= xhi else "slab"
        a, b = max(s_lo, xlo), min(s_hi, xhi)
        if a > b:
            if s_lo > xhi:
                break
            continue
        if a == -math.inf:
            a_kind = "inf"
        if b == math.inf:
            b_kind = "inf"
        if u is not None and l is not None:
            gs = u.m - l.m
            g0 = u.c - l.c
            if gs == 0:
                if g0 < -tol.band(u.c, l.c):
                    continue
            else:
                r = line_intersection(u, l).x
                if gs > 0:
                    if r > b:
                        if r - b > tol.band(r, b):
                            continue
                        r = b
                    if r >= a:
                        a, a_kind = r, "root"
                else:
                    if r < a:
                        if a - r > tol.band(r, a):
                            continue
                        r = a
                    if r <= b:
                        b, b_kind = r, "root"
        if first is None:
            first = _End(a, a_kind, u, l)
        last = _End(b, b_kind, u, l)

    if first is None:
        return FeasibleRegion(Status.EMPTY, upper, lower, (math.nan, math.nan), merge_iterations=iterations)

    vertices = _boundary_vertices(upper, lower, first, last, tol)
    rays = _recession_rays(upper, lower, first.x, last.x)
    status = Status.UNBOUNDED if rays else Status.BOUNDED
    return FeasibleRegion(status, upper, lower, (first.x, last.x), tuple(vertices), tuple(rays), iterations)


def _end_points(end: _End, upper, lower):
    """Corner(s) where the region's boundary meets the vertical line x = end.x."""
    if end.kind == "inf":
        return [], []
    if end.kind == "root":
        p = line_intersection(end.u, end.l)
        return [p], []
    low = [Point2(end.x, end.l.at(end.x))] if lower is not None else []
    up = [Point2(end.x, end.u.at(end.x))] if upper is not None else []
    return low, up


def _boundary_vertices(upper, lower, first: _End, last: _End, tol):
    xa, xb = first.x, last.x
    left_low, left_up = _end_points(first, upper, lower)
    right_low, right_up = _end_points(last, upper, lower)

    def interior(chain):
        if chain is None:
            return []
        out = []
        for p, q in zip(chain.pieces, chain.pieces[1:]):
            if xa < p.hi < xb:
                out.append(line_intersection(p.line, q.line))
        return out

    ring = left_low + interior(lower) + right_low + right_up + interior(upper)[::-1] + left_up
    return _clean_ring(ring, tol)


def _clean_ring(ring, tol):
    out = []
    for p in ring:
        if out and _close(out[-1], p, tol):
            continue
        out.append(p)
    while len(out) > 1 and _close(out[0], out[-1], tol):
        out.pop()
    if len(out) > 1:
        k = min(range(len(out)), key=lambda i: (out[i].x, out[i].y))
        out = out[k:] + out[:k]
    return out


def _close(p, q, tol):
    return tol.is_zero(p.x - q.x, p.x, q.x) and tol.is_zero(p.y - q.y, p.y, q.y)


def _recession_rays(upper, lower, xa, xb):
    rays = []
    if upper is None:
        rays.append((0.0, 1.0))
    if lower is None:
        rays.append((0.0, -1.0))
    chains = [ch for ch in (upper, lower) if ch is not None]
    if xb == math.inf:
        rays.extend((1.0, ch.pieces[-1].line.m) for ch in chains)
        if upper is None and lower is None:
            rays.append((1.0, 0.0))
    if xa == -math.inf:
        rays.extend((-1.0, -ch.pieces[0].line.m + 0.0) for ch in chains)
        if upper is None and lower is None:
            rays.append((-1.0, 0.0))
    return rays


# --------------------------------------------------------------------------
# linear programming


def lp_maximize(region: FeasibleRegion, obj: LPObjective, tol: Tolerance | None = None) -> LPResult:
    """Maximise ``cx*x + cy*y`` over ``region`` by scanning its corners.

    Ties go to the smaller x, then the smaller y.
    """
    tol = resolve(tol)
    if region.is_empty:
        return LPResult("infeasible")
    for rx, ry in region.rays:
        if obj.cx * rx + obj.cy * ry > tol.band(obj.cx * rx, obj.cy * ry):
            return LPResult("unbounded")
    if region.vertices:
        best = min(region.vertices, key=lambda p: (-obj.value(p), p.x, p.y))
        return LPResult("optimal", best, obj.value(best))
    # Optimum attained along a whole line or strip edge; report one point of it.
    lo, hi = region.x_range
    x0 = lo if math.isfinite(lo) else (hi if math.isfinite(hi) else 0.0)
    if obj.cy > 0:
        y0 = region.upper_at(x0)
    elif obj.cy < 0:
        y0 = region.lower_at(x0)
    else:
        u, l = region.upper_at(x0), region.lower_at(x0)
        y0 = u if math.isfinite(u) else (l if math.isfinite(l) else 0.0)
    p = Point2(x0, y0)
    return LPResult("optimal", p, obj.value(p))


# --------------------------------------------------------------------------
# polygon kernel


def polygon_constraints(poly: Polygon, tol: Tolerance | None = None):
    """Each edge as the half-plane (or x-clamp) on the interior side."""
    tol = resolve(tol)
    poly = poly.ccw()
    halfplanes, clamps = [], []
    for p, q in poly.edges():
        dx = q.x - p.x
        if tol.is_zero(dx, p.x, q.x):
            a = 0.5 * (p.x + q.x)
            # Interior lies to the left of a CCW edge.
            clamps.append(XClamp(ClampKind.UPPER if q.y > p.y else ClampKind.LOWER, a))
            continue
        line = Line2.through(p, q)
        halfplanes.append(HalfPlane(line, Side.BOTTOM if dx > 0 else Side.TOP))
    return halfplanes, clamps


def polygon_kernel(poly: Polygon, check_simple: bool | None = None, params: DualParams = BERG, tol: Tolerance | None = None) -> FeasibleRegion:
    """Region from which every point of ``poly`` is visible; EMPTY if not star-shaped."""
    if check_simple is None:
        check_simple = len(poly.vertices) <= SIMPLICITY_CHECK_LIMIT
    if check_simple and not poly.is_simple():
        raise InvalidPolygonError("polygon is not simple")
    halfplanes, clamps = polygon_constraints(poly, tol)
    return intersect_halfplanes(halfplanes, clamps, params, tol)
