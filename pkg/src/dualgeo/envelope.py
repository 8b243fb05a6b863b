"""Convex hulls, line envelopes, and the correspondence between them.

An envelope is never computed directly from the lines. The lines are mapped
to dual points, a hull chain of those points is taken, and the chain is read
back as a left-to-right sequence of envelope pieces.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import BERG, DualParams, Line2, Point2, dual_point, line_intersection
from .errors import EmptyInputError, ValidationError

# Relative collinearity band for hull turns (sine of the turn angle).
HULL_REL_EPS = 1e-12


@dataclass(frozen=True)
class Hull:
    """Strictly convex polygon, counter-clockwise from the lexicographic minimum."""

    vertices: tuple

    def __len__(self):
        return len(self.vertices)

    def as_array(self):
        return np.array([(p.x, p.y) for p in self.vertices], dtype=np.float64).reshape(-1, 2)


@dataclass(frozen=True)
class EnvelopePiece:
    line: Line2
    lo: float
    hi: float


@dataclass(frozen=True)
class Envelope:
    """Pointwise max (``kind="upper"``) or min (``kind="lower"``) of a set of lines.

    Pieces run left to right and their intervals tile the real line. Slopes
    increase along an upper envelope and decrease along a lower one.
    """

    kind: str
    pieces: tuple

    @property
    def lines(self):
        return [p.line for p in self.pieces]

    @property
    def breakpoints(self):
        return [p.hi for p in self.pieces[:-1]]

    def piece_at(self, x) -> EnvelopePiece:
        i = bisect.bisect_left(self.breakpoints, x)
        return self.pieces[i]

    def at(self, x):
        return self.piece_at(x).line.at(x)

    def values(self, xs):
        xs = np.asarray(xs, dtype=np.float64)
        idx = np.searchsorted(np.asarray(self.breakpoints, dtype=np.float64), xs, side="left")
        m = np.array([p.line.m for p in self.pieces])
        c = np.array([p.line.c for p in self.pieces])
        return m[idx] * xs + c[idx]


# --------------------------------------------------------------------------
# convex hull


def _as_xy(points):
    if isinstance(points, np.ndarray):
        arr = np.asarray(points, dtype=np.float64)
    else:
        arr = np.array([tuple(p) for p in points], dtype=np.float64)
    if arr.size == 0:
        raise EmptyInputError("convex hull of an empty point set")
    arr = arr.reshape(-1, 2)
    if not np.isfinite(arr).all():
        raise ValidationError("point coordinates must be finite", "points")
    return arr


def _akl_toussaint(arr):
    """Drop points strictly inside the quadrilateral of the four diagonal extremes."""
    s = arr[:, 0] + arr[:, 1]
    t = arr[:, 0] - arr[:, 1]
    quad = arr[[np.argmin(s), np.argmax(t), np.argmax(s), np.argmin(t)]]
    inside = np.ones(len(arr), dtype=bool)
    for k in range(4):
        a, b = quad[k], quad[(k + 1) % 4]
        cross = (b[0] - a[0]) * (arr[:, 1] - a[1]) - (b[1] - a[1]) * (arr[:, 0] - a[0])
        inside &= cross > 0
    return arr[~inside]


def _sorted_unique(arr):
    order = np.lexsort((arr[:, 1], arr[:, 0]))
    arr = arr[order]
    if len(arr) > 1:
        keep = np.ones(len(arr), dtype=bool)
        keep[1:] = (arr[1:, 0] != arr[:-1, 0]) | (arr[1:, 1] != arr[:-1, 1])
        arr = arr[keep]
    return arr


def hull_array(points, rel_eps=HULL_REL_EPS):
    """Hull vertices as an ``(h, 2)`` array, CCW from the lexicographic minimum."""
    arr = _as_xy(points)
    if len(arr) > 64:
        arr = _akl_toussaint(arr)
    arr = _sorted_unique(arr)
    if len(arr) <= 2:
        return arr
    lower = kernels.chain(arr[:, 0], arr[:, 1], True, rel_eps)
    upper = kernels.chain(arr[:, 0], arr[:, 1], False, rel_eps)
    idx = np.concatenate([lower, upper[::-1][1:-1]])
    return arr[idx]


def convex_hull(points, rel_eps=HULL_REL_EPS) -> Hull:
    """Minimal strictly convex hull of ``points`` (Point2 objects, pairs, or an array).

    Collinear boundary points are excluded and duplicates collapse, so a set
    of collinear points yields its two extreme points.
    """
    arr = hull_array(points, rel_eps)
    return Hull(tuple(Point2(float(x), float(y)) for x, y in arr))


def hull_chains(points, rel_eps=HULL_REL_EPS):
    """``(lower, upper)`` chains, each left to right, as lists of Point2."""
    arr = _sorted_unique(_as_xy(points))
    if len(arr) == 1:
        p = [Point2(float(arr[0, 0]), float(arr[0, 1]))]
        return p, list(p)
    out = []
    for lower in (True, False):
        idx = kernels.chain(arr[:, 0], arr[:, 1], lower, rel_eps)
        out.append([Point2(float(arr[i, 0]), float(arr[i, 1])) for i in idx])
    return tuple(out)


# --------------------------------------------------------------------------
# envelopes via duality


def _line_arrays(lines):
    if isinstance(lines, np.ndarray):
        arr = np.asarray(lines, dtype=np.float64).reshape(-1, 2)
    else:
        arr = np.array([(ln.m, ln.c) for ln in lines], dtype=np.float64).reshape(-1, 2)
    if len(arr) == 0:
        raise EmptyInputError("envelope of an empty line set")
    if not np.isfinite(arr).all():
        raise ValidationError("line coefficients must be finite", "lines")
    return arr[:, 0], arr[:, 1]


def _dominant_per_slope(m, c, upper):
    """Keep one line per slope: the highest for an upper envelope, the lowest for a lower one."""
    key = -c if upper else c
    order = np.lexsort((key, m))
    m, c = m[order], c[order]
    first = np.ones(len(m), dtype=bool)
    first[1:] = m[1:] != m[:-1]
    return m[first], c[first]


def envelope_chain(m, c, upper, params: DualParams = BERG, rel_eps=HULL_REL_EPS):
    """Dual-hull core shared by the envelope builders and half-plane code.

    Returns ``(m_sel, c_sel, chain_x, chain_y)``: the envelope lines left to
    right and the dual hull chain in ascending dual-x order.
    """
    m, c = _dominant_per_slope(np.asarray(m, dtype=np.float64), np.asarray(c, dtype=np.float64), upper)
    k = params.alpha * params.mu
    dx = params.mu * m
    dy = -k * c
    order = np.argsort(dx, kind="stable")
    dx, dy, m, c = dx[order], dy[order], m[order], c[order]
    # Maximising m*x + c over lines is a linear objective over dual points whose
    # dual-y weight is -1/(alpha*mu): the lower chain when alpha*mu > 0.
    use_lower_chain = (k > 0) == upper
    if len(m) == 1:
        idx = np.zeros(1, dtype=np.int64)
    else:
        idx = kernels.chain(dx, dy, use_lower_chain, rel_eps)
    chain_x, chain_y = dx[idx], dy[idx]
    m, c = m[idx], c[idx]
    # Envelope slopes run up (upper) or down (lower) from left to right;
    # dual x runs with the slope when mu > 0.
    if (params.mu > 0) != upper:
        m, c = m[::-1], c[::-1]
    return m, c, chain_x, chain_y


def _build_envelope(lines, upper, params, rel_eps):
    m, c = _line_arrays(lines)
    m, c, _, _ = envelope_chain(m, c, upper, params, rel_eps)
    return envelope_from_lines(
        [Line2(float(mi), float(ci)) for mi, ci in zip(m, c)], "upper" if upper else "lower"
    )


def envelope_from_lines(seq, kind) -> Envelope:
    """Assemble pieces from lines already in envelope order."""
    pieces = []
    lo = -math.inf
    for i, ln in enumerate(seq):
        if i + 1 < len(seq):
            hi = line_intersection(ln, seq[i + 1]).x
        else:
            hi = math.inf
        pieces.append(EnvelopePiece(ln, lo, hi))
        lo = hi
    return Envelope(kind, tuple(pieces))


def upper_envelope(lines, params: DualParams = BERG, rel_eps=HULL_REL_EPS) -> Envelope:
    return _build_envelope(lines, True, params, rel_eps)


def lower_envelope(lines, params: DualParams = BERG, rel_eps=HULL_REL_EPS) -> Envelope:
    return _build_envelope(lines, False, params, rel_eps)


def hull_chains_via_dual(p: Point2, S, params: DualParams = BERG):
    """Names of the hull chains (``"upper"``/``"lower"``) that ``p`` is a vertex of.

    Decided purely in dual space: ``p`` is on the upper chain when its dual
    line contributes a piece to the envelope of the dual lines that lies
    below all the others when ``alpha*mu > 0`` (above when ``< 0``), and
    symmetrically for the lower chain.
    """
    S = list(S)
    if p not in S:
        raise ValidationError("query point must belong to the point set", "p")
    target = dual_point(p, params)
    duals = [dual_point(q, params) for q in S]
    k = params.alpha * params.mu
    found = set()
    for kind, env in (("upper", lower_envelope), ("lower", upper_envelope)):
        if k < 0:
            kind = "lower" if kind == "upper" else "upper"
        if target in env(duals).lines:
            found.add(kind)
    return found


def is_on_hull_via_dual(p: Point2, S, params: DualParams = BERG) -> bool:
    return bool(hull_chains_via_dual(p, S, params))
