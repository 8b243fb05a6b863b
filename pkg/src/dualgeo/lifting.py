"""Lifting map: nearest neighbours as the topmost planes of an arrangement.

Site P lifts to the hyperplane ``z = f_P(X) = 2<X, P> - |P|^2``. Since
``|X - P|^2 = |X|^2 - f_P(X)``, a site is closer to X exactly when its lifted
plane is higher above X, and the k-th nearest site is the k-th plane from the
top.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .core import Line2
from .dual_d import PointD
from .errors import DimensionMismatchError, DuplicateSiteError, EmptyInputError, ValidationError
from .tolerance import Tolerance, resolve

MAX_ARRANGEMENT_SITES = 2_000


@dataclass(frozen=True)
class LiftedPlane:
    site_index: int
    coeffs: tuple
    offset: float

    @property
    def site(self) -> PointD:
        return PointD(tuple(c / 2.0 for c in self.coeffs))


@dataclass(frozen=True)
class KnnEntry:
    site_index: int
    distance: float
    f_value: float


@dataclass(frozen=True)
class KnnResult:
    entries: tuple

    @property
    def indices(self):
        return [e.site_index for e in self.entries]

    @property
    def distances(self):
        return [e.distance for e in self.entries]

    def __len__(self):
        return len(self.entries)


def lift(p: PointD, site_index: int = 0) -> LiftedPlane:
    coeffs = tuple(2.0 * x for x in p.coords)
    return LiftedPlane(site_index, coeffs, -sum(x * x for x in p.coords) + 0.0)


def f_eval(plane: LiftedPlane, x: PointD) -> float:
    if len(plane.coeffs) != x.dim:
        raise DimensionMismatchError(f"plane has dimension {len(plane.coeffs)}, query {x.dim}")
    return float(kernels.lifted_values_np(
        np.asarray([plane.coeffs]), np.asarray([plane.offset]), np.asarray(x.coords)
    )[0])


def _site_array(sites):
    if isinstance(sites, np.ndarray):
        arr = np.asarray(sites, dtype=np.float64)
        if arr.ndim == 1:
            arr = arr[:, None]
    else:
        sites = list(sites)
        if not sites:
            raise EmptyInputError("no sites")
        arr = np.array([s.coords if isinstance(s, PointD) else np.atleast_1d(s) for s in sites], dtype=np.float64)
    if arr.size == 0:
        raise EmptyInputError("no sites")
    if not np.isfinite(arr).all():
        raise ValidationError("site coordinates must be finite", "sites")
    return arr


def _query_array(x, d):
    q = np.atleast_1d(np.asarray(x.coords if isinstance(x, PointD) else x, dtype=np.float64))
    if q.shape != (d,):
        raise DimensionMismatchError(f"query has dimension {q.size}, sites have {d}")
    return q


def _check_k(k, n):
    if not 1 <= k <= n:
        raise ValidationError(f"k must be in [1, {n}], got {k}", "k")


def lifted_arrays(sites):
    """``(coeffs, offsets)`` of every lifted plane as arrays."""
    arr = _site_array(sites)
    return 2.0 * arr, -np.einsum("ij,ij->i", arr, arr)


def _sqdist(arr, q):
    diff = arr - q
    return np.einsum("ij,ij->i", diff, diff)


def _entries(idx, sqd, f):
    return KnnResult(tuple(KnnEntry(int(i), float(np.sqrt(sqd[i])), float(f[i])) for i in idx))


def _rank(f, sqd, k, band, key=None):
    """Indices of the k highest ``f``; near-equal ``f`` fall back to (distance, index)."""
    n = len(f)
    primary = f if key is None else np.asarray(key(f), dtype=np.float64)
    if k < n:
        kth = np.partition(f, n - k)[n - k]
        cand = np.flatnonzero(f >= kth - 2.0 * band)
    else:
        cand = np.arange(n)
    order = cand[np.lexsort((cand, -primary[cand]))]
    fs = f[order]
    out = []
    start = 0
    for i in range(1, len(order) + 1):
        if i == len(order) or abs(fs[i - 1] - fs[i]) > band:
            group = order[start:i]
            if len(group) > 1:
                group = group[np.lexsort((group, sqd[group]))]
            out.extend(group.tolist())
            start = i
            if len(out) >= k:
                break
    return out[:k]


def _band(tol, arr, q):
    scale = float(q @ q) + float(np.max(np.einsum("ij,ij->i", arr, arr)))
    return tol.band(scale)


def knn_query(sites, x, k: int, tol: Tolerance | None = None, key=None) -> KnnResult:
    """The k sites whose lifted planes are highest above ``x``.

    ``key`` may be any strictly increasing function applied to the plane
    heights before ranking; the ordering does not depend on it.
    """
    tol = resolve(tol)
    arr = _site_array(sites)
    q = _query_array(x, arr.shape[1])
    _check_k(k, len(arr))
    coeffs, offsets = 2.0 * arr, -np.einsum("ij,ij->i", arr, arr)
    f = kernels.lifted_values(coeffs, offsets, q)
    sqd = _sqdist(arr, q)
    return _entries(_rank(f, sqd, k, _band(tol, arr, q), key), sqd, f)


def knn_bruteforce(sites, x, k: int) -> KnnResult:
    """Reference answer: sort by squared Euclidean distance, then index."""
    arr = _site_array(sites)
    q = _query_array(x, arr.shape[1])
    _check_k(k, len(arr))
    sqd = _sqdist(arr, q)
    idx = np.lexsort((np.arange(len(arr)), sqd))[:k]
    f = kernels.lifted_values(2.0 * arr, -np.einsum("ij,ij->i", arr, arr), q)
    return _entries(idx, sqd, f)


# --------------------------------------------------------------------------
# explicit arrangement for sites on a line


@dataclass(frozen=True)
class LineArrangement1D:
    lines: tuple  # lifted lines z = 2p x - p^2, one per site, in site order
    events: tuple  # sorted abscissae where two lifted lines cross

    @property
    def sites(self):
        return np.array([ln.m / 2.0 for ln in self.lines], dtype=np.float64)


def build_arrangement_1d(sites) -> LineArrangement1D:
    arr = _site_array(sites)
    if arr.shape[1] != 1:
        raise DimensionMismatchError("arrangement sites must be 1-dimensional")
    n = len(arr)
    if n > MAX_ARRANGEMENT_SITES:
        raise ValidationError(f"at most {MAX_ARRANGEMENT_SITES} sites supported", "sites")
    p = arr[:, 0]
    if len(np.unique(p)) != n:
        raise DuplicateSiteError("duplicate sites give coincident lifted lines")
    m, c = 2.0 * p, -(p * p) + 0.0
    lines = tuple(Line2(float(mi), float(ci)) for mi, ci in zip(m, c))
    # Same arithmetic as core.line_intersection with the pair in (m, c) order.
    order = np.argsort(m)
    ms, cs = m[order], c[order]
    i, j = np.triu_indices(n, 1)
    events = np.sort((cs[j] - cs[i]) / (ms[i] - ms[j]) + 0.0)
    return LineArrangement1D(lines, tuple(events.tolist()))


def topmost_at(arr: LineArrangement1D, x: float, k: int, tol: Tolerance | None = None) -> list:
    """Site indices of the k highest lifted lines at ``x``."""
    tol = resolve(tol)
    n = len(arr.lines)
    _check_k(k, n)
    sites = arr.sites[:, None]
    q = np.array([float(x)])
    m = np.array([ln.m for ln in arr.lines])
    c = np.array([ln.c for ln in arr.lines])
    f = m * q[0] + c
    sqd = _sqdist(sites, q)
    return _rank(f, sqd, k, _band(tol, sites, q))
