"""Hot inner loops, each in a numba and a plain numpy/python flavour.

The numba versions are used when numba imports cleanly and the environment
variable ``DUALGEO_DISABLE_NUMBA`` is unset (or ``0``). Both flavours are
always importable under the ``*_nb`` / ``*_np`` names so tests and the
benchmark can compare them directly.
"""

import os

import numpy as np

DISABLE_ENV = "DUALGEO_DISABLE_NUMBA"


def _numba_requested():
    return os.environ.get(DISABLE_ENV, "").strip().lower() in ("", "0", "false", "no")


try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


USING_NUMBA = HAVE_NUMBA and _numba_requested()


# --------------------------------------------------------------------------
# monotone chain


def _chain_py(xs, ys, lower, rel_eps):
    xs = xs.tolist()
    ys = ys.tolist()
    sign = 1.0 if lower else -1.0
    out = []
    for i in range(len(xs)):
        cx, cy = xs[i], ys[i]
        while len(out) >= 2:
            a, b = out[-2], out[-1]
            ux, uy = xs[b] - xs[a], ys[b] - ys[a]
            vx, vy = cx - xs[a], cy - ys[a]
            cross = sign * (ux * vy - uy * vx)
            band = rel_eps * (abs(ux) + abs(uy)) * (abs(vx) + abs(vy))
            if cross > band:
                break
            out.pop()
        out.append(i)
    return np.asarray(out, dtype=np.int64)


@njit(cache=True)
def _chain_nb(xs, ys, lower, rel_eps):
    n = xs.shape[0]
    out = np.empty(n, dtype=np.int64)
    sign = 1.0 if lower else -1.0
    top = 0
    for i in range(n):
        cx = xs[i]
        cy = ys[i]
        while top >= 2:
            a = out[top - 2]
            b = out[top - 1]
            ux = xs[b] - xs[a]
            uy = ys[b] - ys[a]
            vx = cx - xs[a]
            vy = cy - ys[a]
            cross = sign * (ux * vy - uy * vx)
            band = rel_eps * (abs(ux) + abs(uy)) * (abs(vx) + abs(vy))
            if cross > band:
                break
            top -= 1
        out[top] = i
        top += 1
    return out[:top].copy()


def chain_np(xs, ys, lower, rel_eps=1e-12):
    """Indices of the lower (or upper) hull chain of x-sorted, deduplicated points.

    Only strict turns survive: a vertex is dropped when its turn is within
    ``rel_eps`` (relative to the two edge lengths) of collinear.
    """
    return _chain_py(np.asarray(xs, dtype=np.float64), np.asarray(ys, dtype=np.float64), bool(lower), float(rel_eps))


def chain_nb(xs, ys, lower, rel_eps=1e-12):
    return _chain_nb(
        np.ascontiguousarray(xs, dtype=np.float64),
        np.ascontiguousarray(ys, dtype=np.float64),
        bool(lower),
        float(rel_eps),
    )


# --------------------------------------------------------------------------
# lifted-plane evaluation: f_i(X) = sum_j coeffs[i, j] * X[j] + offsets[i]


def lifted_values_np(coeffs, offsets, x):
    return coeffs @ x + offsets


@njit(cache=True)
def _lifted_values_nb(coeffs, offsets, x):
    n, d = coeffs.shape
    out = np.empty(n, dtype=np.float64)
    for i in range(n):
        acc = coeffs[i, 0] * x[0]
        for j in range(1, d):
            acc += coeffs[i, j] * x[j]
        out[i] = acc + offsets[i]
    return out


def lifted_values_nb(coeffs, offsets, x):
    return _lifted_values_nb(
        np.ascontiguousarray(coeffs, dtype=np.float64),
        np.ascontiguousarray(offsets, dtype=np.float64),
        np.ascontiguousarray(x, dtype=np.float64),
    )


# --------------------------------------------------------------------------
# polygon self-intersection: any pair of non-adjacent edges touching


def _orient_sign(ax, ay, bx, by, cx, cy):
    return np.sign((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))


def first_crossing_np(xs, ys):
    """First pair ``(i, j)`` of non-adjacent closed edges that intersect, else ``None``.

    Edge ``i`` runs from vertex ``i`` to vertex ``i + 1`` (cyclically).
    """
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    n = xs.shape[0]
    ax, ay = xs, ys
    bx, by = np.roll(xs, -1), np.roll(ys, -1)
    for i in range(n - 2):
        j = np.arange(i + 2, n if i > 0 else n - 1)
        if j.size == 0:
            continue
        hit = _segments_touch(ax[i], ay[i], bx[i], by[i], ax[j], ay[j], bx[j], by[j])
        if hit.any():
            return i, int(j[np.argmax(hit)])
    return None


def _segments_touch(px, py, qx, qy, ax, ay, bx, by):
    d1 = _orient_sign(px, py, qx, qy, ax, ay)
    d2 = _orient_sign(px, py, qx, qy, bx, by)
    d3 = _orient_sign(ax, ay, bx, by, px, py)
    d4 = _orient_sign(ax, ay, bx, by, qx, qy)
    proper = (d1 * d2 < 0) & (d3 * d4 < 0)

    def on_seg(sx, sy, ex, ey, tx, ty, d):
        return (
            (d == 0)
            & (np.minimum(sx, ex) <= tx) & (tx <= np.maximum(sx, ex))
            & (np.minimum(sy, ey) <= ty) & (ty <= np.maximum(sy, ey))
        )

    touch = (
        on_seg(px, py, qx, qy, ax, ay, d1)
        | on_seg(px, py, qx, qy, bx, by, d2)
        | on_seg(ax, ay, bx, by, px, py, d3)
        | on_seg(ax, ay, bx, by, qx, qy, d4)
    )
    return proper | touch


@njit(cache=True)
def _sgn(v):
    if v > 0:
        return 1
    if v < 0:
        return -1
    return 0


@njit(cache=True)
def _on_seg_nb(sx, sy, ex, ey, tx, ty):
    return min(sx, ex) <= tx <= max(sx, ex) and min(sy, ey) <= ty <= max(sy, ey)


@njit(cache=True)
def _first_crossing_nb(xs, ys):
    n = xs.shape[0]
    for i in range(n - 2):
        px, py = xs[i], ys[i]
        qx, qy = xs[(i + 1) % n], ys[(i + 1) % n]
        jend = n if i > 0 else n - 1
        for j in range(i + 2, jend):
            ax, ay = xs[j], ys[j]
            bx, by = xs[(j + 1) % n], ys[(j + 1) % n]
            d1 = _sgn((qx - px) * (ay - py) - (qy - py) * (ax - px))
            d2 = _sgn((qx - px) * (by - py) - (qy - py) * (bx - px))
            d3 = _sgn((bx - ax) * (py - ay) - (by - ay) * (px - ax))
            d4 = _sgn((bx - ax) * (qy - ay) - (by - ay) * (qx - ax))
            if d1 * d2 < 0 and d3 * d4 < 0:
                return i, j
            if d1 == 0 and _on_seg_nb(px, py, qx, qy, ax, ay):
                return i, j
            if d2 == 0 and _on_seg_nb(px, py, qx, qy, bx, by):
                return i, j
            if d3 == 0 and _on_seg_nb(ax, ay, bx, by, px, py):
                return i, j
            if d4 == 0 and _on_seg_nb(ax, ay, bx, by, qx, qy):
                return i, j
    return -1, -1


def first_crossing_nb(xs, ys):
    i, j = _first_crossing_nb(
        np.ascontiguousarray(xs, dtype=np.float64), np.ascontiguousarray(ys, dtype=np.float64)
    )
    return None if i < 0 else (int(i), int(j))


if USING_NUMBA:
    chain = chain_nb
    lifted_values = lifted_values_nb
    first_crossing = first_crossing_nb
else:
    chain = chain_np
    lifted_values = lifted_values_np
    first_crossing = first_crossing_np
