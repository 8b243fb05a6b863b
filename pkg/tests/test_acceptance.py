"""Acceptance criteria 1-11, each run at its stated size and tolerance.

Every criterion prints one ``PASS``/``FAIL`` line; the lines are repeated in
the pytest terminal summary. Run ``python tests/test_acceptance.py`` to get
just the verdicts.
"""

import functools
import math
import sys
import time

import numpy as np

import oracles
from dualgeo import core, dual_d, kernels
from dualgeo.core import DualParams, Line2, Order, Point2, Position, preset
from dualgeo.dual_d import DualParamsD, HyperplaneD, PointD
from dualgeo.envelope import hull_array, lower_envelope, upper_envelope
from dualgeo.halfplane import (
    HalfPlane, LPObjective, Polygon, Side, Status, intersect_halfplanes, lp_maximize, polygon_kernel,
)
from dualgeo.lifting import build_arrangement_1d, knn_bruteforce, knn_query, topmost_at
from dualgeo.selftest import random_constraints

VERDICTS = {}


def criterion(n, title):
    def wrap(fn):
        @functools.wraps(fn)
        def run():
            try:
                detail = fn()
            except BaseException as exc:
                VERDICTS[n] = f"FAIL {n:>2}  {title}: {type(exc).__name__}: {exc}".splitlines()[0]
                print(VERDICTS[n])
                raise
            VERDICTS[n] = f"PASS {n:>2}  {title}" + (f" [{detail}]" if detail else "")
            print(VERDICTS[n])

        return run

    return wrap


def signed_uniform(rng, size=None):
    """Uniform on [-5, -0.1] u [0.1, 5]."""
    return rng.uniform(0.1, 5.0, size) * rng.choice((-1.0, 1.0), size)


def random_params(rng):
    return DualParams(float(signed_uniform(rng)), float(signed_uniform(rng)))


def rel_close(a, b, rel):
    return abs(a - b) <= rel * abs(b)


# ---- 1 ---------------------------------------------------------------------------


@criterion(1, "dual incidence, 10k trials, residual <= 1e-9(1+|alpha mu|), < 1 s")
def test_01_incidence():
    rng = np.random.default_rng(1)
    n = 10_000
    t0 = time.perf_counter()
    ab = signed_uniform(rng, (n, 2))
    pts = rng.uniform(-10, 10, (n, 2))
    slopes = rng.uniform(-10, 10, n)
    worst = 0.0
    for (a, m), (r, s), k in zip(ab.tolist(), pts.tolist(), slopes.tolist()):
        params = DualParams(a, m)
        line = Line2(k, s - k * r)
        res = core.residual(core.dual_line(line, params), core.dual_point(Point2(r, s), params))
        worst = max(worst, abs(res) / (1 + abs(a * m)))
    elapsed = time.perf_counter() - t0
    assert worst <= 1e-9, worst
    assert elapsed < 1.0, f"{elapsed:.3f} s"
    return f"worst scaled residual {worst:.1e}, {elapsed:.2f} s"


# ---- 2 ---------------------------------------------------------------------------


@criterion(2, "involution iff alpha mu = 1: 1000 round trips at 1e-12, 1000 witnesses >= 0.01")
def test_02_involution():
    rng = np.random.default_rng(2)
    for _ in range(1000):
        alpha = float(signed_uniform(rng))
        params = DualParams(alpha, 1.0 / alpha)
        p = Point2(*rng.uniform(-10, 10, 2))
        back = core.dual_line(core.dual_point(p, params), params)
        assert rel_close(back.x, p.x, 1e-12) and rel_close(back.y, p.y, 1e-12), (params, p, back)
        L = Line2(*rng.uniform(-10, 10, 2))
        again = core.dual_point(core.dual_line(L, params), params)
        assert rel_close(again.m, L.m, 1e-12) and rel_close(again.c, L.c, 1e-12), (params, L, again)
    witnesses = 0
    while witnesses < 1000:
        params = random_params(rng)
        if abs(params.product - 1) < 0.1:
            continue
        candidates = [Point2(1.0, 1.0)] + [Point2(*rng.uniform(-10, 10, 2)) for _ in range(5)]
        moved = max(math.dist(tuple(p), tuple(core.dual_line(core.dual_point(p, params), params))) for p in candidates)
        assert moved >= 0.01, params
        witnesses += 1


# ---- 3 ---------------------------------------------------------------------------


@criterion(3, "above/below follows sign(alpha mu) in 10k trials; 200x200 grid never involution and preserving")
def test_03_order():
    rng = np.random.default_rng(3)
    done = 0
    while done < 10_000:
        params = random_params(rng)
        p = Point2(*rng.uniform(-10, 10, 2))
        L = Line2(*rng.uniform(-10, 10, 2))
        if abs(core.residual(p, L)) <= 1e-6:
            continue
        primal = core.relative_position(p, L)
        assert primal is not Position.ON
        dual = core.relative_position(core.dual_line(L, params), core.dual_point(p, params))
        expect = primal if params.product > 0 else primal.flipped()
        assert dual is expect, (params, p, L)
        done += 1
    axis = np.concatenate([np.linspace(-5, -0.1, 100), np.linspace(0.1, 5, 100)])
    both = involutions = preserving = 0
    for a in axis:
        for mu in list(axis) + [1.0 / a]:
            c = core.classify(DualParams(float(a), float(mu)))
            both += c.is_involution and c.order is Order.PRESERVING
            involutions += c.is_involution
            preserving += c.order is Order.PRESERVING
    assert both == 0
    assert involutions >= 200 and preserving > 0
    return f"{involutions} involutions, {preserving} preserving, 0 both"


# ---- 4 ---------------------------------------------------------------------------


@criterion(4, "vertical distance scales by |alpha mu| (and |a_d|, d=2..6) within 1e-9 max(1, vd)")
def test_04_vertical_scaling():
    rng = np.random.default_rng(4)
    worst = 0.0
    for _ in range(10_000):
        params = random_params(rng)
        p = Point2(*rng.uniform(-10, 10, 2))
        L = Line2(*rng.uniform(-10, 10, 2))
        vd = core.vertical_distance(p, L)
        vd_dual = core.vertical_distance(core.dual_line(L, params), core.dual_point(p, params))
        worst = max(worst, abs(vd_dual - abs(params.product) * vd) / max(1.0, vd))
    for d in range(2, 7):
        for _ in range(2_000):
            params = DualParamsD(tuple(signed_uniform(rng, d).tolist()))
            p = PointD(tuple(rng.uniform(-10, 10, d).tolist()))
            h = HyperplaneD(tuple(rng.uniform(-5, 5, d - 1).tolist()), float(rng.uniform(-10, 10)))
            vd = dual_d.vertical_distance_d(p, h)
            vd_dual = dual_d.vertical_distance_d(dual_d.dual_hyperplane_d(h, params), dual_d.dual_point_d(p, params))
            worst = max(worst, abs(vd_dual - abs(params.a[-1]) * vd) / max(1.0, vd))
    assert worst <= 1e-9, worst
    return f"worst {worst:.1e}"


# ---- 5 ---------------------------------------------------------------------------


@criterion(5, "orthogonal distance is not preserved: a ratio outside [0.9, 1.1] for every preset")
def test_05_orthogonal_witness():
    rng = np.random.default_rng(5)
    found = {}
    for name in ("jaja", "orourke", "berg"):
        params = preset(name)
        outside = 0
        for _ in range(1000):
            p = Point2(*rng.uniform(-10, 10, 2))
            L = Line2(*rng.uniform(-10, 10, 2))
            d0 = core.orthogonal_distance(p, L)
            if d0 == 0:
                continue
            ratio = core.orthogonal_distance(core.dual_line(L, params), core.dual_point(p, params)) / d0
            outside += not 0.9 <= ratio <= 1.1
        assert outside >= 1, name
        found[name] = outside
    return ", ".join(f"{k} {v}/1000" for k, v in found.items())


# ---- 6 ---------------------------------------------------------------------------


def dual_xy(lines, params):
    return [(params.mu * ln.m, -params.alpha * params.mu * ln.c) for ln in lines]


@criterion(6, "envelopes match pointwise max/min (100 sets, n=100, 1000 abscissae, 1e-9 rel); piece order = dual hull order")
def test_06_envelope():
    rng = np.random.default_rng(6)
    choices = [preset("berg"), preset("jaja"), preset("orourke"), DualParams(-2.0, 3.0), DualParams(-0.5, -4.0)]
    worst = 0.0
    for i in range(100):
        params = choices[i % len(choices)]
        mc = rng.uniform(-10, 10, (100, 2))
        lines = [Line2(m, c) for m, c in mc.tolist()]
        xs = np.sort(rng.uniform(-60, 60, 1000))
        vals = mc[:, :1] * xs + mc[:, 1:]
        for upper, env, ref in ((True, upper_envelope(lines, params), vals.max(0)), (False, lower_envelope(lines, params), vals.min(0))):
            err = np.abs(env.values(xs) - ref)
            assert np.all(err <= 1e-9 * np.abs(ref)), (i, upper)
            worst = max(worst, float(np.max(err / np.maximum(np.abs(ref), 1e-300))))
            # the pieces, read left to right, are the dual hull chain forward or backward
            pts = dual_xy(lines, params)
            xs_d, ys_d = zip(*pts)
            lower_chain = (params.product > 0) == upper
            chain = [pts[j] for j in oracles.chain_vertices(xs_d, ys_d, lower_chain)]
            seq = dual_xy(env.lines, params)
            forward = (params.mu > 0) == upper
            assert seq == (chain if forward else chain[::-1]), (i, upper)
    return f"worst rel error {worst:.1e}"


# ---- 7 ---------------------------------------------------------------------------


TRIANGLE = [HalfPlane(Line2(1, 1), Side.TOP), HalfPlane(Line2(-1, 1), Side.TOP), HalfPlane(Line2(0, 0), Side.BOTTOM)]


@criterion(7, "half-plane regions match direct evaluation and LP matches brute force exactly (200 instances)")
def test_07_halfplane_lp():
    rng = np.random.default_rng(7)
    gx, gy = np.meshgrid(np.linspace(-8, 8, 31), np.linspace(-8, 8, 31))
    grid = [Point2(float(x), float(y)) for x, y in zip(gx.ravel(), gy.ravel())]
    statuses = {"optimal": 0, "unbounded": 0, "infeasible": 0}
    checked = 0
    for _ in range(200):
        cons, clamps = random_constraints(rng, n_max=50)
        region = intersect_halfplanes(cons, clamps)
        for p in grid:
            s = oracles.slack(p, cons, clamps)
            if abs(s) < 1e-6:
                continue
            assert region.contains(p) == (s > 0)
            checked += 1
        obj = LPObjective(*rng.normal(size=2).tolist())
        res = lp_maximize(region, obj)
        ref = oracles.lp_bruteforce(cons, clamps, obj.cx, obj.cy)
        assert res.status == ref[0], (res, ref)
        if ref[0] == "optimal":
            assert res.vertex == ref[1] and res.value == ref[2], (res, ref)
        statuses[res.status] += 1
    tri = intersect_halfplanes(TRIANGLE)
    got = sorted((p.x, p.y) for p in tri.vertices)
    assert tri.status is Status.BOUNDED and len(got) == 3
    assert np.allclose(got, [(-1, 0), (0, 1), (1, 0)], rtol=0, atol=1e-9)
    return f"{checked} grid checks, LP {statuses}"


# ---- 8 ---------------------------------------------------------------------------


L_SHAPE = [(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]
COMB = [(0, 0), (5, 0), (5, 3), (4, 3), (4, 1), (3, 1), (3, 3), (2, 3), (2, 1), (1, 1), (1, 3), (0, 3)]


@criterion(8, "kernel: L-shape gives the unit square, convex polygons give themselves, comb is empty, samples see everything")
def test_08_kernel():
    rng = np.random.default_rng(8)
    k = polygon_kernel(Polygon(L_SHAPE))
    got = sorted((p.x, p.y) for p in k.vertices)
    assert k.status is Status.BOUNDED and len(got) == 4
    assert np.allclose(got, [(0, 0), (0, 1), (1, 0), (1, 1)], rtol=0, atol=1e-9)
    assert polygon_kernel(Polygon(COMB)).is_empty
    for _ in range(50):
        verts = oracles.convex_polygon(rng, int(rng.integers(3, 20)))
        if len(verts) < 3:
            continue
        got = sorted((p.x, p.y) for p in polygon_kernel(Polygon(verts)).vertices)
        assert len(got) == len(verts) and np.allclose(got, sorted(verts), rtol=0, atol=1e-9)
    checks = 0
    polys = [L_SHAPE] + [oracles.star_polygon(rng, int(rng.integers(5, 14))) for _ in range(40)]
    for verts in polys:
        kv = np.array([(p.x, p.y) for p in polygon_kernel(Polygon(verts)).vertices])
        for x, y in rng.dirichlet(np.ones(len(kv)), 25) @ kv:
            assert oracles.sees_all((float(x), float(y)), verts), (verts, x, y)
            checks += 1
    return f"{checks} visibility checks"


# ---- 9 ---------------------------------------------------------------------------


@criterion(9, "k-NN via lifting equals brute force (d=1,2,3, n=200, 100 queries); k-level sweep and monotone keys agree")
def test_09_knn():
    rng = np.random.default_rng(9)
    for d in (1, 2, 3):
        for q in range(100):
            # half the queries use integer sites so exact ties occur
            sites = rng.uniform(-10, 10, (200, d)) if q % 2 else rng.integers(-6, 7, (200, d)).astype(float)
            x = rng.uniform(-12, 12, d) if q % 2 else rng.integers(-6, 7, d).astype(float)
            k = int(rng.integers(1, 201))
            assert knn_query(sites, x, k) == knn_bruteforce(sites, x, k), (d, q)
    sites = np.unique(rng.uniform(-20, 20, 30))
    n = len(sites)
    arr = build_arrangement_1d(sites)
    probes = [e + s for e in arr.events for s in (-1e-7, 0.0, 1e-7)]
    probes += rng.uniform(-30, 30, max(0, 1000 - len(probes))).tolist()
    for x in probes:
        assert topmost_at(arr, x, n) == knn_query(sites, np.array([x]), n).indices, x
    for key in (np.exp, lambda f: np.cbrt(f) + 3 * f):
        for d in (1, 2, 3):
            for _ in range(50):
                s = rng.uniform(-3, 3, (200, d))
                x = rng.uniform(-3, 3, d)
                assert knn_query(s, x, 200, key=key).indices == knn_query(s, x, 200).indices
    return f"{len(probes)} sweep abscissae over {len(arr.events)} events"


# ---- 10 --------------------------------------------------------------------------


@criterion(10, "a_d = -1 presets round-trip hyperplanes to 1e-12 relative, d=2..6, 1000 trials each")
def test_10_involution_d():
    rng = np.random.default_rng(10)
    for d in range(2, 7):
        for name in ("edelsbrunner-p4", "edelsbrunner-p13"):
            params = dual_d.preset_d(name, d)
            assert params.a[-1] == -1 and dual_d.classify_d(params).is_involution
            for _ in range(1000):
                h = HyperplaneD(tuple(rng.uniform(-10, 10, d - 1).tolist()), float(rng.uniform(-10, 10)))
                back = dual_d.dual_point_d(dual_d.dual_hyperplane_d(h, params), params)
                for u, v in zip(back.m + (back.c,), h.m + (h.c,)):
                    assert rel_close(u, v, 1e-12), (d, name, h, back)
                p = PointD(tuple(rng.uniform(-10, 10, d).tolist()))
                again = dual_d.dual_hyperplane_d(dual_d.dual_point_d(p, params), params)
                for u, v in zip(again.coords, p.coords):
                    assert rel_close(u, v, 1e-12), (d, name, p, again)


# ---- 11 --------------------------------------------------------------------------


def best_of(fn, repeats=3):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


@criterion(11, "performance: hull of 1e6 points < 2 s, 1e5 half-planes < 1 s, k-NN n=1e5 d=3 < 50 ms/query")
def test_11_performance():
    rng = np.random.default_rng(11)
    pts = rng.normal(size=(1_000_000, 2))
    hull_array(pts[:1000])
    t_hull = best_of(lambda: hull_array(pts), 1)

    n = 100_000
    m = rng.uniform(-10, 10, n)
    c = rng.uniform(1, 10, n)
    top = np.arange(n) % 2 == 0
    cons = [HalfPlane(Line2(a, b if t else -b), Side.TOP if t else Side.BOTTOM) for a, b, t in zip(m.tolist(), c.tolist(), top.tolist())]
    intersect_halfplanes(cons[:100])
    t_hp = best_of(lambda: intersect_halfplanes(cons), 1)

    sites = rng.uniform(-1, 1, (100_000, 3))
    knn_query(sites, np.zeros(3), 10)
    t_knn = max(best_of(lambda q=q: knn_query(sites, q, 10), 1) for q in rng.uniform(-1, 1, (20, 3)))

    mode = "numba" if kernels.USING_NUMBA else "numpy"
    detail = f"{mode}: hull {t_hull:.3f} s, half-planes {t_hp:.3f} s, k-NN {1000 * t_knn:.1f} ms"
    assert t_hull < 2.0 and t_hp < 1.0 and t_knn < 0.05, detail
    return detail


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_"):
            try:
                fn()
            except Exception:
                failed += 1
    sys.exit(1 if failed else 0)
