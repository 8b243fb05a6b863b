"""Randomised invariant suites, reproducible from a seed.

Each suite returns ``(trials, failures)``; a witness-search suite counts as a
single trial that fails when no witness turns up. Functions are looked up
through their modules at call time so a patched transform is caught.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import core, dual_d, envelope, halfplane, lifting
from .core import Line2, Point2, Position


def random_params(rng):
    a = rng.uniform(0.1, 5.0) * rng.choice((-1.0, 1.0))
    m = rng.uniform(0.1, 5.0) * rng.choice((-1.0, 1.0))
    return core.DualParams(float(a), float(m))


def _point(rng, scale=10.0):
    return Point2(*(float(v) for v in rng.uniform(-scale, scale, 2)))


def suite_incidence(rng, n):
    bad = 0
    for _ in range(n):
        params = random_params(rng)
        p = _point(rng)
        m = float(rng.uniform(-10, 10))
        line = Line2(m, p.y - m * p.x)
        r = core.residual(core.dual_line(line, params), core.dual_point(p, params))
        if abs(r) > 1e-9 * (1 + abs(params.product)):
            bad += 1
    return n, bad


def suite_intersection(rng, n):
    bad = 0
    for _ in range(n):
        params = random_params(rng)
        l1 = Line2(*(float(v) for v in rng.uniform(-5, 5, 2)))
        l2 = Line2(*(float(v) for v in rng.uniform(-5, 5, 2)))
        x = core.line_intersection(l1, l2)
        if x is None:
            continue
        dl = core.dual_point(x, params)
        for ln in (l1, l2):
            if core.relative_position(core.dual_line(ln, params), dl) is not Position.ON:
                bad += 1
                break
    return n, bad


def suite_bijectivity(rng, n):
    bad = 0
    for _ in range(n):
        params = random_params(rng)
        line = Line2(*(float(v) for v in rng.uniform(-10, 10, 2)))
        back = core.dual_line_inverse(core.dual_line(line, params), params)
        p = _point(rng)
        fwd = core.dual_line(core.dual_line_inverse(p, params), params)
        if not (_rel_close(back.m, line.m) and _rel_close(back.c, line.c)
                and _rel_close(fwd.x, p.x) and _rel_close(fwd.y, p.y)):
            bad += 1
    return n, bad


def _rel_close(a, b, rel=1e-12):
    return abs(a - b) <= rel * max(1.0, abs(a), abs(b))


def suite_involution(rng, n):
    bad = 0
    for _ in range(n):
        a = float(rng.uniform(0.1, 5.0) * rng.choice((-1.0, 1.0)))
        params = core.DualParams(a, 1.0 / a)
        p = _point(rng)
        q = core.dual_line(core.dual_point(p, params), params)
        if not (_rel_close(q.x, p.x) and _rel_close(q.y, p.y)):
            bad += 1
        # Away from alpha*mu = 1 the double dual of (1, 1) moves by >= |alpha*mu - 1|.
        while True:
            params = random_params(rng)
            if abs(params.product - 1.0) >= 0.1:
                break
        w = Point2(1.0, 1.0)
        q = core.dual_line(core.dual_point(w, params), params)
        if math.hypot(q.x - w.x, q.y - w.y) < 0.01:
            bad += 1
    return n, bad


def suite_order(rng, n):
    bad = 0
    done = 0
    while done < n:
        params = random_params(rng)
        p = _point(rng)
        line = Line2(*(float(v) for v in rng.uniform(-10, 10, 2)))
        r = core.residual(p, line)
        if abs(r) <= 1e-6:
            continue
        done += 1
        primal = Position.ABOVE if r > 0 else Position.BELOW
        # Position of the dual point relative to the dual line: the same as
        # the primal relation when alpha*mu > 0, mirrored when alpha*mu < 0.
        expected = primal if params.product > 0 else primal.flipped()
        got = core.relative_position(core.dual_line(line, params), core.dual_point(p, params))
        if got is not expected:
            bad += 1
    return n, bad


def suite_exclusive_classes(rng, n):
    grid = np.concatenate([-np.geomspace(5, 0.1, n // 2), np.geomspace(0.1, 5, n - n // 2)])
    bad = 0
    for a in grid:
        for m in grid:
            c = core.classify(core.DualParams(float(a), float(m)))
            if c.is_involution and c.order is core.Order.PRESERVING:
                bad += 1
    return len(grid) ** 2, bad


def suite_vertical_scaling(rng, n):
    bad = 0
    for _ in range(n):
        params = random_params(rng)
        p = _point(rng)
        line = Line2(*(float(v) for v in rng.uniform(-10, 10, 2)))
        vp = core.vertical_distance(p, line)
        vd = core.vertical_distance(core.dual_line(line, params), core.dual_point(p, params))
        if abs(vd - abs(params.product) * vp) > 1e-9 * max(1.0, vp):
            bad += 1
    return n, bad


def suite_orthogonal(rng, n):
    bad = 0
    for name in core.Preset:
        params = core.preset(name)
        found = False
        for _ in range(n):
            p = _point(rng)
            line = Line2(*(float(v) for v in rng.uniform(-10, 10, 2)))
            d0 = core.orthogonal_distance(p, line)
            if d0 < 1e-6:
                continue
            d1 = core.orthogonal_distance(core.dual_line(line, params), core.dual_point(p, params))
            if not 0.9 <= d1 / d0 <= 1.1:
                found = True
                break
        bad += not found
    return len(core.Preset), bad


def suite_negative_control(rng, n):
    """The naive map line (m, c) <-> point (m, c) must break incidence somewhere."""
    for _ in range(n):
        p = _point(rng)
        m = float(rng.uniform(-10, 10))
        line = Line2(m, p.y - m * p.x)
        dp = Line2(p.x, p.y)
        dl = Point2(line.m, line.c)
        if core.relative_position(dl, dp) is not Position.ON:
            return 1, 0
    return 1, 1


def suite_envelope(rng, n):
    bad = 0
    for _ in range(n):
        k = int(rng.integers(1, 60))
        mc = rng.uniform(-10, 10, (k, 2))
        lines = [Line2(float(a), float(b)) for a, b in mc]
        xs = rng.uniform(-50, 50, 200)
        brute_max = (mc[:, 0][:, None] * xs + mc[:, 1][:, None]).max(axis=0)
        brute_min = (mc[:, 0][:, None] * xs + mc[:, 1][:, None]).min(axis=0)
        up = envelope.upper_envelope(lines, random_params(rng)).values(xs)
        lo = envelope.lower_envelope(lines, random_params(rng)).values(xs)
        scale = np.maximum(1.0, np.abs(brute_max))
        if np.any(np.abs(up - brute_max) > 1e-9 * scale) or np.any(np.abs(lo - brute_min) > 1e-9 * np.maximum(1.0, np.abs(brute_min))):
            bad += 1
    return n, bad


def random_constraints(rng, n_max=50, clamp_prob=0.7):
    """Constraints whose region usually contains a random interior point."""
    k = int(rng.integers(1, n_max + 1))
    centre = rng.uniform(-2, 2, 2)
    out = []
    for _ in range(k):
        m = float(rng.uniform(-4, 4))
        gap = float(rng.uniform(-0.5, 4))
        side = halfplane.Side.TOP if rng.random() < 0.5 else halfplane.Side.BOTTOM
        c = centre[1] - m * centre[0] + (gap if side is halfplane.Side.TOP else -gap)
        out.append(halfplane.HalfPlane(Line2(m, float(c)), side))
    clamps = []
    if rng.random() < clamp_prob:
        clamps.append(halfplane.XClamp(halfplane.ClampKind.LOWER, float(centre[0] - rng.uniform(0.5, 5))))
    if rng.random() < clamp_prob:
        clamps.append(halfplane.XClamp(halfplane.ClampKind.UPPER, float(centre[0] + rng.uniform(0.5, 5))))
    return out, clamps


def _direct_slack(p, constraints, clamps):
    return min([h.slack(p) for h in constraints] + [c.slack(p) for c in clamps])


def suite_halfplane(rng, n):
    bad = 0
    for _ in range(n):
        cons, clamps = random_constraints(rng)
        region = halfplane.intersect_halfplanes(cons, clamps)
        for v in region.vertices:
            if _direct_slack(v, cons, clamps) < -1e-7:
                bad += 1
                break
        else:
            for xy in rng.uniform(-8, 8, (200, 2)):
                p = Point2(float(xy[0]), float(xy[1]))
                s = _direct_slack(p, cons, clamps)
                if abs(s) < 1e-6:
                    continue
                if region.contains(p) != (s > 0):
                    bad += 1
                    break
    return n, bad


def suite_dual_d(rng, n):
    bad = 0
    for _ in range(n):
        d = int(rng.integers(2, 7))
        a = rng.uniform(0.1, 5.0, d) * rng.choice((-1.0, 1.0), d)
        params = dual_d.DualParamsD(tuple(a))
        p = dual_d.PointD(tuple(rng.uniform(-10, 10, d)))
        m = tuple(rng.uniform(-5, 5, d - 1))
        h = dual_d.HyperplaneD(m, p.coords[-1] - sum(mi * xi for mi, xi in zip(m, p.coords)))
        r = dual_d.residual_d(dual_d.dual_hyperplane_d(h, params), dual_d.dual_point_d(p, params))
        if abs(r) > 1e-9 * (1 + abs(a[-1])):
            bad += 1
        inv = dual_d.preset_d("edelsbrunner-p13", d)
        back = dual_d.dual_point_d(dual_d.dual_hyperplane_d(h, inv), inv)
        if not all(_rel_close(u, v) for u, v in zip(back.m + (back.c,), h.m + (h.c,))):
            bad += 1
    return n, bad


def suite_knn(rng, n):
    bad = 0
    for _ in range(n):
        d = int(rng.integers(1, 4))
        sites = rng.uniform(-10, 10, (int(rng.integers(1, 80)), d))
        x = rng.uniform(-12, 12, d)
        k = int(rng.integers(1, len(sites) + 1))
        if lifting.knn_query(sites, x, k) != lifting.knn_bruteforce(sites, x, k):
            bad += 1
    return n, bad


def suite_arrangement(rng, n):
    bad = 0
    for _ in range(n):
        sites = np.unique(rng.integers(-30, 30, int(rng.integers(1, 25)))).astype(float)
        arr = lifting.build_arrangement_1d(sites)
        probes = list(arr.events) + [e + 1e-7 for e in arr.events] + [e - 1e-7 for e in arr.events] + [0.0]
        for x in probes:
            k = len(sites)
            if lifting.topmost_at(arr, x, k) != lifting.knn_query(sites, np.array([x]), k).indices:
                bad += 1
                break
    return n, bad


SUITES = {
    "incidence": (suite_incidence, 2000),
    "intersection_common_line": (suite_intersection, 500),
    "bijectivity": (suite_bijectivity, 1000),
    "involution": (suite_involution, 500),
    "above_below_order": (suite_order, 2000),
    "involution_excludes_preserving": (suite_exclusive_classes, 60),
    "vertical_distance_scaling": (suite_vertical_scaling, 2000),
    "orthogonal_not_preserved": (suite_orthogonal, 1000),
    "naive_map_negative_control": (suite_negative_control, 100),
    "envelope_vs_pointwise": (suite_envelope, 40),
    "halfplane_vs_direct": (suite_halfplane, 40),
    "dual_d_incidence_involution": (suite_dual_d, 500),
    "knn_vs_bruteforce": (suite_knn, 100),
    "arrangement_vs_knn": (suite_arrangement, 20),
}


def run(seed: int = 0, scale: float = 1.0, only=None, workers: int = 1) -> dict:
    """Run the suites; ``scale`` multiplies every default trial count."""
    names = [s for s in SUITES if only is None or s in only]
    seeds = np.random.SeedSequence(seed).spawn(len(SUITES))
    child = dict(zip(SUITES, seeds))

    def one(name):
        fn, default = SUITES[name]
        rng = np.random.default_rng(child[name])
        trials, failures = fn(rng, max(1, int(round(default * scale))))
        return {"name": name, "passed": failures == 0, "trials": trials, "failures": failures}

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(one, names))
    else:
        results = [one(n) for n in names]
    return {"seed": seed, "passed": all(r["passed"] for r in results), "suites": results}
