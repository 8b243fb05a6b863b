import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dualgeo import core
from dualgeo.core import DualParams, Line2, Order, Point2, Position
from dualgeo.dual_d import (
    DualityClassD, DualParamsD, HyperplaneD, NormalizedHyperplane, PointD, PresetD, classify_d,
    dual_hyperplane_d, dual_point_d, polar_dual_d, polar_dual_d_inverse, preset_d,
    relative_position_d, residual_d, vertical_distance_d,
)
from dualgeo.errors import DegenerateInputError, DimensionMismatchError, ValidationError
from dualgeo.tolerance import Tolerance

nonzero = st.one_of(st.floats(-5, -0.1), st.floats(0.1, 5))
coord = st.floats(-50, 50)


def H(m, c):
    return HyperplaneD(tuple(m), c)


def test_dual_point_d_examples():
    assert dual_point_d(PointD((1, 2, 3)), DualParamsD((1, 1, -1))) == H((1, 2), -3)
    assert dual_point_d(PointD((1, 0, 4)), preset_d("edelsbrunner-p13", 3)) == H((2, 0), -4)
    h = dual_point_d(PointD((0, 0, 0, 0)), DualParamsD((3, -2, 5, 7)))
    assert all(v == 0 for v in h.m) and h.c == 0


def test_dual_hyperplane_d_examples():
    a = DualParamsD((1, 1, -1))
    p = dual_hyperplane_d(H((2, 0), 5), a)
    assert p.coords == (2, 0, -5)
    assert dual_point_d(p, a) == H((2, 0), 5)
    q = dual_hyperplane_d(H((1, 1), 0), DualParamsD((1, 1, 1)))
    assert q.coords == (-1, -1, 0)


def test_classify_d_examples():
    assert classify_d(DualParamsD((2, 2, -1))) == DualityClassD(True, Order.REVERSING, 1.0)
    assert classify_d(DualParamsD((1, 1, 1))) == DualityClassD(False, Order.PRESERVING, 1.0)
    assert classify_d(DualParamsD((1, 1, -2))) == DualityClassD(False, Order.REVERSING, 2.0)


def test_relative_position_d_examples():
    flat = H((0, 0), 0)
    assert relative_position_d(PointD((0, 0, 1)), flat) is Position.ABOVE
    assert relative_position_d(PointD((4, -2, 0)), flat) is Position.ON
    assert relative_position_d(PointD((0, 0, -1)), flat) is Position.BELOW


def test_vertical_distance_d_examples():
    p, L = PointD((1, 1, 1)), H((1, 1), 3)
    assert vertical_distance_d(p, L) == 4
    assert vertical_distance_d(PointD((1, 1, 5)), L) == 0
    a = DualParamsD((1, 1, -2))
    assert vertical_distance_d(dual_hyperplane_d(L, a), dual_point_d(p, a)) == 8


def test_polar_d_examples():
    assert polar_dual_d(PointD((1, 2))) == NormalizedHyperplane((1, 2))
    with pytest.raises(DegenerateInputError):
        polar_dual_d(PointD((0, 0)))
    P, Q = PointD((1, 3)), PointD((1, 0))
    assert polar_dual_d(P).contains(Q)
    assert polar_dual_d(Q).contains(P)
    assert polar_dual_d_inverse(polar_dual_d(P)) == P


def test_presets():
    assert preset_d(PresetD.EDELSBRUNNER_P13, 3).a == (2, 2, -1)
    assert preset_d("edelsbrunner-p4", 2).a == (1, -1)
    assert preset_d("EdelsbrunnerP13", 2).a == (2, -1)
    assert preset_d("p4", 5).a == (1, 1, 1, 1, -1)
    with pytest.raises(ValidationError):
        preset_d("p4", 1)
    with pytest.raises(ValidationError):
        preset_d("nope", 3)


def test_validation():
    with pytest.raises(ValidationError):
        DualParamsD((1, 0, 1))
    with pytest.raises(ValidationError):
        DualParamsD((1,))
    with pytest.raises(DimensionMismatchError):
        dual_point_d(PointD((1, 2)), DualParamsD((1, 1, 1)))
    with pytest.raises(DimensionMismatchError):
        residual_d(PointD((1, 2)), H((1, 1), 0))
    with pytest.raises(DegenerateInputError):
        NormalizedHyperplane((0, 0, 0))


def random_instance(rng, d):
    a = rng.uniform(0.1, 5, d) * rng.choice((-1, 1), d)
    p = PointD(tuple(rng.uniform(-10, 10, d)))
    m = tuple(rng.uniform(-5, 5, d - 1))
    return DualParamsD(tuple(a)), p, m


@pytest.mark.parametrize("d", range(2, 7))
def test_incidence_preserved(d):
    rng = np.random.default_rng(d)
    for _ in range(300):
        params, p, m = random_instance(rng, d)
        h = HyperplaneD(m, p.coords[-1] - sum(mi * xi for mi, xi in zip(m, p.coords)))
        assert relative_position_d(p, h) is Position.ON
        q, dh = dual_hyperplane_d(h, params), dual_point_d(p, params)
        scale = 1 + abs(q.coords[-1]) + abs(dh.c) + sum(abs(a * b) for a, b in zip(dh.m, q.coords))
        assert abs(residual_d(q, dh)) <= 1e-9 * (1 + abs(params.a[-1])) * scale


@pytest.mark.parametrize("d", range(2, 7))
def test_involution_exactly_when_ad_is_minus_one(d):
    rng = np.random.default_rng(100 + d)
    for name in ("p4", "p13"):
        params = preset_d(name, d)
        for _ in range(200):
            h = HyperplaneD(tuple(rng.uniform(-10, 10, d - 1)), float(rng.uniform(-10, 10)))
            back = dual_point_d(dual_hyperplane_d(h, params), params)
            np.testing.assert_allclose(back.m + (back.c,), h.m + (h.c,), rtol=1e-12, atol=0)
    for _ in range(50):
        a = rng.uniform(0.1, 5, d) * rng.choice((-1, 1), d)
        if abs(a[-1] + 1) < 0.1:
            continue
        params = DualParamsD(tuple(a))
        h = HyperplaneD((1.0,) * (d - 1), 1.0)
        back = dual_point_d(dual_hyperplane_d(h, params), params)
        assert abs(back.c - h.c) >= 0.01


@pytest.mark.parametrize("d", range(2, 7))
def test_order_follows_sign_of_ad(d):
    rng = np.random.default_rng(200 + d)
    for _ in range(300):
        params, p, m = random_instance(rng, d)
        h = HyperplaneD(m, float(rng.uniform(-10, 10)))
        if abs(residual_d(p, h)) < 1e-6:
            continue
        primal = relative_position_d(p, h)
        dual = relative_position_d(dual_hyperplane_d(h, params), dual_point_d(p, params))
        preserving = classify_d(params).order is Order.PRESERVING
        # A preserving map keeps p's side relative to h when read from the dual hyperplane of p.
        assert dual is (primal.flipped() if preserving else primal)


@pytest.mark.parametrize("d", range(2, 7))
def test_vertical_distance_scaling(d):
    rng = np.random.default_rng(300 + d)
    for _ in range(300):
        params, p, m = random_instance(rng, d)
        h = HyperplaneD(m, float(rng.uniform(-10, 10)))
        vd = vertical_distance_d(p, h)
        vd_dual = vertical_distance_d(dual_hyperplane_d(h, params), dual_point_d(p, params))
        assert abs(vd_dual - abs(params.a[-1]) * vd) <= 1e-9 * max(1, vd)


@pytest.mark.parametrize("d", range(2, 7))
def test_parallel_hyperplanes_share_leading_coordinates(d):
    rng = np.random.default_rng(400 + d)
    params, _, m = random_instance(rng, d)
    b, c = rng.uniform(-10, 10, 2)
    p, q = dual_hyperplane_d(HyperplaneD(m, b), params), dual_hyperplane_d(HyperplaneD(m, c), params)
    assert p.coords[:-1] == q.coords[:-1]
    assert abs(p.coords[-1] - q.coords[-1]) == pytest.approx(abs(params.a[-1]) * abs(b - c), rel=1e-12)


def test_never_involution_and_preserving():
    grid = np.concatenate([np.linspace(-5, -0.1, 60), np.linspace(0.1, 5, 60), [-1.0]])
    for ad in grid:
        c = classify_d(DualParamsD((1.0, 2.0, float(ad))))
        assert not (c.is_involution and c.order is Order.PRESERVING)


@given(nonzero, nonzero, coord, coord, coord)
def test_planar_specialisation_matches_core(a1, a2, r, s, x):
    params_d = DualParamsD((a1, a2))
    params = params_d.to_planar()
    assert DualParamsD.from_planar(params).a == pytest.approx(params_d.a, rel=1e-15)
    p = Point2(r, s)
    hd = dual_point_d(PointD((r, s)), params_d)
    L = core.dual_point(p, params)
    assert hd.m[0] == pytest.approx(L.m, rel=1e-12, abs=1e-12)
    assert hd.c == pytest.approx(L.c, rel=1e-12, abs=1e-12)
    line = Line2(r, s)
    qd = dual_hyperplane_d(HyperplaneD((r,), s), params_d)
    q = core.dual_line(line, params)
    assert qd.coords == pytest.approx((q.x, q.y), rel=1e-12, abs=1e-12)
    # induced map keeps incidence and classifies the same way
    on = Point2(x, line.at(x))
    assert core.relative_position(core.dual_line(line, params), core.dual_point(on, params), Tolerance(1e-7, 1e-7)) is Position.ON
    c2, cd = core.classify(params), classify_d(params_d)
    assert (c2.is_involution, c2.order) == (cd.is_involution, cd.order)
    assert c2.vertical_scale == pytest.approx(cd.vertical_scale, rel=1e-12)


def test_planar_presets_line_up():
    assert DualParamsD.from_planar(core.preset("berg")).a == (1, -1)
    assert preset_d("p4", 2).to_planar() == DualParams(1, 1)
    with pytest.raises(DimensionMismatchError):
        DualParamsD((1, 1, 1)).to_planar()
