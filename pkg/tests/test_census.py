import math

import numpy as np
import pytest

from triprod.census import (ISOSCELES_THRESHOLD_BASE_ANGLE, ISOSCELES_THRESHOLD_HEIGHT,
                            LEG_DERIVED_TURNING_THRESHOLD, LEG_PRINTED_TURNING_THRESHOLD,
                            IsoscelesCase, LegCubic, TheoremCase, analyze,
                            base_second_derivative_constant, isosceles_base_critical_points,
                            isosceles_case, isosceles_case_for_height, isosceles_leg_critical_point,
                            isosceles_leg_cubic)
from triprod.edge import Kind, cubic_coefficients, solve_edge_cubic
from triprod.errors import NotIsosceles
from triprod.geometry import AngleClass, Point, make_triangle
from triprod.oracle import grid_scan_edge, random_triangle


def test_equilateral_census(equilateral):
    rep = analyze(equilateral)
    assert (rep.n_max, rep.n_min, rep.n_inflection) == (3, 3, 0)
    assert rep.theorem_case is TheoremCase.ACUTE_3_3
    assert rep.isosceles_case is IsoscelesCase.EQUILATERAL
    assert rep.global_max.phi_value == pytest.approx(math.sqrt(3) / 8, rel=1e-12)
    mids = {(round(cp.location.x, 9), round(cp.location.y, 9)) for cp in rep.maxima}
    assert mids == {(0.5, 0.0), (0.75, round(math.sqrt(3) / 4, 9)), (0.25, round(math.sqrt(3) / 4, 9))}
    assert [cp.vertex_id for cp in rep.vertex_minima] == [0, 1, 2]
    assert all(cp.phi_value == 0.0 and cp.kind is Kind.MINIMUM for cp in rep.vertex_minima)


def test_case_ii_census(case_ii):
    rep = analyze(case_ii)
    assert (rep.n_max, rep.n_min) == (4, 4)
    assert rep.theorem_case is TheoremCase.OBTUSE_CASE_II_4_4
    assert rep.isosceles_case is IsoscelesCase.CASE_II
    legs = [e for e in rep.per_edge if e.edge_id != 2]
    assert all([cp.kind for cp in e.critical_points] == [Kind.MAXIMUM] for e in legs)


def test_apex_height_half_is_right():
    rep = analyze(make_triangle((0, 0), (1, 0), (0.5, 0.5)))
    assert rep.angle_class is AngleClass.RIGHT
    assert rep.theorem_case is TheoremCase.RIGHT_UNCOVERED
    assert (rep.n_max, rep.n_min) == (3, 3)


def test_apex_height_06_is_acute():
    rep = analyze(make_triangle((0, 0), (1, 0), (0.5, 0.6)))
    assert rep.theorem_case is TheoremCase.ACUTE_3_3
    assert rep.isosceles_case is IsoscelesCase.CASE_I


def test_obtuse_case_i():
    rep = analyze(make_triangle((0, 0), (1, 0), (0.5, 0.45)))
    assert rep.theorem_case is TheoremCase.OBTUSE_CASE_I_3_3


def test_critical_points_sorted_and_global_max(case_ii):
    rep = analyze(case_ii)
    keys = [(cp.edge_id, cp.x) for cp in rep.critical_points]
    assert keys == sorted(keys)
    assert all(rep.global_max.phi_value >= cp.phi_value for cp in rep.critical_points)


@pytest.mark.parametrize("b,expected", [
    (0.5, [0.5]),
    (0.3535534, [0.5]),
    (1 / math.sqrt(8), [0.5]),
])
def test_base_points_single(b, expected):
    assert isosceles_base_critical_points(b) == expected


def test_base_points_case_ii():
    pts = isosceles_base_critical_points(0.25)
    assert pts == pytest.approx([0.2958759, 0.5, 0.7041241], abs=1e-7)
    # r = sqrt(1/24) from the unsimplified expression sqrt(1/4 - (1 + 4b^2)/6)
    r = math.sqrt(0.25 - (1 + 4 * 0.25 ** 2) / 6)
    assert pts[2] - 0.5 == pytest.approx(r, abs=1e-15)


def test_base_points_agree_with_solver(rng):
    for b in rng.uniform(1e-3, 1, 100):
        if abs(b - ISOSCELES_THRESHOLD_HEIGHT) < 1e-4:
            continue
        roots = [r.x for r in solve_edge_cubic(cubic_coefficients(0.5, b))]
        assert roots == pytest.approx(isosceles_base_critical_points(b), abs=1e-10)


@pytest.mark.parametrize("delta,count", [(-1e-3, 3), (1e-3, 1)])
def test_threshold_flip(delta, count):
    b = ISOSCELES_THRESHOLD_HEIGHT + delta
    assert len(solve_edge_cubic(cubic_coefficients(0.5, b))) == count
    assert len(isosceles_base_critical_points(b)) == count


@pytest.mark.parametrize("h,case", [
    (0.25, IsoscelesCase.CASE_II),
    (0.8660254, IsoscelesCase.EQUILATERAL),
    (0.3535534, IsoscelesCase.THRESHOLD),
    (0.6, IsoscelesCase.CASE_I),
])
def test_isosceles_case_from_triangle(h, case):
    assert isosceles_case(make_triangle((0, 0), (1, 0), (0.5, h))) is case


def test_isosceles_case_rescaled_and_rotated():
    t = make_triangle((0, 0), (1, 0), (0.5, 0.25)).transformed(0.6, 0.8, 3.0, Point(2, 1))
    assert isosceles_case(t) is IsoscelesCase.CASE_II


def test_isosceles_case_rejects_scalene():
    with pytest.raises(NotIsosceles):
        isosceles_case(make_triangle((0, 0), (1, 0), (0.2, 0.9)))


def test_threshold_angle_equivalence():
    assert math.atan2(ISOSCELES_THRESHOLD_HEIGHT, 0.5) == pytest.approx(
        ISOSCELES_THRESHOLD_BASE_ANGLE, abs=1e-15)
    assert math.degrees(ISOSCELES_THRESHOLD_BASE_ANGLE) == pytest.approx(35.2643897, abs=1e-7)
    assert math.pi / 3 > ISOSCELES_THRESHOLD_BASE_ANGLE
    assert isosceles_case_for_height(0.5 * math.tan(math.pi / 3)) is IsoscelesCase.EQUILATERAL


def test_leg_cubic_equilateral_midpoint():
    leg = isosceles_leg_cubic(0.5)
    assert LegCubic.eval_monic(leg.derived_monic, 0.5) == pytest.approx(0.0, abs=1e-15)
    assert LegCubic.eval_monic(leg.printed_monic, 0.5) == pytest.approx(1 / 12, abs=1e-12)
    full = cubic_coefficients(0.5, math.sqrt(0.75))
    assert leg.derived.coefficients == pytest.approx(full.coefficients, abs=1e-14)


def test_leg_cubic_matches_general_cubic():
    a = 0.1
    leg = isosceles_leg_cubic(a)
    general = cubic_coefficients(a, math.sqrt(0.19))
    assert leg.derived.coefficients == pytest.approx(general.coefficients, abs=1e-14)
    x1 = [r.x for r in solve_edge_cubic(leg.derived)]
    x2 = [r.x for r in solve_edge_cubic(general)]
    assert x1 == pytest.approx(x2, abs=1e-10)


def test_leg_turning_thresholds():
    assert LEG_PRINTED_TURNING_THRESHOLD == pytest.approx(0.01903, abs=1e-5)
    assert LEG_DERIVED_TURNING_THRESHOLD == pytest.approx(0.09868, abs=1e-5)
    assert isosceles_leg_cubic(0.05).derived_discriminant > 0
    assert isosceles_leg_cubic(0.05).printed_discriminant < 0
    # the derivative of the derived cubic has real roots exactly in this regime
    leg = isosceles_leg_cubic(0.05)
    assert len(leg.derived.stationary_points()) == 2


@pytest.mark.parametrize("a", [0.5, 0.0625, 0.9])
def test_leg_critical_point_unique_maximum(a):
    cp = isosceles_leg_critical_point(a)
    assert cp.kind is Kind.MAXIMUM
    scan = grid_scan_edge(a, math.sqrt(2 * a - a * a), 1_000_000)
    assert len(scan.approx_critical_xs) == 1
    assert cp.x == pytest.approx(scan.approx_critical_xs[0], abs=2e-6)
    if a == 0.5:
        assert cp.x == pytest.approx(0.5, abs=1e-12)


def test_leg_frames_of_actual_triangle(case_ii):
    rep = analyze(case_ii)
    for e in rep.per_edge:
        if e.edge_id == 2:
            continue
        # legs have unit length in their frame, so the far base vertex sits on
        # a circle of radius 1 around one endpoint
        a, b = e.frame.a, e.frame.b
        assert min(abs(a * a + b * b - 1), abs((a - 1) ** 2 + b * b - 1)) < 1e-12
        assert e.frame.a > 1 or e.frame.a < 0


def test_kappa_analytic_oracle():
    # at an off-centre base root, x(1-x) = 2 d^2, which reduces phi'' to -(3/2)(1-2x)^2 / d
    for b in (0.1, 0.2, 0.25, 0.3):
        assert base_second_derivative_constant(b) == pytest.approx(-1.5, abs=1e-6)


def test_kappa_fd_value_b025():
    x = isosceles_base_critical_points(0.25)[0]
    d = math.hypot(x - 0.5, 0.25)
    assert (1 - 2 * x) ** 2 / d == pytest.approx(0.516398, abs=1e-6)
    assert -1.5 * (1 - 2 * x) ** 2 / d == pytest.approx(-0.7746, abs=1e-4)


def test_kappa_domain():
    with pytest.raises(ValueError):
        base_second_derivative_constant(0.4)


def _random_of_class(rng, angle_class, count):
    out = []
    while len(out) < count:
        t = random_triangle(rng)
        rep = analyze(t)
        if rep.angle_class is angle_class:
            out.append(rep)
    return out


def test_acute_random_census(rng):
    for rep in _random_of_class(rng, AngleClass.ACUTE, 1000):
        assert rep.theorem_case is TheoremCase.ACUTE_3_3
        assert all([cp.kind for cp in e.critical_points] == [Kind.MAXIMUM] for e in rep.per_edge)


def test_obtuse_random_census(rng):
    for rep in _random_of_class(rng, AngleClass.OBTUSE, 1000):
        assert rep.theorem_case in (TheoremCase.OBTUSE_CASE_I_3_3, TheoremCase.OBTUSE_CASE_II_4_4)
        k = rep.angles.obtuse_vertex
        for e in rep.per_edge:
            if e.edge_id != k:
                assert e.frame.a < 0 or e.frame.a > 1
                assert [cp.kind for cp in e.critical_points] == [Kind.MAXIMUM]
        assert not rep.diagnostics


def test_relabel_and_similarity_invariance(rng):
    for _ in range(50):
        t = random_triangle(rng)
        rep = analyze(t)
        lam = rng.uniform(0.2, 5)
        theta = rng.uniform(0, 2 * math.pi)
        u = t.transformed(math.cos(theta), math.sin(theta), lam, Point(-3, 7), bool(rng.integers(2)))
        moved = analyze(u)
        assert (moved.n_max, moved.n_min, moved.theorem_case) == (rep.n_max, rep.n_min, rep.theorem_case)
        assert moved.global_max.phi_value == pytest.approx(rep.global_max.phi_value * lam ** 3, rel=1e-9)
        for perm in ((1, 2, 0), (2, 1, 0)):
            r2 = analyze(t.relabeled(perm))
            assert (r2.n_max, r2.n_min, r2.theorem_case) == (rep.n_max, rep.n_min, rep.theorem_case)


def test_every_edge_has_a_maximum(rng):
    for _ in range(300):
        rep = analyze(random_triangle(rng))
        assert all(e.maxima for e in rep.per_edge)
        assert rep.n_min >= 3
