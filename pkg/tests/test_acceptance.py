"""Acceptance gate: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines.
"""
import math
import time

import numpy as np

from triprod import census, oracle
from triprod.edge import Kind, classify_roots, solve_edge_cubic
from triprod.geometry import AngleClass, Point, classify_angles, make_triangle

SQRT3_8 = math.sqrt(3) / 8


def gate(number, title, ok, detail):
    print(f"\n{'PASS' if ok else 'FAIL'}  criterion {number:>2}  {title}: {detail}")
    assert ok, f"criterion {number} ({title}) failed: {detail}"


def _base_edge(t):
    return census.analyze(t).per_edge[2]


def test_01_equilateral():
    t = make_triangle((0, 0), (1, 0), (0.5, math.sqrt(3) / 2))
    start = time.perf_counter()
    rep = census.analyze(t)
    elapsed = time.perf_counter() - start
    maxima = rep.maxima
    mids = [Point((p.x + q.x) / 2, (p.y + q.y) / 2)
            for p, q in ((t.vertices[1], t.vertices[2]), (t.vertices[2], t.vertices[0]),
                         (t.vertices[0], t.vertices[1]))]
    value_err = max(abs(cp.phi_value - SQRT3_8) for cp in maxima)
    loc_err = max(min(cp.location.dist(m) for cp in maxima) for m in mids)
    ok = (rep.n_max == 3 and rep.n_min == 3 and value_err <= 1e-9 and loc_err <= 1e-9
          and abs(rep.global_max.phi_value - SQRT3_8) <= 1e-9 and elapsed < 0.1)
    gate(1, "equilateral", ok,
         f"{rep.n_max} max / {rep.n_min} min, value err {value_err:.1e}, "
         f"midpoint err {loc_err:.1e}, {elapsed * 1e3:.1f} ms")


def test_02_isosceles_threshold():
    bad = []
    worst = 0.0
    for b in (0.36, 0.40, 0.60):
        e = _base_edge(make_triangle((0, 0), (1, 0), (0.5, b)))
        xs = [cp.x for cp in e.critical_points]
        kinds = [cp.kind for cp in e.critical_points]
        if kinds != [Kind.MAXIMUM]:
            bad.append(f"b={b}: {kinds}")
            continue
        worst = max(worst, abs(xs[0] - 0.5))
    for b in (0.10, 0.25, 0.34):
        e = _base_edge(make_triangle((0, 0), (1, 0), (0.5, b)))
        kinds = [cp.kind for cp in e.critical_points]
        if kinds != [Kind.MAXIMUM, Kind.MINIMUM, Kind.MAXIMUM]:
            bad.append(f"b={b}: {kinds}")
            continue
        r = math.sqrt(1 / 12 - 2 * b * b / 3)
        expected = [0.5 - r, 0.5, 0.5 + r]
        worst = max(worst, max(abs(cp.x - x) for cp, x in zip(e.critical_points, expected)))
    gate(2, "isosceles threshold", not bad and worst <= 1e-9,
         f"structure mismatches {bad or 'none'}, worst root err {worst:.1e}")


def test_03_case_ii_census():
    rep = census.analyze(make_triangle((0, 0), (1, 0), (0.5, 0.25)))
    base = rep.per_edge[2].critical_points
    maxima = [cp for cp in base if cp.kind is Kind.MAXIMUM]
    minima = [cp for cp in base if cp.kind is Kind.MINIMUM]
    ok = (rep.n_max == 4 and rep.n_min == 4 and len(maxima) == 2 and len(minima) == 1
          and abs(maxima[0].x - 0.2958758548) <= 1e-9
          and abs(maxima[1].x - 0.7041241452) <= 1e-9
          and all(abs(cp.phi_value - 0.0672393) <= 1e-6 for cp in maxima)
          and abs(minima[0].x - 0.5) <= 1e-9
          and abs(minima[0].phi_value - 0.0625) <= 1e-12)
    gate(3, "case (ii) census", ok,
         f"{rep.n_max} max / {rep.n_min} min, base maxima "
         f"{[round(cp.x, 10) for cp in maxima]} phi {[round(cp.phi_value, 7) for cp in maxima]}, "
         f"minimum phi {minima[0].phi_value if minima else None!r}")


def test_04_proposition_suite():
    rng = np.random.default_rng(4)
    acute, obtuse = [], []
    while len(acute) < 1000 or len(obtuse) < 1000:
        t = oracle.random_triangle(rng)
        cls = classify_angles(t).overall
        if cls is AngleClass.ACUTE and len(acute) < 1000:
            acute.append(t)
        elif cls is AngleClass.OBTUSE and len(obtuse) < 1000:
            obtuse.append(t)
    violations = 0
    start = time.perf_counter()
    for t in acute:
        rep = census.analyze(t)
        if any([cp.kind for cp in e.critical_points] != [Kind.MAXIMUM] for e in rep.per_edge):
            violations += 1
    for t in obtuse:
        rep = census.analyze(t)
        k = rep.angles.obtuse_vertex
        adj = [e for e in rep.per_edge if e.edge_id != k]
        if any([cp.kind for cp in e.critical_points] != [Kind.MAXIMUM] for e in adj):
            violations += 1
    elapsed = time.perf_counter() - start
    gate(4, "proposition suite", violations == 0 and elapsed < 10,
         f"{violations} violations in 1000 acute + 1000 obtuse, {elapsed:.2f} s")


def test_05_oracle_equivalence():
    rng = np.random.default_rng(5)
    disagreements = []
    for i in range(200):
        rep = census.analyze(oracle.random_triangle(rng))
        verdict = oracle.compare_census(rep, oracle.scan_report_edges(rep, 100_000), tol=1e-4)
        if not verdict.passed:
            disagreements.append(i)
    gate(5, "oracle equivalence", not disagreements,
         f"{len(disagreements)} of 200 triangles disagree {disagreements[:5]}")


def test_06_harmonicity():
    rng = np.random.default_rng(6)
    ratios = []
    for _ in range(20):
        t = oracle.random_triangle(rng, min_normalized_area=0.05, min_inradius=0.05)
        for _ in range(20):
            p = oracle.random_interior_point(rng, t, margin=0.05)
            ratios.append(oracle.richardson_ratio(t, p, 1e-3))
    ok = len(ratios) == 400 and all(3.0 <= r <= 5.0 for r in ratios)
    gate(6, "harmonicity", ok,
         f"{len(ratios)} ratios in [{min(ratios):.4f}, {max(ratios):.4f}]")


def test_07_boundary_maximum():
    rng = np.random.default_rng(7)
    worst = -math.inf
    for _ in range(100):
        scan = oracle.grid_scan_interior(oracle.random_triangle(rng), 800)
        worst = max(worst, scan.interior_max - scan.boundary_max)
    gate(7, "boundary maximum principle", worst <= 1e-6,
         f"max(interior - boundary) = {worst:.3e}")


def test_08_scaling_law():
    rng = np.random.default_rng(8)
    worst_val, worst_loc = 0.0, 0.0
    for _ in range(50):
        t = oracle.random_triangle(rng)
        base = census.analyze(t).global_max
        theta = rng.uniform(0, 2 * math.pi)
        cos_t, sin_t = math.cos(theta), math.sin(theta)
        shift = Point(*rng.uniform(-3, 3, size=2))
        for lam in (0.5, 2.0, 10.0):
            g = census.analyze(t.transformed(cos_t, sin_t, lam, shift)).global_max
            worst_val = max(worst_val, abs(g.phi_value / (lam ** 3 * base.phi_value) - 1))
            p = base.location
            image = Point(shift.x + lam * (cos_t * p.x - sin_t * p.y),
                          shift.y + lam * (sin_t * p.x + cos_t * p.y))
            worst_loc = max(worst_loc, g.location.dist(image) / lam)
    gate(8, "scaling law", worst_val <= 1e-9 and worst_loc <= 1e-9,
         f"value rel err {worst_val:.1e}, argmax err / lambda {worst_loc:.1e}")


def test_09_typo_adjudication():
    leg = census.isosceles_leg_cubic(0.5)
    derived = leg.derived(0.5)
    printed = abs(leg.eval_monic(leg.printed_monic, 0.5))
    kappas = [census.base_second_derivative_constant(b) for b in (0.20, 0.25, 0.30)]
    ok = (abs(derived) <= 1e-12 and abs(printed - 1 / 12) <= 1e-9
          and all(abs(k + 1.5) < 1e-2 and k < 0 for k in kappas))
    gate(9, "typo adjudication", ok,
         f"derived leg cubic at 0.5 = {derived:.1e}, |printed| = {printed:.7f}, "
         f"kappa = {[round(k, 6) for k in kappas]}")


def test_10_leg_uniqueness():
    rng = np.random.default_rng(10)
    violations = []
    for a in rng.uniform(0.01, 0.99, size=500):
        leg = census.isosceles_leg_cubic(float(a))
        roots = solve_edge_cubic(leg.derived)
        kinds = classify_roots(roots, leg.derived)
        if kinds != [Kind.MAXIMUM]:
            violations.append(float(a))
    gate(10, "leg uniqueness", not violations,
         f"{len(violations)} violations in 500 samples {violations[:3]}")
