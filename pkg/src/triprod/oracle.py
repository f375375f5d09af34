"""Brute-force checks that share no code path with the cubic solver.

Grid scans sample phi directly, finite differences stand in for
derivatives, and a five-point stencil probes the harmonicity of ln phi.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, NamedTuple, Sequence

import numpy as np

from .errors import OutOfDomain
from .geometry import Point, Triangle

if TYPE_CHECKING:
    from .census import CensusReport

MIN_EDGE_SCAN = 1000
MIN_COMPARE_SCAN = 100_000
MIN_INTERIOR_SCAN = 100


@dataclass(frozen=True)
class GridScanResult:
    n: int
    approx_critical_xs: tuple[float, ...]
    max_x: float
    max_value: float


def grid_scan_edge(a: float, b: float, n: int = 1_000_000) -> GridScanResult:
    """Sample phi at x_i = i/n and report cells where the forward difference flips sign."""
    if n < MIN_EDGE_SCAN:
        raise ValueError(f"grid scan needs n >= {MIN_EDGE_SCAN}, got {n}")
    i = np.arange(n + 1)
    x = i / n
    f = x * (1.0 - x) * np.hypot(x - a, b)
    s = np.sign(np.diff(f))
    nz = np.flatnonzero(s)
    flips = np.flatnonzero(s[nz[:-1]] != s[nz[1:]])
    # extremum lies between node nz[j]+1 and node nz[j+1]
    lo, hi = nz[flips] + 1, nz[flips + 1]
    xs = tuple(float(v) for v in 0.5 * (lo + hi) / n)
    k = int(np.argmax(f))
    return GridScanResult(n=n, approx_critical_xs=xs, max_x=float(x[k]), max_value=float(f[k]))


class InteriorScan(NamedTuple):
    interior_max: float
    boundary_max: float


def _barycentric_grid(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    i, j = np.meshgrid(np.arange(n + 1), np.arange(n + 1), indexing="ij")
    keep = (i + j) <= n
    i, j = i[keep], j[keep]
    return i, j, n - i - j


def distance_product(t: Triangle, px: np.ndarray, py: np.ndarray) -> np.ndarray:
    out = np.ones_like(px, dtype=float)
    for v in t.vertices:
        out = out * np.hypot(px - v.x, py - v.y)
    return out


def grid_scan_interior(t: Triangle, n: int = 800) -> InteriorScan:
    """Max of phi over strictly interior and over boundary barycentric samples.

    A sample is on the boundary iff one of its integer barycentric weights is 0.
    """
    if n < MIN_INTERIOR_SCAN:
        raise ValueError(f"interior scan needs n >= {MIN_INTERIOR_SCAN}, got {n}")
    i, j, k = _barycentric_grid(n)
    (ax, ay), (bx, by), (cx, cy) = t.vertices
    px = (i * ax + j * bx + k * cx) / n
    py = (i * ay + j * by + k * cy) / n
    f = distance_product(t, px, py)
    on_boundary = (i == 0) | (j == 0) | (k == 0)
    return InteriorScan(float(f[~on_boundary].max()), float(f[on_boundary].max()))


def fd_second(f_minus: float, f0: float, f_plus: float, h: float) -> float:
    if not h > 0:
        raise ValueError("h must be positive")
    return (f_plus + f_minus - 2.0 * f0) / (h * h)


def _barycentric(t: Triangle, p: Point) -> tuple[float, float, float]:
    (ax, ay), (bx, by), (cx, cy) = t.vertices
    det = (by - cy) * (ax - cx) + (cx - bx) * (ay - cy)
    l1 = ((by - cy) * (p.x - cx) + (cx - bx) * (p.y - cy)) / det
    l2 = ((cy - ay) * (p.x - cx) + (ax - cx) * (p.y - cy)) / det
    return l1, l2, 1.0 - l1 - l2


def _segment_distance(p: Point, u: Point, v: Point) -> float:
    ex, ey = v.x - u.x, v.y - u.y
    s = ((p.x - u.x) * ex + (p.y - u.y) * ey) / (ex * ex + ey * ey)
    s = min(1.0, max(0.0, s))
    return math.hypot(p.x - u.x - s * ex, p.y - u.y - s * ey)


def laplacian_logphi(t: Triangle, p: Point, h: float) -> float:
    """Five-point Laplacian of ln phi at ``p``.

    Neighbour differences are formed as sums of log1p terms so the stencil
    does not lose digits to cancellation between nearly equal logarithms.
    """
    verts = t.vertices
    margin = 2.0 * h
    if min(_barycentric(t, p)) <= 0:
        raise OutOfDomain(f"{p} is not strictly inside the triangle")
    if min(p.dist(v) for v in verts) <= margin:
        raise OutOfDomain(f"stencil at {p} with h={h} comes within 2h of a vertex")
    if min(_segment_distance(p, verts[i], verts[(i + 1) % 3]) for i in range(3)) <= margin:
        raise OutOfDomain(f"stencil at {p} with h={h} comes within 2h of an edge")
    total = 0.0
    for v in verts:
        dx, dy = p.x - v.x, p.y - v.y
        r2 = dx * dx + dy * dy
        for sx, sy in ((h, 0.0), (-h, 0.0), (0.0, h), (0.0, -h)):
            # ln|p + s - v| - ln|p - v|
            total += 0.5 * math.log1p((2.0 * (sx * dx + sy * dy) + h * h) / r2)
    return total / (h * h)


def richardson_ratio(t: Triangle, p: Point, h: float = 1e-3) -> float:
    return laplacian_logphi(t, p, h) / laplacian_logphi(t, p, h / 2)


# -- verification against the analytic census --------------------------------

@dataclass(frozen=True)
class EdgeVerdict:
    edge_id: int
    analytic_xs: tuple[float, ...]
    scan_xs: tuple[float, ...]
    count_match: bool
    max_deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.count_match and self.max_deviation <= self.tolerance


@dataclass(frozen=True)
class Verdict:
    edges: tuple[EdgeVerdict, ...]

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.edges)


def scan_report_edges(report: "CensusReport", n: int = MIN_COMPARE_SCAN) -> list[GridScanResult]:
    return [grid_scan_edge(e.frame.a, e.frame.b, n) for e in report.per_edge]


def compare_census(report: "CensusReport", scans: Sequence[GridScanResult],
                   tol: float = 1e-4) -> Verdict:
    """Match analytic extrema to scan cells edge by edge.

    Inflections have no sign change in the discrete derivative, so only
    maxima and minima take part.
    """
    out = []
    for e, scan in zip(report.per_edge, scans, strict=True):
        if scan.n < MIN_COMPARE_SCAN:
            raise ValueError(f"comparison needs scans with n >= {MIN_COMPARE_SCAN}")
        xs = tuple(sorted(cp.x for cp in e.critical_points if cp.kind.value != "inflection"))
        cells = scan.approx_critical_xs
        tolerance = max(tol, 2.0 / scan.n)
        match = len(xs) == len(cells)
        dev = max((abs(u - v) for u, v in zip(xs, cells)), default=0.0) if match else math.inf
        out.append(EdgeVerdict(e.edge_id, xs, cells, match, dev, tolerance))
    return Verdict(tuple(out))


# -- seeded sampling of test triangles ----------------------------------------

def inradius(t: Triangle) -> float:
    return abs(t.twice_signed_area()) / sum(t.edge_lengths)


def random_triangle(rng: np.random.Generator, min_normalized_area: float = 1e-3,
                    min_inradius: float = 0.0) -> Triangle:
    """Vertices uniform in the unit square, rejecting slivers."""
    from .geometry import make_triangle

    while True:
        pts = rng.uniform(0.0, 1.0, size=(3, 2))
        try:
            t = make_triangle(*pts)
        except ValueError:
            continue
        longest = max(t.edge_lengths)
        if (0.5 * abs(t.twice_signed_area()) / longest ** 2 > min_normalized_area
                and inradius(t) > min_inradius):
            return t


def random_interior_point(rng: np.random.Generator, t: Triangle, margin: float = 0.05) -> Point:
    """Point whose barycentric weights all exceed ``margin``.

    Its distance to every edge is then more than 2 * margin * inradius.
    """
    w = rng.dirichlet(np.ones(3)) * (1 - 3 * margin) + margin
    (ax, ay), (bx, by), (cx, cy) = t.vertices
    return Point(float(w[0] * ax + w[1] * bx + w[2] * cx),
                 float(w[0] * ay + w[1] * by + w[2] * cy))
