"""Stationary points of the distance product along one edge.

Everything here works in adapted coordinates: the edge is [0, 1] on the
x-axis and the opposite vertex sits at (a, b), b > 0.  Along the edge

    phi(x) = x (1 - x) sqrt((x - a)^2 + b^2)

and phi'(x) * d_x equals the cubic

    P(x) = -3x^3 + (5a + 2)x^2 - (3a + 2a^2 + 2b^2)x + (a^2 + b^2),

so the sign of P is the sign of phi' on (0, 1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .config import DEFAULT, ToleranceConfig
from .errors import AmbiguousClassification, NoConvergence
from .geometry import AdaptedFrame, Point, frame_to_original


class Kind(str, Enum):
    MAXIMUM = "maximum"
    MINIMUM = "minimum"
    INFLECTION = "inflection"


class Structure(str, Enum):
    UNIQUE_MAX_OBTUSE_OPPOSITE = "UniqueMax_ObtuseOpposite"
    UNIQUE_MAX_ALL_ACUTE = "UniqueMax_AllAcute"
    GENERAL = "General"

    @property
    def predicts_unique_max(self) -> bool:
        return self is not Structure.GENERAL


def dist_to_apex(x: float, a: float, b: float) -> float:
    return math.hypot(x - a, b)


def phi(x: float, a: float, b: float) -> float:
    return x * (1.0 - x) * dist_to_apex(x, a, b)


def phi_prime_residual(x: float, a: float, b: float) -> float:
    """(1 - 2x) d_x^2 - x (x - 1)(x - a); vanishes exactly where phi' does."""
    d2 = (x - a) ** 2 + b * b
    return (1.0 - 2.0 * x) * d2 - x * (x - 1.0) * (x - a)


def logphi_second(x: float, a: float, b: float) -> float:
    """Second derivative of ln phi along the edge, for 0 < x < 1."""
    u = x - a
    d2 = u * u + b * b
    return (b * b - u * u) / (d2 * d2) - 1.0 / (x * x) - 1.0 / ((1.0 - x) ** 2)


@dataclass(frozen=True)
class EdgeCubic:
    p3: float
    p2: float
    p1: float
    p0: float

    def __call__(self, x: float) -> float:
        return ((self.p3 * x + self.p2) * x + self.p1) * x + self.p0

    def deriv(self, x: float) -> float:
        return (3.0 * self.p3 * x + 2.0 * self.p2) * x + self.p1

    def deriv2(self, x: float) -> float:
        return 6.0 * self.p3 * x + 2.0 * self.p2

    @property
    def coefficients(self) -> tuple[float, float, float, float]:
        return (self.p3, self.p2, self.p1, self.p0)

    @property
    def scale(self) -> float:
        return max(1.0, abs(self.p3) + abs(self.p2) + abs(self.p1) + abs(self.p0))

    def monic(self) -> tuple[float, float, float, float]:
        return (1.0, self.p2 / self.p3, self.p1 / self.p3, self.p0 / self.p3)

    def stationary_points(self) -> list[float]:
        """Real roots of P' lying strictly inside (0, 1), ascending."""
        qa, qb, qc = 3.0 * self.p3, 2.0 * self.p2, self.p1
        disc = qb * qb - 4.0 * qa * qc
        if disc < 0:
            return []
        sq = math.sqrt(disc)
        # numerically stable pair of quadratic roots
        q = -0.5 * (qb + math.copysign(sq, qb)) if qb != 0 else -0.5 * sq
        cands = []
        if q != 0:
            cands += [q / qa, qc / q]
        else:
            cands += [0.0]
        return sorted({c for c in cands if 0.0 < c < 1.0})


def cubic_coefficients(a: float, b: float) -> EdgeCubic:
    a, b = float(a), float(b)
    return EdgeCubic(-3.0, 5.0 * a + 2.0, -(3.0 * a + 2.0 * a * a + 2.0 * b * b), a * a + b * b)


@dataclass(frozen=True)
class Root:
    """A root of P in (0, 1); ``lo``/``hi`` span the merged cluster."""

    x: float
    multiplicity: int
    residual: float
    lo: float
    hi: float


_EPS = 2.0 ** -52


def _sign(v: float) -> int:
    return int(v > 0) - int(v < 0)


def _refine(c: EdgeCubic, x: float, lo: float, hi: float, steps: int = 4) -> float:
    """Extra Newton steps, kept only while the residual strictly drops."""
    fx = abs(c(x))
    for _ in range(steps):
        dfx = c.deriv(x)
        if fx == 0.0 or dfx == 0.0:
            break
        nxt = x - c(x) / dfx
        fn = abs(c(nxt))
        if not (lo <= nxt <= hi and fn < fx):
            break
        x, fx = nxt, fn
    return x


def _polish(c: EdgeCubic, lo: float, hi: float, cfg: ToleranceConfig) -> float:
    """Bisect a sign-change bracket, then Newton-polish inside it."""
    flo = c(lo)
    while hi - lo > cfg.bisect_tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = c(mid)
        if fm == 0.0:
            return mid
        if _sign(fm) == _sign(flo):
            lo, flo = mid, fm
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    bound = cfg.root_residual_tol * c.scale
    for _ in range(cfg.max_iter):
        fx = c(x)
        if abs(fx) <= bound:
            return _refine(c, x, lo, hi)
        dfx = c.deriv(x)
        step = x - fx / dfx if dfx != 0.0 else x
        if not lo <= step <= hi or step == x:
            break
        x = step
    if abs(c(x)) <= bound:
        return _refine(c, x, lo, hi)
    raise NoConvergence(f"root near {x!r}: |P| = {abs(c(x)):.3e} exceeds {bound:.3e}")


def solve_edge_cubic(c: EdgeCubic, cfg: ToleranceConfig = DEFAULT) -> list[Root]:
    """All roots of P in the open interval (0, 1), sorted, with multiplicities.

    Sign changes are bracketed on a uniform grid refined by the stationary
    points of P, so that P is monotone between consecutive breakpoints.
    A stationary point where P touches zero without a sign change is a
    double root.  Roots closer than ``cfg.cluster_tol`` are merged.
    """
    stationary = c.stationary_points()
    n = cfg.grid_n
    nodes = sorted({i / n for i in range(n + 1)} | set(stationary))
    vals = [c(x) for x in nodes]
    bound = cfg.root_residual_tol * c.scale

    found: list[tuple[float, int]] = []
    bracketed = set()  # indices of intervals containing a found root
    for i, (x, v) in enumerate(zip(nodes, vals)):
        if v == 0.0 and 0.0 < x < 1.0:
            found.append((x, 1))
            bracketed.update((i - 1, i))
    for i in range(len(nodes) - 1):
        if vals[i] * vals[i + 1] < 0:
            found.append((_polish(c, nodes[i], nodes[i + 1], cfg), 1))
            bracketed.add(i)

    for s in stationary:
        idx = nodes.index(s)
        if abs(vals[idx]) <= bound and vals[idx] != 0.0 \
                and idx - 1 not in bracketed and idx not in bracketed:
            found.append((s, 2))

    found.sort()
    # P between two roots below this is rounding noise, not a resolved lobe
    noise = 8.0 * _EPS * c.scale
    clusters: list[list[tuple[float, int]]] = []
    for x, m in found:
        if clusters:
            prev = clusters[-1][-1][0]
            if x - prev < cfg.cluster_tol or abs(c(0.5 * (prev + x))) <= noise:
                clusters[-1].append((x, m))
                continue
        clusters.append([(x, m)])

    roots = []
    for i, cl in enumerate(clusters):
        xs = [x for x, _ in cl]
        mult = sum(m for _, m in cl)
        x = sum(xs) / len(xs)
        flat = abs(c.deriv(x)) < cfg.deriv_tol
        if len(cl) > 1 or flat:
            others = [o[0][0] for j, o in enumerate(clusters) if j != i]
            crossing = classify_critical(x, c, cfg, others, (xs[0], xs[-1])) is not Kind.INFLECTION
            if not crossing:
                mult = 2
            elif mult >= 2 or (flat and len(clusters) == 1):
                # a lone flat crossing is a pair collapsed onto a simple root
                mult = 3
            else:
                mult = 1
        roots.append(Root(x=x, multiplicity=min(mult, 3), residual=abs(c(x)),
                          lo=xs[0], hi=xs[-1]))
    return roots


def classify_critical(x: float, c: EdgeCubic, cfg: ToleranceConfig = DEFAULT,
                      others=(), span: tuple[float, float] | None = None) -> Kind:
    """Classify a root of P from the signs of P just outside it.

    ``others`` are the remaining roots on the edge; the probe offset stays
    below half the distance to any of them and to the interval ends.
    ``span`` widens the root to a merged cluster [lo, hi].
    """
    lo, hi = span if span is not None else (x, x)
    gaps = [cfg.classify_offset_cap, 0.5 * lo, 0.5 * (1.0 - hi)]
    for o in others:
        if lo <= o <= hi:
            raise AmbiguousClassification(f"another root coincides with x={x!r}")
        if o < lo:
            gaps.append(0.5 * (lo - o))
        elif o > hi:
            gaps.append(0.5 * (o - hi))
    off = min(gaps)
    if not off > 0:
        raise AmbiguousClassification(f"no room to probe around x={x!r}")
    left, right = _sign(c(lo - off)), _sign(c(hi + off))
    if left == 0 or right == 0:
        raise AmbiguousClassification(f"P vanishes at probe offset {off:.3e} around x={x!r}")
    if left > 0 > right:
        return Kind.MAXIMUM
    if left < 0 < right:
        return Kind.MINIMUM
    return Kind.INFLECTION


def predicted_structure(a: float, b: float) -> Structure:
    if a < 0 or a > 1:
        return Structure.UNIQUE_MAX_OBTUSE_OPPOSITE
    if 0 < a < 1 and b * b > a * (1 - a):
        return Structure.UNIQUE_MAX_ALL_ACUTE
    return Structure.GENERAL


@dataclass(frozen=True)
class CriticalPoint:
    """A classified stationary point of phi on the triangle boundary.

    Interior edge points carry ``edge_id`` and the frame parameter ``x``;
    vertex minima carry ``vertex_id`` instead.  ``phi_value`` is in
    original units.
    """

    kind: Kind
    phi_value: float
    location: Point
    residual: float = 0.0
    x: float | None = None
    edge_id: int | None = None
    vertex_id: int | None = None
    multiplicity: int = 1


@dataclass(frozen=True)
class EdgeAnalysis:
    frame: AdaptedFrame
    cubic: EdgeCubic
    roots: tuple[Root, ...]
    critical_points: tuple[CriticalPoint, ...]
    prediction: Structure
    diagnostics: tuple[str, ...] = field(default=())

    @property
    def edge_id(self) -> int:
        return self.frame.edge_id

    def count(self, kind: Kind) -> int:
        return sum(cp.kind is kind for cp in self.critical_points)

    @property
    def maxima(self) -> list[CriticalPoint]:
        return [cp for cp in self.critical_points if cp.kind is Kind.MAXIMUM]


def classify_roots(roots, c: EdgeCubic, cfg: ToleranceConfig = DEFAULT) -> list[Kind]:
    kinds = []
    for i, r in enumerate(roots):
        others = [o.x for j, o in enumerate(roots) if j != i]
        kinds.append(classify_critical(r.x, c, cfg, others=others, span=(r.lo, r.hi)))
    return kinds


def analyze_edge(f: AdaptedFrame, cfg: ToleranceConfig = DEFAULT) -> EdgeAnalysis:
    c = cubic_coefficients(f.a, f.b)
    roots = solve_edge_cubic(c, cfg)
    kinds = classify_roots(roots, c, cfg)
    lam3 = f.scale ** 3
    cps = tuple(
        CriticalPoint(kind=k, phi_value=phi(r.x, f.a, f.b) * lam3,
                      location=frame_to_original(f, r.x), residual=r.residual,
                      x=r.x, edge_id=f.edge_id, multiplicity=r.multiplicity)
        for r, k in zip(roots, kinds)
    )
    prediction = predicted_structure(f.a, f.b)
    diagnostics = []
    if prediction.predicts_unique_max and [k for k in kinds] != [Kind.MAXIMUM]:
        diagnostics.append(
            f"edge {f.edge_id}: {prediction.value} predicts a single maximum, "
            f"solver found {[k.value for k in kinds]}")
    return EdgeAnalysis(frame=f, cubic=c, roots=tuple(roots), critical_points=cps,
                        prediction=prediction, diagnostics=tuple(diagnostics))
