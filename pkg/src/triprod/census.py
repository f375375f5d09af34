"""Triangle-wide census of boundary critical points and the isosceles pathway."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .config import DEFAULT, ToleranceConfig
from .edge import (CriticalPoint, EdgeAnalysis, EdgeCubic, Kind, analyze_edge, classify_roots,
                   dist_to_apex, phi, solve_edge_cubic)
from .errors import InternalInconsistency, NotIsosceles
from .geometry import (AdaptedFrame, AngleClass, AngleReport, Point, Triangle, adapted_frame,
                       classify_angles, is_isosceles)
from .oracle import fd_second

# apex height over a unit base at which the base maxima merge into the midpoint
ISOSCELES_THRESHOLD_HEIGHT = 1.0 / math.sqrt(8.0)
ISOSCELES_THRESHOLD_BASE_ANGLE = math.atan(1.0 / math.sqrt(2.0))
EQUILATERAL_HEIGHT = math.sqrt(3.0) / 2.0


class TheoremCase(str, Enum):
    ACUTE_3_3 = "acute_3_3"
    OBTUSE_CASE_I_3_3 = "obtuse_case_i_3_3"
    OBTUSE_CASE_II_4_4 = "obtuse_case_ii_4_4"
    RIGHT_UNCOVERED = "right_uncovered"
    # counts outside the acute/obtuse dichotomy; always paired with a diagnostic
    INCONSISTENT = "inconsistent"


class IsoscelesCase(str, Enum):
    CASE_I = "case_i"
    CASE_II = "case_ii"
    THRESHOLD = "threshold"
    EQUILATERAL = "equilateral"


@dataclass(frozen=True)
class CensusReport:
    triangle: Triangle
    per_edge: tuple[EdgeAnalysis, EdgeAnalysis, EdgeAnalysis]
    vertex_minima: tuple[CriticalPoint, CriticalPoint, CriticalPoint]
    n_max: int
    n_min: int
    n_inflection: int
    angles: AngleReport
    theorem_case: TheoremCase
    isosceles_case: IsoscelesCase | None
    global_max: CriticalPoint
    diagnostics: tuple[str, ...] = field(default=())

    @property
    def angle_class(self) -> AngleClass:
        return self.angles.overall

    @property
    def critical_points(self) -> list[CriticalPoint]:
        """Interior edge critical points sorted by (edge_id, x)."""
        cps = [cp for e in self.per_edge for cp in e.critical_points]
        return sorted(cps, key=lambda cp: (cp.edge_id, cp.x))

    @property
    def maxima(self) -> list[CriticalPoint]:
        return [cp for cp in self.critical_points if cp.kind is Kind.MAXIMUM]


def _theorem_case(angle_class: AngleClass, n_max: int, n_min: int) -> TheoremCase:
    if angle_class is AngleClass.RIGHT:
        return TheoremCase.RIGHT_UNCOVERED
    if angle_class is AngleClass.ACUTE and (n_max, n_min) == (3, 3):
        return TheoremCase.ACUTE_3_3
    if angle_class is AngleClass.OBTUSE:
        if (n_max, n_min) == (3, 3):
            return TheoremCase.OBTUSE_CASE_I_3_3
        if (n_max, n_min) == (4, 4):
            return TheoremCase.OBTUSE_CASE_II_4_4
    return TheoremCase.INCONSISTENT


def analyze(t: Triangle, cfg: ToleranceConfig = DEFAULT) -> CensusReport:
    """Locate and classify every critical point of phi on the boundary of ``t``.

    Each vertex is counted once as a minimum.  The obtuse case (i)/(ii)
    split is read off the root census, never inferred from closed forms.
    """
    edges = tuple(analyze_edge(adapted_frame(t, k), cfg) for k in range(3))
    vertex_minima = tuple(
        CriticalPoint(kind=Kind.MINIMUM, phi_value=0.0, location=v, vertex_id=k)
        for k, v in enumerate(t.vertices))
    interior = [cp for e in edges for cp in e.critical_points]
    n_max = sum(cp.kind is Kind.MAXIMUM for cp in interior)
    n_min = 3 + sum(cp.kind is Kind.MINIMUM for cp in interior)
    n_infl = sum(cp.kind is Kind.INFLECTION for cp in interior)
    angles = classify_angles(t, cfg)

    diagnostics = [d for e in edges for d in e.diagnostics]
    case = _theorem_case(angles.overall, n_max, n_min)
    if case is TheoremCase.INCONSISTENT:
        diagnostics.append(
            f"{angles.overall.value} triangle with {n_max} maxima / {n_min} minima "
            "is outside the expected census")
    if any(not e.maxima for e in edges):
        diagnostics.append("an edge has no interior maximum")

    maxima = [cp for cp in interior if cp.kind is Kind.MAXIMUM]
    pool = maxima or interior or list(vertex_minima)
    global_max = max(pool, key=lambda cp: cp.phi_value)

    iso = None
    if is_isosceles(t, cfg.isosceles_rel_tol) is not None:
        iso = isosceles_case(t, cfg)

    return CensusReport(triangle=t, per_edge=edges, vertex_minima=vertex_minima,
                        n_max=n_max, n_min=n_min, n_inflection=n_infl, angles=angles,
                        theorem_case=case, isosceles_case=iso, global_max=global_max,
                        diagnostics=tuple(diagnostics))


def isosceles_base_critical_points(b: float) -> list[float]:
    """Closed-form critical points on the base of a unit-base isosceles triangle.

    With apex height ``b`` the off-centre pair sits at 1/2 +- sqrt(1/12 - 2b^2/3)
    and exists only below the threshold height 1/sqrt(8).
    """
    if b >= ISOSCELES_THRESHOLD_HEIGHT:
        return [0.5]
    r = math.sqrt(1.0 / 12.0 - 2.0 * b * b / 3.0)
    return [0.5 - r, 0.5, 0.5 + r]


def isosceles_case_for_height(b: float, cfg: ToleranceConfig = DEFAULT) -> IsoscelesCase:
    """Case from the apex height over a unit base."""
    if not b > 0:
        raise ValueError("apex height must be positive")
    if abs(b - EQUILATERAL_HEIGHT) <= cfg.isosceles_rel_tol * EQUILATERAL_HEIGHT:
        return IsoscelesCase.EQUILATERAL
    if abs(b - ISOSCELES_THRESHOLD_HEIGHT) <= cfg.threshold_band:
        return IsoscelesCase.THRESHOLD
    if b < ISOSCELES_THRESHOLD_HEIGHT:
        return IsoscelesCase.CASE_II
    return IsoscelesCase.CASE_I


def isosceles_base_frame(t: Triangle, cfg: ToleranceConfig = DEFAULT) -> AdaptedFrame:
    info = is_isosceles(t, cfg.isosceles_rel_tol)
    if info is None:
        raise NotIsosceles("triangle has no two equal edges")
    return adapted_frame(t, info.apex)


def isosceles_case(t: Triangle, cfg: ToleranceConfig = DEFAULT) -> IsoscelesCase:
    info = is_isosceles(t, cfg.isosceles_rel_tol)
    if info is None:
        raise NotIsosceles("triangle has no two equal edges")
    if info.equilateral:
        return IsoscelesCase.EQUILATERAL
    # the frame of the base normalises it to unit length
    return isosceles_case_for_height(adapted_frame(t, info.apex).b, cfg)


def base_angle_for_height(b: float) -> float:
    return math.atan2(b, 0.5)


@dataclass(frozen=True)
class LegCubic:
    """Leg cubic of an isosceles triangle, with the leg normalised to [0, 1].

    ``derived`` follows from the general edge cubic once b^2 = 2a - a^2;
    ``printed_monic`` is the variant whose x^2 coefficient is -(5a+1)/3,
    kept only for comparison.
    """

    a: float
    derived: EdgeCubic
    derived_monic: tuple[float, float, float, float]
    printed_monic: tuple[float, float, float, float]

    @staticmethod
    def eval_monic(coeffs, x: float) -> float:
        c3, c2, c1, c0 = coeffs
        return ((c3 * x + c2) * x + c1) * x + c0

    @property
    def derived_discriminant(self) -> float:
        """Sign of the discriminant of the derived cubic's derivative."""
        a = self.a
        return 25 * a * a - 43 * a + 4

    @property
    def printed_discriminant(self) -> float:
        a = self.a
        return 25 * a * a - 53 * a + 1


# below these a the respective cubic has two stationary points
LEG_DERIVED_TURNING_THRESHOLD = (43 - math.sqrt(1449)) / 50
LEG_PRINTED_TURNING_THRESHOLD = (53 - 3 * math.sqrt(301)) / 50


def isosceles_leg_cubic(a: float) -> LegCubic:
    derived = EdgeCubic(-3.0, 5 * a + 2, -7 * a, 2 * a)
    printed = (1.0, -(5 * a + 1) / 3, 7 * a / 3, -2 * a / 3)
    return LegCubic(a=a, derived=derived, derived_monic=derived.monic(), printed_monic=printed)


def leg_height(a: float) -> float:
    return math.sqrt(2 * a - a * a)


def isosceles_leg_critical_point(a: float, cfg: ToleranceConfig = DEFAULT) -> CriticalPoint:
    """The single critical point on a leg, in leg-frame units (leg length 1)."""
    leg = isosceles_leg_cubic(a)
    roots = solve_edge_cubic(leg.derived, cfg)
    kinds = classify_roots(roots, leg.derived, cfg)
    if len(roots) != 1 or kinds[0] is not Kind.MAXIMUM:
        raise InternalInconsistency(
            f"leg cubic at a={a!r} has roots {[r.x for r in roots]} "
            f"classified {[k.value for k in kinds]}; expected one maximum")
    r = roots[0]
    return CriticalPoint(kind=Kind.MAXIMUM, phi_value=phi(r.x, a, leg_height(a)),
                         location=Point(r.x, 0.0), residual=r.residual, x=r.x,
                         multiplicity=r.multiplicity)


def base_second_derivative_constant(b: float, h: float = 1e-4) -> float:
    """Measure kappa in phi''(x) = kappa (1 - 2x)^2 / d_x at an off-centre base root.

    phi'' comes from a central second difference, so the result is an
    empirical check and does not use any closed form for kappa.
    """
    if not 0 < b < ISOSCELES_THRESHOLD_HEIGHT:
        raise ValueError("b must lie in (0, 1/sqrt(8))")
    x = isosceles_base_critical_points(b)[0]
    second = fd_second(phi(x - h, 0.5, b), phi(x, 0.5, b), phi(x + h, 0.5, b), h)
    return second * dist_to_apex(x, 0.5, b) / (1 - 2 * x) ** 2
