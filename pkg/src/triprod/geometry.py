"""Triangles, angle classification and per-edge adapted coordinate frames.

Edge ``k`` is the edge opposite vertex ``k``; it runs from vertex ``(k+1) % 3``
to vertex ``(k+2) % 3``.  The adapted frame of an edge is the similarity that
sends those endpoints to (0, 0) and (1, 0) and the opposite vertex to
(a, b) with b > 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

from .config import DEFAULT, ToleranceConfig
from .errors import DegenerateTriangle


class Point(NamedTuple):
    x: float
    y: float

    def __sub__(self, other):  # type: ignore[override]
        return Point(self.x - other.x, self.y - other.y)

    def dist(self, other: "Point") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


class AngleClass(str, Enum):
    ACUTE = "acute"
    RIGHT = "right"
    OBTUSE = "obtuse"


def edge_vertices(edge_id: int) -> tuple[int, int]:
    """Indices of the (start, end) vertices of ``edge_id``."""
    if edge_id not in (0, 1, 2):
        raise ValueError(f"edge_id must be 0, 1 or 2, got {edge_id!r}")
    return (edge_id + 1) % 3, (edge_id + 2) % 3


@dataclass(frozen=True)
class Triangle:
    a_vertex: Point
    b_vertex: Point
    c_vertex: Point

    @property
    def vertices(self) -> tuple[Point, Point, Point]:
        return (self.a_vertex, self.b_vertex, self.c_vertex)

    def edge_length(self, edge_id: int) -> float:
        i, j = edge_vertices(edge_id)
        return self.vertices[i].dist(self.vertices[j])

    @property
    def edge_lengths(self) -> tuple[float, float, float]:
        return tuple(self.edge_length(k) for k in range(3))  # type: ignore[return-value]

    def twice_signed_area(self) -> float:
        (xa, ya), (xb, yb), (xc, yc) = self.vertices
        return xa * (yb - yc) + xb * (yc - ya) + xc * (ya - yb)

    def scaled(self, lam: float, origin: Point = Point(0.0, 0.0)) -> "Triangle":
        return Triangle(
            *(Point(origin.x + lam * (p.x - origin.x), origin.y + lam * (p.y - origin.y))
              for p in self.vertices)
        )

    def transformed(self, cos_t: float, sin_t: float, lam: float = 1.0,
                    shift: Point = Point(0.0, 0.0), reflect: bool = False) -> "Triangle":
        """Apply p -> lam * R(p') + shift, where p' is p mirrored in the x-axis if ``reflect``."""
        out = []
        for p in self.vertices:
            px, py = p.x, (-p.y if reflect else p.y)
            out.append(Point(shift.x + lam * (cos_t * px - sin_t * py),
                             shift.y + lam * (sin_t * px + cos_t * py)))
        return Triangle(*out)

    def relabeled(self, perm: tuple[int, int, int]) -> "Triangle":
        v = self.vertices
        return Triangle(v[perm[0]], v[perm[1]], v[perm[2]])


def make_triangle(p1, p2, p3, cfg: ToleranceConfig = DEFAULT) -> Triangle:
    """Build a validated triangle from three (x, y) pairs.

    Raises DegenerateTriangle for non-finite input, when twice the area is
    not above ``cfg.degenerate_area_tol``, or when the area divided by the
    squared longest edge is not above it either.
    """
    pts = []
    for p in (p1, p2, p3):
        x, y = float(p[0]), float(p[1])
        if not (math.isfinite(x) and math.isfinite(y)):
            raise DegenerateTriangle(f"non-finite vertex {p!r}")
        pts.append(Point(x, y))
    t = Triangle(*pts)
    longest = max(t.edge_lengths)
    twice_area = abs(t.twice_signed_area())
    if longest == 0.0 or not twice_area > cfg.degenerate_area_tol:
        raise DegenerateTriangle(
            f"degenerate triangle: twice area {twice_area:.3e} <= {cfg.degenerate_area_tol:.1e}")
    normalized_area = 0.5 * (twice_area / longest) / longest
    if not normalized_area > cfg.degenerate_area_tol:
        raise DegenerateTriangle(
            f"degenerate triangle: normalized area {normalized_area:.3e} "
            f"<= {cfg.degenerate_area_tol:.1e}")
    return t


def vertex_cosine(t: Triangle, k: int) -> float:
    """Cosine of the interior angle at vertex ``k``."""
    v = t.vertices
    p, q, r = v[k], v[(k + 1) % 3], v[(k + 2) % 3]
    e1, e2 = q - p, r - p
    dot = e1.x * e2.x + e1.y * e2.y
    return dot / (math.hypot(*e1) * math.hypot(*e2))


def vertex_angle(t: Triangle, k: int) -> float:
    v = t.vertices
    p, q, r = v[k], v[(k + 1) % 3], v[(k + 2) % 3]
    e1, e2 = q - p, r - p
    return math.atan2(abs(e1.x * e2.y - e1.y * e2.x), e1.x * e2.x + e1.y * e2.y)


@dataclass(frozen=True)
class AngleReport:
    overall: AngleClass
    per_vertex: tuple[AngleClass, AngleClass, AngleClass]
    angles: tuple[float, float, float]

    @property
    def obtuse_vertex(self) -> int | None:
        for k, c in enumerate(self.per_vertex):
            if c is AngleClass.OBTUSE:
                return k
        return None


def classify_angles(t: Triangle, cfg: ToleranceConfig = DEFAULT) -> AngleReport:
    per = []
    for k in range(3):
        c = vertex_cosine(t, k)
        if abs(c) <= cfg.right_angle_tol:
            per.append(AngleClass.RIGHT)
        elif c < 0:
            per.append(AngleClass.OBTUSE)
        else:
            per.append(AngleClass.ACUTE)
    if AngleClass.OBTUSE in per:
        overall = AngleClass.OBTUSE
    elif AngleClass.RIGHT in per:
        overall = AngleClass.RIGHT
    else:
        overall = AngleClass.ACUTE
    return AngleReport(overall, tuple(per), tuple(vertex_angle(t, k) for k in range(3)))  # type: ignore[arg-type]


@dataclass(frozen=True)
class AdaptedFrame:
    """Similarity frame for one edge.

    Frame coordinates of an original point p are
    ``M (R (p - translation)) / scale`` with R the rotation by
    (rotation_cos, -rotation_sin) and M the mirror y -> -y when
    ``reflected``.
    """

    edge_id: int
    scale: float
    rotation_cos: float
    rotation_sin: float
    translation: Point
    reflected: bool
    a: float
    b: float
    apex_angle: float

    def to_frame(self, p: Point) -> Point:
        dx, dy = p.x - self.translation.x, p.y - self.translation.y
        c, s = self.rotation_cos, self.rotation_sin
        u = (c * dx + s * dy) / self.scale
        v = (-s * dx + c * dy) / self.scale
        return Point(u, -v if self.reflected else v)

    def to_original(self, u: float, v: float = 0.0) -> Point:
        if self.reflected:
            v = -v
        c, s = self.rotation_cos, self.rotation_sin
        lam = self.scale
        return Point(self.translation.x + lam * (c * u - s * v),
                     self.translation.y + lam * (s * u + c * v))


def adapted_frame(t: Triangle, edge_id: int) -> AdaptedFrame:
    i, j = edge_vertices(edge_id)
    v = t.vertices
    p0, p1, apex = v[i], v[j], v[edge_id]
    lam = p0.dist(p1)
    c, s = (p1.x - p0.x) / lam, (p1.y - p0.y) / lam
    dx, dy = apex.x - p0.x, apex.y - p0.y
    a = (c * dx + s * dy) / lam
    b = (-s * dx + c * dy) / lam
    reflected = b < 0
    if reflected:
        b = -b
    return AdaptedFrame(edge_id=edge_id, scale=lam, rotation_cos=c, rotation_sin=s,
                        translation=p0, reflected=reflected, a=a, b=b,
                        apex_angle=vertex_angle(t, edge_id))


def frame_to_original(f: AdaptedFrame, x: float) -> Point:
    """Original-coordinate point of the frame point (x, 0)."""
    return f.to_original(x, 0.0)


@dataclass(frozen=True)
class IsoscelesInfo:
    apex: int
    equilateral: bool
    apexes: tuple[int, ...]


def is_isosceles(t: Triangle, rel_tol: float = DEFAULT.isosceles_rel_tol) -> IsoscelesInfo | None:
    """Return the apex (vertex between two equal edges), or None if scalene.

    For equilateral triangles every vertex is an apex; ``apex`` is then 0.
    Which apex is reported for an isosceles triangle does not depend on the
    vertex labels, only on the edge lengths.
    """
    lengths = t.edge_lengths
    apexes = []
    for k in range(3):
        # the two edges meeting at vertex k are the ones not opposite it
        l1, l2 = lengths[(k + 1) % 3], lengths[(k + 2) % 3]
        if abs(l1 - l2) <= rel_tol * max(l1, l2):
            apexes.append(k)
    if not apexes:
        return None
    if len(apexes) >= 2:
        return IsoscelesInfo(apex=0, equilateral=True, apexes=(0, 1, 2))
    return IsoscelesInfo(apex=apexes[0], equilateral=False, apexes=tuple(apexes))
