"""Deterministic JSON, CSV and SVG renderings of a census."""
from __future__ import annotations

import math
from typing import Any

from . import __version__
from .census import CensusReport
from .config import ToleranceConfig
from .edge import CriticalPoint, EdgeAnalysis, Kind, phi

SCHEMA_VERSION = "1.0"


def format_float(v: float) -> str:
    """17 significant digits, always parseable back to the identical double."""
    if not math.isfinite(v):
        return "null"
    s = format(v, ".17g")
    if not any(ch in s for ch in ".en"):
        s += ".0"
    return s


def _escape(s: str) -> str:
    out = ['"']
    for ch in s:
        if ch == '"':
            out.append('\\"')
        elif ch == "\\":
            out.append("\\\\")
        elif ch == "\n":
            out.append("\\n")
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    out.append('"')
    return "".join(out)


def dumps(obj: Any, indent: int = 2, _level: int = 0) -> str:
    """JSON encoder with fixed float formatting; output ends without newline."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, str):
        return _escape(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{_escape(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(dumps(v) for v in obj) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _point(p) -> list[float]:
    return [float(p.x), float(p.y)]


def critical_point_doc(cp: CriticalPoint) -> dict:
    return {
        "edge_id": cp.edge_id,
        "vertex_id": cp.vertex_id,
        "x": cp.x,
        "kind": cp.kind.value,
        "phi": cp.phi_value,
        "location": _point(cp.location),
        "residual": cp.residual,
        "multiplicity": cp.multiplicity,
    }


def _edge_doc(e: EdgeAnalysis) -> dict:
    f = e.frame
    return {
        "edge_id": f.edge_id,
        "vertices": [(f.edge_id + 1) % 3, (f.edge_id + 2) % 3],
        "scale": f.scale,
        "a": f.a,
        "b": f.b,
        "apex_angle_rad": f.apex_angle,
        "reflected": f.reflected,
        "cubic": [float(c) for c in e.cubic.coefficients],
        "prediction": e.prediction.value,
        "roots": [{"x": r.x, "multiplicity": r.multiplicity} for r in e.roots],
        "diagnostics": list(e.diagnostics),
    }


def report_document(report: CensusReport, cfg: ToleranceConfig) -> dict:
    t = report.triangle
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "triprod", "version": __version__, "tolerances": cfg.as_dict()},
        "input": {"vertices": [_point(v) for v in t.vertices]},
        "census": {
            "angle_class": report.angle_class.value,
            "vertex_angle_classes": [c.value for c in report.angles.per_vertex],
            "vertex_angles_rad": list(report.angles.angles),
            "theorem_case": report.theorem_case.value,
            "isosceles_case": report.isosceles_case.value if report.isosceles_case else None,
            "n_max": report.n_max,
            "n_min": report.n_min,
            "n_inflection": report.n_inflection,
            "global_max": critical_point_doc(report.global_max),
            "vertex_minima": [critical_point_doc(cp) for cp in report.vertex_minima],
            "critical_points": [critical_point_doc(cp) for cp in report.critical_points],
            "edges": [_edge_doc(e) for e in report.per_edge],
            "diagnostics": list(report.diagnostics),
        },
    }


def render_json(report: CensusReport, cfg: ToleranceConfig) -> str:
    return dumps(report_document(report, cfg)) + "\n"


def profile_csv(edge: EdgeAnalysis, samples: int) -> str:
    """Rows (x, phi, sign of phi') at x = i/samples, phi in original units."""
    f = edge.frame
    lam3 = f.scale ** 3
    lines = ["x,phi,dphi_sign"]
    for i in range(samples + 1):
        x = i / samples
        p = edge.cubic(x)
        sign = (p > 0) - (p < 0)
        lines.append(f"{format_float(x)},{format_float(phi(x, f.a, f.b) * lam3)},{sign}")
    return "\n".join(lines) + "\n"


# -- SVG -----------------------------------------------------------------------

PANEL_W, PANEL_H = 900, 300
_MARGIN = 40
_CURVE_SAMPLES = 400


def _marker(kind: Kind, cx: float, cy: float) -> str:
    if kind is Kind.MAXIMUM:
        return f'<circle class="maximum" cx="{cx:.2f}" cy="{cy:.2f}" r="5" fill="#c0392b"/>'
    if kind is Kind.MINIMUM:
        return (f'<rect class="minimum" x="{cx - 5:.2f}" y="{cy - 5:.2f}" width="10" '
                f'height="10" fill="#2471a3"/>')
    return (f'<polygon class="inflection" points="{cx:.2f},{cy - 6:.2f} {cx + 6:.2f},{cy:.2f} '
            f'{cx:.2f},{cy + 6:.2f} {cx - 6:.2f},{cy:.2f}" fill="#7d3c98"/>')


def _panel(edge: EdgeAnalysis, top: int) -> list[str]:
    f = edge.frame
    lam3 = f.scale ** 3
    xs = [i / _CURVE_SAMPLES for i in range(_CURVE_SAMPLES + 1)]
    ys = [phi(x, f.a, f.b) * lam3 for x in xs]
    ymax = max(ys) or 1.0
    w, h = PANEL_W - 2 * _MARGIN, PANEL_H - 2 * _MARGIN

    def sx(x):
        return _MARGIN + x * w

    def sy(y):
        return top + _MARGIN + h - (y / ymax) * h * 0.95

    pts = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in zip(xs, ys))
    out = [
        f'<g id="edge-{f.edge_id}">',
        f'<text x="{_MARGIN}" y="{top + 24}" font-family="monospace" font-size="14">'
        f'edge {f.edge_id}: a={f.a:.6f} b={f.b:.6f} scale={f.scale:.6f}</text>',
        f'<line x1="{sx(0):.2f}" y1="{sy(0):.2f}" x2="{sx(1):.2f}" y2="{sy(0):.2f}" '
        'stroke="#888" stroke-width="1"/>',
        f'<polyline fill="none" stroke="#222" stroke-width="2" points="{pts}"/>',
    ]
    out += [_marker(cp.kind, sx(cp.x), sy(cp.phi_value)) for cp in edge.critical_points]
    out.append("</g>")
    return out


def render_svg(report: CensusReport) -> str:
    height = PANEL_H * len(report.per_edge)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{PANEL_W}" '
        f'height="{height}" viewBox="0 0 {PANEL_W} {height}">',
        f'<rect width="{PANEL_W}" height="{height}" fill="white"/>',
    ]
    for k, e in enumerate(report.per_edge):
        lines += _panel(e, k * PANEL_H)
    lines.append("</svg>")
    return "\n".join(lines) + "\n"

