"""Command-line entry point: ``triprod analyze|profile|isosceles|verify|plot``.

Exit codes: 0 success, 1 verification failure, 2 input error,
3 internal inconsistency.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import census, oracle, report
from .config import DEFAULT, ToleranceConfig
from .errors import DegenerateTriangle, InternalInconsistency, TriprodError
from .geometry import AngleClass, Triangle, make_triangle

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_INCONSISTENT = 0, 1, 2, 3


class InputError(Exception):
    pass


def _parse_tri(text: str) -> list[tuple[float, float]]:
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError as exc:
        raise InputError(f"--tri expects six comma-separated reals: {exc}") from None
    if len(vals) != 6:
        raise InputError(f"--tri expects six comma-separated reals, got {len(vals)}")
    return [(vals[0], vals[1]), (vals[2], vals[3]), (vals[4], vals[5])]


def _load_vertices(path: str) -> list[tuple[float, float]]:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
        verts = [(float(x), float(y)) for x, y in doc["vertices"]]
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise InputError(f"cannot read vertices from {path}: {exc}") from None
    if len(verts) != 3:
        raise InputError(f"{path}: expected 3 vertices, got {len(verts)}")
    return verts


def _triangle(args, cfg: ToleranceConfig) -> Triangle:
    if args.tri is not None:
        verts = _parse_tri(args.tri)
    elif args.infile is not None:
        verts = _load_vertices(args.infile)
    else:
        raise InputError("a triangle is required: pass --tri or --in")
    return make_triangle(*verts, cfg=cfg)


def _config(args) -> ToleranceConfig:
    return DEFAULT.with_overrides(
        root_residual_tol=args.tol_root, cluster_tol=args.tol_cluster,
        classify_offset_cap=args.tol_offset, right_angle_tol=args.tol_right,
        isosceles_rel_tol=args.tol_isosceles, threshold_band=args.tol_threshold,
        grid_n=args.grid_n)


def _add_triangle_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--tri", metavar="x1,y1,x2,y2,x3,y3", help="vertices inline")
    g.add_argument("--in", dest="infile", metavar="PATH",
                   help='JSON file {"vertices": [[x,y],[x,y],[x,y]]}')


def _add_tolerance_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol-root", type=float, help="root residual tolerance")
    p.add_argument("--tol-cluster", type=float, help="root merge distance")
    p.add_argument("--tol-offset", type=float, help="classification probe offset cap")
    p.add_argument("--tol-right", type=float, help="right-angle cosine tolerance")
    p.add_argument("--tol-isosceles", type=float, help="relative edge-length tolerance")
    p.add_argument("--tol-threshold", type=float, help="isosceles threshold band")
    p.add_argument("--grid-n", type=int, help="bracketing grid size")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="triprod",
        description="Critical points of |pA||pB||pC| on the boundary of a triangle.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full census as JSON")
    _add_triangle_flags(p)
    _add_tolerance_flags(p)

    p = sub.add_parser("profile", help="CSV of phi along one edge")
    _add_triangle_flags(p)
    _add_tolerance_flags(p)
    p.add_argument("--edge", type=int, choices=(0, 1, 2), default=0)
    p.add_argument("--samples", type=int, default=100)

    p = sub.add_parser("isosceles", help="case (i)/(ii) for an isosceles triangle")
    p.add_argument("--base", type=float, default=1.0)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--height", type=float, help="apex height")
    g.add_argument("--apex-angle", type=float, help="apex angle in degrees")
    _add_tolerance_flags(p)

    p = sub.add_parser("verify", help="cross-check the census against brute-force oracles")
    _add_triangle_flags(p)
    _add_tolerance_flags(p)
    p.add_argument("--edge-n", type=int, default=1_000_000)
    p.add_argument("--interior-n", type=int, default=800)
    p.add_argument("--points", type=int, default=5, help="random Laplacian probe points")

    p = sub.add_parser("plot", help="SVG of the three edge profiles")
    _add_triangle_flags(p)
    _add_tolerance_flags(p)
    p.add_argument("--out", required=True, metavar="PATH")
    return parser


def _write(text: str) -> None:
    sys.stdout.write(text)


def cmd_analyze(args, cfg: ToleranceConfig) -> int:
    t = _triangle(args, cfg)
    rep = census.analyze(t, cfg)
    _write(report.render_json(rep, cfg))
    if rep.diagnostics:
        for d in rep.diagnostics:
            print(f"triprod: internal inconsistency: {d}", file=sys.stderr)
        return EXIT_INCONSISTENT
    return EXIT_OK


def cmd_profile(args, cfg: ToleranceConfig) -> int:
    if args.samples < 2:
        raise InputError(f"--samples must be at least 2, got {args.samples}")
    t = _triangle(args, cfg)
    rep = census.analyze(t, cfg)
    _write(report.profile_csv(rep.per_edge[args.edge], args.samples))
    return EXIT_OK


def cmd_isosceles(args, cfg: ToleranceConfig) -> int:
    if not args.base > 0:
        raise InputError("--base must be positive")
    if args.height is not None:
        if not args.height > 0:
            raise InputError("--height must be positive")
        b = args.height / args.base
    else:
        if not 0 < args.apex_angle < 180:
            raise InputError("--apex-angle must lie in (0, 180) degrees")
        b = 0.5 / math.tan(math.radians(args.apex_angle) / 2)
    case = census.isosceles_case_for_height(b, cfg)
    doc = {
        "case": case.value,
        "normalized_height": b,
        "base_angle_deg": math.degrees(census.base_angle_for_height(b)),
        "threshold_height": census.ISOSCELES_THRESHOLD_HEIGHT,
        "threshold_base_angle_deg": math.degrees(census.ISOSCELES_THRESHOLD_BASE_ANGLE),
        "base_critical_points": census.isosceles_base_critical_points(b),
    }
    _write(report.dumps(doc) + "\n")
    return EXIT_OK


def _seed() -> int:
    raw = os.environ.get("TRIPROD_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"TRIPROD_SEED must be an integer, got {raw!r}") from None


def cmd_verify(args, cfg: ToleranceConfig) -> int:
    if args.edge_n < oracle.MIN_COMPARE_SCAN:
        raise InputError(f"--edge-n {args.edge_n}: resolution below minimum "
                         f"{oracle.MIN_COMPARE_SCAN}")
    if args.interior_n < oracle.MIN_INTERIOR_SCAN:
        raise InputError(f"--interior-n {args.interior_n}: resolution below minimum "
                         f"{oracle.MIN_INTERIOR_SCAN}")
    t = _triangle(args, cfg)
    rep = census.analyze(t, cfg)
    checks: list[tuple[str, bool, str]] = []

    checks.append(("census consistency", not rep.diagnostics,
                   "; ".join(rep.diagnostics) or f"{rep.theorem_case.value}"))

    verdict = oracle.compare_census(rep, oracle.scan_report_edges(rep, args.edge_n))
    for ev in verdict.edges:
        checks.append((f"edge {ev.edge_id} grid scan", ev.passed,
                       f"{len(ev.analytic_xs)} analytic / {len(ev.scan_xs)} scan, "
                       f"max dev {ev.max_deviation:.2e} (tol {ev.tolerance:.1e})"))

    scan = oracle.grid_scan_interior(t, args.interior_n)
    checks.append(("boundary maximum", scan.interior_max <= scan.boundary_max + 1e-6,
                   f"interior {scan.interior_max:.10g} <= boundary {scan.boundary_max:.10g}"))

    rng = np.random.default_rng(_seed())
    ratios = []
    for _ in range(args.points):
        p = oracle.random_interior_point(rng, t)
        try:
            ratios.append(oracle.richardson_ratio(t, p))
        except TriprodError:
            continue
    ok = bool(ratios) and all(3.0 <= r <= 5.0 for r in ratios)
    detail = (f"{len(ratios)} points, ratio range [{min(ratios):.4f}, {max(ratios):.4f}]"
              if ratios else "no point cleared the stencil margin")
    checks.append(("harmonicity of ln phi", ok, detail))

    obtuse = rep.angles.obtuse_vertex
    if rep.angle_class is AngleClass.OBTUSE and obtuse is not None:
        adjacent = [e for e in rep.per_edge if e.edge_id != obtuse]
        counts = [len(e.critical_points) for e in adjacent]
        checks.append(("obtuse-adjacent edges", counts == [1, 1],
                       "obtuse-adjacent edges: 1 critical point each" if counts == [1, 1]
                       else f"obtuse-adjacent edges carry {counts} critical points"))

    for name, passed, detail in checks:
        print(f"{'PASS' if passed else 'FAIL'}  {name:<24} {detail}")
    return EXIT_OK if all(c[1] for c in checks) else EXIT_VERIFY


def cmd_plot(args, cfg: ToleranceConfig) -> int:
    t = _triangle(args, cfg)
    rep = census.analyze(t, cfg)
    try:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(report.render_svg(rep))
    except OSError as exc:
        raise InputError(f"cannot write {args.out}: {exc}") from None
    return EXIT_OK


COMMANDS = {
    "analyze": cmd_analyze,
    "profile": cmd_profile,
    "isosceles": cmd_isosceles,
    "verify": cmd_verify,
    "plot": cmd_plot,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        return COMMANDS[args.command](args, cfg)
    except DegenerateTriangle as exc:
        print(f"triprod: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InputError, ValueError) as exc:
        print(f"triprod: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InternalInconsistency as exc:
        print(f"triprod: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except TriprodError as exc:
        print(f"triprod: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT


if __name__ == "__main__":
    sys.exit(main())
