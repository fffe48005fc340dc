"""Command-line interface.

Exit codes: 0 success, 2 invalid flags, 3 oracle disagrees with the analytic
class, 4 output not writable.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np

from .classify import classify_curve
from .curve import (
    ControlPolygon,
    CurveInstance,
    ShapeParams,
    SingularVelocityError,
    Vec2,
    evaluate_many,
    signed_curvature,
)
from .degenerate import DegenerateConfig, degenerate_classify
from .diagram import (
    GALLERY_EXAMPLES,
    CurveRenderOptions,
    DiagramSpec,
    classify_grid,
    export_grid_csv,
    render_curve_svg,
    render_shape_diagram,
)
from .oracle import oracle_classify

EXIT_OK, EXIT_USAGE, EXIT_DISAGREE, EXIT_UNWRITABLE = 0, 2, 3, 4

GALLERY_GEOMETRY = ((0.0, 0.0), (1.0, 1.2), (2.0, 0.0))


class UsageError(Exception):
    pass


def dumps(obj) -> str:
    """JSON with every float written to 17 significant digits; NaN/inf become null."""
    if isinstance(obj, bool) or obj is None:
        return "true" if obj is True else "false" if obj is False else "null"
    if isinstance(obj, (float, np.floating)):
        return format(float(obj), ".17g") if math.isfinite(obj) else "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{dumps(str(k))}: {dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _finite(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"not finite: {text!r}")
    return v


def _points(text: str) -> list[Vec2]:
    try:
        pts = [Vec2(*(float(c) for c in p.split(","))) for p in text.split(";") if p.strip()]
    except (TypeError, ValueError):
        raise argparse.ArgumentTypeError(f"malformed points: {text!r}")
    return pts


def _range(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed range: {text!r}")
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise argparse.ArgumentTypeError(f"range must satisfy lo < hi: {text!r}")
    return lo, hi


def _polygon(points: list[Vec2]) -> ControlPolygon:
    if len(points) == 3:
        return ControlPolygon.h_form(*points)
    if len(points) == 4:
        return ControlPolygon(*points)
    raise UsageError("expected 3 (H-form) or 4 control points")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="altcurve", description="Shape analysis of cubic Alternative curves.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="analytic shape class from (alpha, beta)")
    p.add_argument("--alpha", type=_finite, required=True)
    p.add_argument("--beta", type=_finite, required=True)
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--oracle", action="store_true", help="cross-check with the numeric oracle")
    p.add_argument("--geometry", type=_points, default=None, metavar="x0,y0;x1,y1;x2,y2",
                   help="P0; H; P3 (default P0=(0,0), T0=(1,0), T1=(0,1))")

    p = sub.add_parser("eval", help="sample points and signed curvature")
    p.add_argument("--alpha", type=_finite, required=True)
    p.add_argument("--beta", type=_finite, required=True)
    p.add_argument("--points", type=_points, required=True, metavar="x0,y0;...")
    p.add_argument("--samples", type=int, default=101)
    p.add_argument("--csv", action="store_true", help="CSV t,x,y,kappa instead of JSON")

    p = sub.add_parser("diagram", help="shape diagram as SVG (and CSV)")
    p.add_argument("--range", type=_range, default=(-6.0, 10.0), metavar="lo,hi",
                   help="square parameter window; write --range=-6,10 when lo is negative")
    p.add_argument("--resolution", type=int, default=400)
    p.add_argument("--out", required=True, help="SVG output path")
    p.add_argument("--csv", default=None, help="optional CSV output path")

    p = sub.add_parser("examples", help="gallery of nine representative curves")
    p.add_argument("--outdir", required=True)

    p = sub.add_parser("degenerate", help="parallel end tangents: a = mu*alpha, b = nu*beta, offset m")
    p.add_argument("--a", type=_finite, required=True)
    p.add_argument("--b", type=_finite, required=True)
    p.add_argument("--m", type=_finite, required=True)
    p.add_argument("--json", action="store_true")
    return parser


def _emit(data: dict, as_json: bool, out) -> None:
    if as_json:
        out.write(dumps(data) + "\n")
    else:
        for k, v in data.items():
            out.write(f"{k}: {v}\n")


def cmd_classify(args, out) -> int:
    params = ShapeParams(args.alpha, args.beta)
    if args.geometry is None:
        polygon = ControlPolygon.from_tangents()
    elif len(args.geometry) == 3:
        polygon = ControlPolygon.h_form(*args.geometry)
    else:
        raise UsageError("--geometry takes exactly three points: P0; H; P3")
    curve = CurveInstance(polygon, params)
    report = classify_curve(curve)
    data = report.to_dict()
    code = EXIT_OK
    if args.oracle:
        oc = oracle_classify(curve)
        data["oracle_class"] = oc.name
        if oc.kind is not report.kind:
            code = EXIT_DISAGREE
    _emit(data, args.json, out)
    return code


def cmd_eval(args, out) -> int:
    if args.samples < 2:
        raise UsageError("--samples must be >= 2")
    curve = CurveInstance(_polygon(args.points), ShapeParams(args.alpha, args.beta))
    ts = np.linspace(0.0, 1.0, args.samples)
    pts = evaluate_many(curve, ts)
    # Endpoints are exact by interpolation; keep them free of matrix rounding.
    pts[0] = curve.polygon.p0.as_array()
    pts[-1] = curve.polygon.p3.as_array()
    kappa = []
    for t in ts:
        try:
            kappa.append(signed_curvature(curve, float(t)))
        except SingularVelocityError:
            kappa.append(float("nan"))
    if args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "x", "y", "kappa"])
        for t, (x, y), k in zip(ts, pts, kappa):
            w.writerow([format(t, ".17g"), format(x, ".17g"), format(y, ".17g"), format(k, ".17g")])
        out.write(buf.getvalue())
    else:
        out.write(dumps({"t": list(ts), "x": list(pts[:, 0]), "y": list(pts[:, 1]), "kappa": kappa}) + "\n")
    return EXIT_OK


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def cmd_diagram(args, out) -> int:
    try:
        spec = DiagramSpec(alpha_range=args.range, beta_range=args.range, resolution=args.resolution)
    except ValueError as exc:
        raise UsageError(str(exc))
    grid = classify_grid(spec)
    try:
        _write(args.out, render_shape_diagram(grid))
        if args.csv:
            _write(args.csv, export_grid_csv(grid))
    except OSError as exc:
        print(f"altcurve: cannot write output: {exc}", file=sys.stderr)
        return EXIT_UNWRITABLE
    out.write(f"wrote {args.out}" + (f" and {args.csv}" if args.csv else "") + "\n")
    return EXIT_OK


def gallery_svgs() -> dict[str, str]:
    """Panel letter -> SVG text for the nine representative curves."""
    p0, h, p3 = GALLERY_GEOMETRY
    svgs = {}
    for ex in GALLERY_EXAMPLES:
        curve = CurveInstance(ControlPolygon.h_form(p0, h, p3), ShapeParams(ex.alpha, ex.beta))
        report = classify_curve(curve)
        opts = CurveRenderOptions(
            title=f"({ex.panel}) alpha={ex.alpha:g} beta={ex.beta:g}: region {ex.region}, {report.shape.name}",
            metadata={"panel": ex.panel, "expected_region": ex.region, "expected_class": ex.kind.value},
        )
        svgs[ex.panel] = render_curve_svg(curve, report, opts)
    return svgs


def cmd_examples(args, out) -> int:
    try:
        os.makedirs(args.outdir, exist_ok=True)
        for panel, svg in gallery_svgs().items():
            _write(os.path.join(args.outdir, f"{panel}.svg"), svg)
    except OSError as exc:
        print(f"altcurve: cannot write output: {exc}", file=sys.stderr)
        return EXIT_UNWRITABLE
    out.write(f"wrote 9 files to {args.outdir}\n")
    return EXIT_OK


def cmd_degenerate(args, out) -> int:
    if args.m == 0.0:
        raise UsageError("--m must be nonzero")
    if args.a * args.b == 0.0:
        raise UsageError("--a and --b must be nonzero")
    report = degenerate_classify(DegenerateConfig.from_abm(args.a, args.b, args.m))
    _emit(report.to_dict(), args.json, out)
    return EXIT_OK


COMMANDS = {
    "classify": cmd_classify,
    "eval": cmd_eval,
    "diagram": cmd_diagram,
    "examples": cmd_examples,
    "degenerate": cmd_degenerate,
}


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, ValueError) as exc:
        print(f"altcurve {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
