"""Shape diagrams over the (alpha, beta) plane and SVG drawings of single curves."""

from __future__ import annotations

import csv
import io
import json
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field

import numpy as np

from .classify import DEFAULT_TOLERANCES, ClassificationReport, Tolerances, class_codes, classify_curve
from .curve import CurveInstance, evaluate_many
from .shapes import LEGEND, ShapeKind

__all__ = [
    "DiagramSpec",
    "ClassGrid",
    "CurveRenderOptions",
    "GalleryExample",
    "GALLERY_EXAMPLES",
    "KIND_COLORS",
    "cell_centers",
    "classify_grid",
    "class_areas",
    "render_shape_diagram",
    "render_curve_svg",
    "export_grid_csv",
    "points_on_path",
]

_NUM = re.compile(r"-?\d+(?:\.\d+)?(?:e-?\d+)?")

KIND_COLORS = {
    ShapeKind.CONVEX: "#d9e8f5",
    ShapeKind.SINGLE_INFLECTION: "#fdd49e",
    ShapeKind.DOUBLE_INFLECTION: "#f4a582",
    ShapeKind.CUSP: "#000000",
    ShapeKind.LOOP: "#b8e186",
    ShapeKind.QUADRATIC: "#000000",
    ShapeKind.ENDPOINT_DEGENERATE: "#bdbdbd",
    ShapeKind.COLLINEAR: "#737373",
}


@dataclass(frozen=True)
class DiagramSpec:
    alpha_range: tuple[float, float] = (-6.0, 10.0)
    beta_range: tuple[float, float] = (-6.0, 10.0)
    resolution: int = 400
    axes: bool = True
    lines_3: bool = True
    curve_I: bool = True
    parabolas: bool = True

    def __post_init__(self):
        if self.resolution < 16:
            raise ValueError("resolution must be >= 16")
        for lo, hi in (self.alpha_range, self.beta_range):
            if not lo < hi:
                raise ValueError("ranges must be nondegenerate intervals")


@dataclass(frozen=True)
class ClassGrid:
    """Row-major class codes: row ``i`` is ``beta_i``, column ``j`` is ``alpha_j``."""

    spec: DiagramSpec
    cells: np.ndarray

    def __post_init__(self):
        n = self.spec.resolution
        if self.cells.shape != (n * n,):
            raise ValueError("cells must hold resolution**2 codes")
        if self.cells.size and (self.cells.min() < 0 or self.cells.max() >= len(LEGEND)):
            raise ValueError("unknown class code")

    def as_matrix(self) -> np.ndarray:
        n = self.spec.resolution
        return self.cells.reshape(n, n)


@dataclass(frozen=True)
class GalleryExample:
    panel: str
    region: str
    alpha: float
    beta: float
    kind: ShapeKind


# One representative point per labelled region, in gallery panel order.
GALLERY_EXAMPLES: tuple[GalleryExample, ...] = (
    GalleryExample("a", "C", 1.5, 1.5, ShapeKind.CONVEX),
    GalleryExample("b", "D", 4.0, 4.0, ShapeKind.DOUBLE_INFLECTION),
    GalleryExample("c", "I-curve", 6.0, 6.0, ShapeKind.CUSP),
    GalleryExample("d", "E", 7.0, 7.0, ShapeKind.LOOP),
    GalleryExample("e", "F", 1.5, 6.0, ShapeKind.SINGLE_INFLECTION),
    GalleryExample("f", "V", -2.0, 8.0, ShapeKind.CONVEX),
    GalleryExample("g", "U", -4.0, 3.75, ShapeKind.LOOP),
    GalleryExample("h", "S", -3.0, 1.5, ShapeKind.SINGLE_INFLECTION),
    GalleryExample("i", "R", -3.0, -3.0, ShapeKind.CONVEX),
)


def _centers(lo: float, hi: float, n: int) -> np.ndarray:
    return lo + (np.arange(n) + 0.5) * ((hi - lo) / n)


def cell_centers(spec: DiagramSpec) -> tuple[np.ndarray, np.ndarray]:
    n = spec.resolution
    return _centers(*spec.alpha_range, n), _centers(*spec.beta_range, n)


def classify_grid(spec: DiagramSpec, tolerances: Tolerances = DEFAULT_TOLERANCES) -> ClassGrid:
    alphas, betas = cell_centers(spec)
    aa, bb = np.meshgrid(alphas, betas)
    return ClassGrid(spec, class_codes(aa, bb, tolerances).ravel())


def class_areas(grid: ClassGrid) -> dict[ShapeKind, float]:
    """Fraction of cells per class."""
    counts = np.bincount(grid.cells, minlength=len(LEGEND))
    return {kind: counts[kind.code] / grid.cells.size for kind in LEGEND}


def _f(v: float) -> str:
    s = f"{v:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _polylines(xs: np.ndarray, ys: np.ndarray, spec: DiagramSpec) -> list[str]:
    """Path data for the in-range runs of a sampled curve (SVG y points down)."""
    (a0, a1), (b0, b1) = spec.alpha_range, spec.beta_range
    inside = np.isfinite(xs) & np.isfinite(ys) & (xs >= a0) & (xs <= a1) & (ys >= b0) & (ys <= b1)
    paths, run = [], []
    for x, y, ok in zip(xs, ys, inside):
        if ok:
            run.append(f"{_f(x)} {_f(-y)}")
        elif run:
            if len(run) > 1:
                paths.append("M" + " L".join(run))
            run = []
    if len(run) > 1:
        paths.append("M" + " L".join(run))
    return paths


def _overlay_paths(spec: DiagramSpec, n: int = 8001) -> dict[str, list[str]]:
    (a0, a1), (b0, b1) = spec.alpha_range, spec.beta_range
    out: dict[str, list[str]] = {}
    if spec.curve_I:
        # (alpha - 4)(beta - 4) = 4, one branch on each side of beta = 4.
        paths = []
        for lo, hi in ((b0, min(b1, 4.0)), (max(b0, 4.0), b1)):
            if lo >= hi:
                continue
            beta = np.linspace(lo, hi, n)
            beta = beta[beta != 4.0]
            paths += _polylines(4.0 * (beta - 3.0) / (beta - 4.0), beta, spec)
        out["I"] = paths
    if spec.parabolas:
        beta = np.linspace(b0, b1, n)
        out["L1"] = _polylines(3.0 * beta - beta * beta, beta, spec)
        alpha = np.linspace(a0, a1, n)
        out["L2"] = _polylines(alpha, 3.0 * alpha - alpha * alpha, spec)
    return out


def render_shape_diagram(grid: ClassGrid, spec: DiagramSpec | None = None, width_px: int = 800) -> str:
    """SVG 1.1 shape diagram in parameter coordinates (x = alpha, y = -beta)."""
    spec = grid.spec if spec is None else spec
    if spec != grid.spec:
        raise ValueError("grid was computed for a different spec")
    (a0, a1), (b0, b1) = spec.alpha_range, spec.beta_range
    n = spec.resolution
    w, h = (a1 - a0) / n, (b1 - b0) / n
    span = max(a1 - a0, b1 - b0)
    stroke = span / 400.0
    height_px = int(round(width_px * (b1 - b0) / (a1 - a0)))
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width_px}" height="{height_px}" '
        f'viewBox="{_f(a0)} {_f(-b1)} {_f(a1 - a0)} {_f(b1 - b0)}">',
        "<title>Shape diagram over (alpha, beta)</title>",
        '<g id="cells" shape-rendering="crispEdges" stroke="none">',
    ]
    m = grid.as_matrix()
    for i in range(n):
        row = m[i]
        y = -(b0 + (i + 1) * h)
        starts = np.flatnonzero(np.concatenate([[True], row[1:] != row[:-1]]))
        ends = np.concatenate([starts[1:], [n]])
        for s, e in zip(starts, ends):
            color = KIND_COLORS[LEGEND[row[s]]]
            out.append(
                f'<rect x="{_f(a0 + s * w)}" y="{_f(y)}" width="{_f((e - s) * w)}" height="{_f(h)}" fill="{color}"/>'
            )
    out.append("</g>")

    out.append(f'<g id="overlays" fill="none" stroke-width="{_f(stroke)}">')
    if spec.axes:
        if a0 <= 0.0 <= a1:
            out.append(f'<path id="axis-beta" stroke="#000000" d="M0 {_f(-b1)} L0 {_f(-b0)}"/>')
        if b0 <= 0.0 <= b1:
            out.append(f'<path id="axis-alpha" stroke="#000000" d="M{_f(a0)} 0 L{_f(a1)} 0"/>')
    if spec.lines_3:
        dash = f'stroke-dasharray="{_f(4 * stroke)} {_f(3 * stroke)}"'
        if a0 <= 3.0 <= a1:
            out.append(f'<path id="alpha-3" stroke="#404040" {dash} d="M3 {_f(-b1)} L3 {_f(-b0)}"/>')
        if b0 <= 3.0 <= b1:
            out.append(f'<path id="beta-3" stroke="#404040" {dash} d="M{_f(a0)} -3 L{_f(a1)} -3"/>')
    colors = {"I": "#000000", "L1": "#1b7837", "L2": "#762a83"}
    for name, paths in _overlay_paths(spec).items():
        for k, d in enumerate(paths):
            out.append(f'<path id="{name}-{k}" class="{name}" stroke="{colors[name]}" d="{d}"/>')
    out.append("</g>")

    fs = span / 45.0
    out.append(f'<g id="region-labels" font-family="sans-serif" font-size="{_f(fs)}" text-anchor="middle">')
    for ex in GALLERY_EXAMPLES:
        if a0 <= ex.alpha <= a1 and b0 <= ex.beta <= b1:
            out.append(f'<text x="{_f(ex.alpha)}" y="{_f(-ex.beta)}">{ex.region} ({ex.panel})</text>')
    out.append("</g>")

    present = sorted(set(int(c) for c in np.unique(grid.cells)))
    lx, ly = a0 + fs * 0.5, -b1 + fs * 0.5
    out.append(f'<g id="legend" font-family="sans-serif" font-size="{_f(fs)}">')
    out.append(
        f'<rect x="{_f(lx)}" y="{_f(ly)}" width="{_f(fs * 11)}" height="{_f(fs * (1.5 * len(present) + 0.5))}" '
        f'fill="#ffffff" fill-opacity="0.85" stroke="#000000" stroke-width="{_f(stroke)}"/>'
    )
    for k, code in enumerate(present):
        kind = LEGEND[code]
        y = ly + fs * (0.5 + 1.5 * k)
        out.append(f'<rect x="{_f(lx + fs * 0.5)}" y="{_f(y)}" width="{_f(fs)}" height="{_f(fs)}" fill="{KIND_COLORS[kind]}"/>')
        out.append(f'<text x="{_f(lx + fs * 2)}" y="{_f(y + fs * 0.9)}">{code} {kind.value}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


@dataclass(frozen=True)
class CurveRenderOptions:
    samples: int = 512
    width_px: int = 400
    padding: float = 0.08
    title: str | None = None
    metadata: dict = field(default_factory=dict)
    curve_color: str = "#08519c"
    polygon_color: str = "#969696"
    marker_color: str = "#cb181d"


def render_curve_svg(curve: CurveInstance, report: ClassificationReport | None = None,
                     options: CurveRenderOptions | None = None) -> str:
    """Curve, dashed control polygon and feature markers as an SVG document.

    Inflections get circles, a cusp a cross and a loop's double point a
    diamond.  The classification travels along as JSON in ``<metadata>``.
    """
    options = options or CurveRenderOptions()
    report = report or classify_curve(curve)
    ts = np.linspace(0.0, 1.0, max(options.samples, 256))
    pts = evaluate_many(curve, ts)
    poly = curve.polygon.as_array()
    allp = np.vstack([pts, poly])
    lo, hi = allp.min(axis=0), allp.max(axis=0)
    span = float(max(hi[0] - lo[0], hi[1] - lo[1], 1e-12))
    pad = options.padding * span
    x0, y0 = lo[0] - pad, -(hi[1] + pad)
    vw, vh = hi[0] - lo[0] + 2 * pad, hi[1] - lo[1] + 2 * pad
    height_px = int(round(options.width_px * vh / vw))
    r = span / 60.0

    meta = dict(report.to_dict())
    meta.update(options.metadata)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{options.width_px}" height="{height_px}" '
        f'viewBox="{_f(x0)} {_f(y0)} {_f(vw)} {_f(vh)}">',
        f"<title>{options.title or 'alpha=%s beta=%s: %s' % (_f(report.params.alpha), _f(report.params.beta), report.shape.name)}</title>",
        f"<metadata>{json.dumps(meta, sort_keys=True)}</metadata>",
    ]
    sw = span / 250.0
    d_poly = "M" + " L".join(f"{_f(x)} {_f(-y)}" for x, y in poly)
    out.append(
        f'<path id="polygon" d="{d_poly}" fill="none" stroke="{options.polygon_color}" stroke-width="{_f(sw)}" '
        f'stroke-dasharray="{_f(4 * sw)} {_f(3 * sw)}"/>'
    )
    d_curve = "M" + " L".join(f"{_f(x)} {_f(-y)}" for x, y in pts)
    out.append(f'<path id="curve" d="{d_curve}" fill="none" stroke="{options.curve_color}" stroke-width="{_f(2 * sw)}"/>')

    shape = report.shape
    mc = options.marker_color
    markers = []
    if shape.kind in (ShapeKind.SINGLE_INFLECTION, ShapeKind.DOUBLE_INFLECTION):
        for x, y in evaluate_many(curve, shape.t):
            markers.append(
                f'<circle class="inflection" cx="{_f(x)}" cy="{_f(-y)}" r="{_f(r)}" fill="none" stroke="{mc}" stroke-width="{_f(sw)}"/>'
            )
    elif shape.kind is ShapeKind.CUSP:
        (x, y), = evaluate_many(curve, shape.t)
        markers.append(
            f'<path class="cusp" d="M{_f(x - r)} {_f(-y - r)} L{_f(x + r)} {_f(-y + r)} M{_f(x - r)} {_f(-y + r)} '
            f'L{_f(x + r)} {_f(-y - r)}" stroke="{mc}" stroke-width="{_f(sw)}"/>'
        )
    elif shape.kind is ShapeKind.LOOP:
        (x, y), = evaluate_many(curve, shape.t[:1])
        markers.append(
            f'<path class="loop" d="M{_f(x)} {_f(-y - r)} L{_f(x + r)} {_f(-y)} L{_f(x)} {_f(-y + r)} '
            f'L{_f(x - r)} {_f(-y)} Z" fill="none" stroke="{mc}" stroke-width="{_f(sw)}"/>'
        )
    out.append('<g id="markers">')
    out.extend(markers)
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def export_grid_csv(grid: ClassGrid, tolerances: Tolerances = DEFAULT_TOLERANCES) -> str:
    """One ``alpha,beta,class_code,class_name,I`` row per cell, row-major."""
    alphas, betas = cell_centers(grid.spec)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["alpha", "beta", "class_code", "class_name", "I"])
    m = grid.as_matrix()
    for i, b in enumerate(betas):
        for j, a in enumerate(alphas):
            code = int(m[i, j])
            I = 12.0 - 4.0 * (a + b) + a * b
            w.writerow([repr(float(a)), repr(float(b)), code, LEGEND[code].value, repr(float(I))])
    return buf.getvalue()


def points_on_path(svg: str, path_class: str) -> list[np.ndarray]:
    """Vertices of every ``<path class=...>`` polyline in ``svg``, in SVG coordinates."""
    root = ET.fromstring(svg.encode("utf-8"))
    out: list[np.ndarray] = []
    for el in root.iter("{http://www.w3.org/2000/svg}path"):
        if el.get("class") == path_class:
            nums = [float(v) for v in _NUM.findall(el.get("d"))]
            out.append(np.array(nums).reshape(-1, 2))
    return out
