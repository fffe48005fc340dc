"""Brute-force shape classification.

The oracle only queries positions and derivatives of the curve (through the
general basis-derivative path, never the H-form closed forms) and knows
nothing of the discriminant, ``Phi`` or the loop-root formula.  It exists to
check :mod:`altcurve.classify` independently.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.optimize import minimize_scalar

from .curve import CurveInstance, derivatives_many, evaluate_many
from .shapes import ShapeClass, ShapeKind

__all__ = [
    "OracleSettings",
    "InflectionScan",
    "SelfIntersection",
    "oracle_inflection_count",
    "oracle_cusp",
    "oracle_self_intersection",
    "oracle_min_speed",
    "oracle_classify",
]


@dataclass(frozen=True)
class OracleSettings:
    samples: int = 4096
    curvature_eps: float = 1e-10
    cusp_velocity_tol: float = 1e-7
    coincidence_tol: float = 1e-9
    interior_margin: float = 1e-4

    def __post_init__(self):
        if self.samples < 256:
            raise ValueError("samples must be >= 256")
        for name in ("curvature_eps", "cusp_velocity_tol", "coincidence_tol", "interior_margin"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be positive")


DEFAULT_SETTINGS = OracleSettings()


class InflectionScan(NamedTuple):
    count: int
    t: tuple[float, ...]
    notes: tuple[str, ...] = ()


class SelfIntersection(NamedTuple):
    t_p: float
    t_q: float
    residual: float


def _cross(curve: CurveInstance, ts) -> np.ndarray:
    d1 = derivatives_many(curve, ts, 1)
    d2 = derivatives_many(curve, ts, 2)
    return d1[..., 0] * d2[..., 1] - d1[..., 1] * d2[..., 0]


def _interior(settings: OracleSettings) -> np.ndarray:
    m = settings.interior_margin
    return np.linspace(m, 1.0 - m, settings.samples)


def _zero_curvature_everywhere(curve: CurveInstance, settings: OracleSettings) -> bool:
    ts = np.linspace(0.0, 1.0, settings.samples)
    c = _cross(curve, ts)
    d1 = np.linalg.norm(derivatives_many(curve, ts, 1), axis=1)
    d2 = np.linalg.norm(derivatives_many(curve, ts, 2), axis=1)
    scale = d1.max() * d2.max()
    return scale == 0.0 or np.abs(c).max() <= settings.curvature_eps * scale


def oracle_inflection_count(curve: CurveInstance, settings: OracleSettings = DEFAULT_SETTINGS) -> InflectionScan:
    """Count sign changes of ``Z' x Z''`` in the interior, bisected to 1e-12."""
    if _zero_curvature_everywhere(curve, settings):
        return InflectionScan(0, (), ("zero curvature everywhere",))
    ts = _interior(settings)
    c = _cross(curve, ts)
    scale = np.abs(c).max()
    keep = np.abs(c) > settings.curvature_eps * scale
    idx = np.flatnonzero(keep)
    signs = np.sign(c[idx])
    flips = np.flatnonzero(signs[1:] != signs[:-1])
    roots = []
    for k in flips:
        lo, hi = ts[idx[k]], ts[idx[k + 1]]
        s_lo = signs[k]
        while hi - lo > 1e-12:
            mid = 0.5 * (lo + hi)
            v = _cross(curve, np.array([mid]))[0]
            if v == 0.0:
                lo = hi = mid
                break
            if np.sign(v) == s_lo:
                lo = mid
            else:
                hi = mid
        roots.append(0.5 * (lo + hi))
    return InflectionScan(len(roots), tuple(roots))


def _speed_sq(curve: CurveInstance, t: float) -> float:
    v = derivatives_many(curve, np.array([t]), 1)[0]
    return float(v @ v)


def oracle_min_speed(curve: CurveInstance, settings: OracleSettings = DEFAULT_SETTINGS) -> tuple[float, float]:
    """``(t, |Z'(t)|)`` at the refined global minimum of the speed on [0, 1]."""
    ts = np.linspace(0.0, 1.0, settings.samples)
    d1 = derivatives_many(curve, ts, 1)
    sp = (d1**2).sum(axis=1)
    i = int(np.argmin(sp))
    lo, hi = ts[max(i - 1, 0)], ts[min(i + 1, ts.size - 1)]
    res = minimize_scalar(lambda t: _speed_sq(curve, t), bounds=(lo, hi), method="bounded",
                          options={"xatol": 1e-13})
    t = float(res.x) if res.fun < sp[i] else float(ts[i])
    return t, float(np.sqrt(min(res.fun, sp[i])))


def oracle_cusp(curve: CurveInstance, settings: OracleSettings = DEFAULT_SETTINGS) -> float | None:
    """Interior parameter where the velocity vanishes, if any.

    Local minima of ``|Z'|^2`` on a dense interior grid are refined by
    bounded Brent iteration (successive parabolic interpolation); a minimum
    at or below ``cusp_velocity_tol * diameter`` is a cusp.
    """
    ts = _interior(settings)
    d1 = derivatives_many(curve, ts, 1)
    sp = (d1**2).sum(axis=1)
    tol = settings.cusp_velocity_tol * curve.diameter()
    interior = np.flatnonzero((sp[1:-1] <= sp[:-2]) & (sp[1:-1] <= sp[2:])) + 1
    best = None
    for i in interior:
        res = minimize_scalar(lambda t: _speed_sq(curve, t), bounds=(ts[i - 1], ts[i + 1]),
                              method="bounded", options={"xatol": 1e-13})
        t, v = float(res.x), float(res.fun)
        if sp[i] < v:
            t, v = float(ts[i]), float(sp[i])
        speed = np.sqrt(v)
        if speed <= tol and (best is None or speed < best[1]):
            best = (t, speed)
    return None if best is None else best[0]


# Segment-pair search ---------------------------------------------------------

_LEAF = 32


def _segment_hits(pts: np.ndarray, ia: np.ndarray, ib: np.ndarray):
    """Proper crossings among segment pairs (ia[k], ib[k]); returns (i, j, s, r)."""
    p = pts[ia]
    r = pts[ia + 1] - p
    q = pts[ib]
    s = pts[ib + 1] - q
    denom = r[:, 0] * s[:, 1] - r[:, 1] * s[:, 0]
    qp = q - p
    with np.errstate(divide="ignore", invalid="ignore"):
        ta = (qp[:, 0] * s[:, 1] - qp[:, 1] * s[:, 0]) / denom
        tb = (qp[:, 0] * r[:, 1] - qp[:, 1] * r[:, 0]) / denom
    ok = (denom != 0.0) & (ta >= 0.0) & (ta <= 1.0) & (tb >= 0.0) & (tb <= 1.0)
    return ia[ok], ib[ok], ta[ok], tb[ok]


def _box(pts: np.ndarray, lo: int, hi: int) -> np.ndarray:
    chunk = pts[lo : hi + 1]
    return np.concatenate([chunk.min(axis=0), chunk.max(axis=0)])


def _overlap(b1, b2) -> bool:
    return not (b1[2] < b2[0] or b2[2] < b1[0] or b1[3] < b2[1] or b2[3] < b1[1])


def _candidate_crossings(pts: np.ndarray) -> list[tuple[int, int, float, float]]:
    """Crossings of non-adjacent polyline segments as (i, j, s_i, s_j), i < j.

    A run of segments whose total absolute turning is below pi cannot cross
    itself, which prunes almost all of the search on simple arcs.
    """
    seg = np.diff(pts, axis=0)
    heading = np.arctan2(seg[:, 1], seg[:, 0])
    turn = np.abs((np.diff(heading) + np.pi) % (2.0 * np.pi) - np.pi)
    cum = np.concatenate([[0.0], np.cumsum(turn)])
    nseg = len(seg)
    hits: list[tuple[int, int, float, float]] = []

    def turning(lo, hi):
        # Absolute turning across segments lo .. hi-1.
        return cum[hi - 1] - cum[lo]

    def brute(a0, a1, b0, b1):
        ia, ib = np.meshgrid(np.arange(a0, a1), np.arange(b0, b1), indexing="ij")
        ia, ib = ia.ravel(), ib.ravel()
        keep = ib > ia + 1
        if not keep.any():
            return
        for item in zip(*_segment_hits(pts, ia[keep], ib[keep])):
            hits.append((int(item[0]), int(item[1]), float(item[2]), float(item[3])))

    def pair(a0, a1, b0, b1):
        # Segment ranges [a0, a1) and [b0, b1) with a1 <= b0.
        if turning(a0, b1) < np.pi or not _overlap(_box(pts, a0, a1), _box(pts, b0, b1)):
            return
        if a1 - a0 <= _LEAF and b1 - b0 <= _LEAF:
            brute(a0, a1, b0, b1)
            return
        if a1 - a0 >= b1 - b0:
            am = (a0 + a1) // 2
            pair(a0, am, b0, b1)
            pair(am, a1, b0, b1)
        else:
            bm = (b0 + b1) // 2
            pair(a0, a1, b0, bm)
            pair(a0, a1, bm, b1)

    def single(a0, a1):
        if turning(a0, a1) < np.pi:
            return
        if a1 - a0 <= _LEAF:
            brute(a0, a1, a0, a1)
            return
        m = (a0 + a1) // 2
        single(a0, m)
        single(m, a1)
        pair(a0, m, m, a1)

    single(0, nseg)
    hits.sort()
    return hits


def _newton_pair(curve: CurveInstance, s: float, t: float, tol: float, iters: int = 50):
    """Solve Z(s) = Z(t) by Newton's method; returns (s, t, residual, ok)."""
    for _ in range(iters):
        z = evaluate_many(curve, np.array([s, t]))
        f = z[0] - z[1]
        res = float(np.hypot(*f))
        if res <= tol:
            return s, t, res, True
        d = derivatives_many(curve, np.array([s, t]), 1)
        jac = np.column_stack([d[0], -d[1]])
        try:
            step = np.linalg.solve(jac, -f)
        except np.linalg.LinAlgError:
            return s, t, res, False
        s, t = s + step[0], t + step[1]
        if not (0.0 <= s <= 1.0 and 0.0 <= t <= 1.0):
            return s, t, res, False
    z = evaluate_many(curve, np.array([s, t]))
    return s, t, float(np.hypot(*(z[0] - z[1]))), False


def _bisect_pair(curve: CurveInstance, s0, s1, t0, t1, tol: float, depth: int = 60):
    """Fallback: repeated halving of a crossing segment pair."""
    for _ in range(depth):
        sm, tm = 0.5 * (s0 + s1), 0.5 * (t0 + t1)
        best = None
        for a, b in ((s0, sm), (sm, s1)):
            for c, d in ((t0, tm), (tm, t1)):
                pa, pb, pc, pd = evaluate_many(curve, np.array([a, b, c, d]))
                hit = _segment_hits(np.array([pa, pb, pc, pd]), np.array([0]), np.array([2]))
                if hit[0].size:
                    best = (a, b, c, d)
                    break
            if best:
                break
        if best is None:
            break
        s0, s1, t0, t1 = best
        s, t = 0.5 * (s0 + s1), 0.5 * (t0 + t1)
        z = evaluate_many(curve, np.array([s, t]))
        res = float(np.hypot(*(z[0] - z[1])))
        if res <= tol:
            break
    s, t = 0.5 * (s0 + s1), 0.5 * (t0 + t1)
    z = evaluate_many(curve, np.array([s, t]))
    return s, t, float(np.hypot(*(z[0] - z[1])))


def oracle_self_intersection(curve: CurveInstance,
                             settings: OracleSettings = DEFAULT_SETTINGS) -> SelfIntersection | None:
    """Parameters ``t_p < t_q`` of a self-crossing of the curve, or ``None``.

    Non-adjacent segments of the sampled polyline are tested pairwise (with
    a bounding-box hierarchy to prune), then each crossing is polished by
    two-variable Newton iteration on ``Z(s) - Z(t) = 0``.  Crossings are
    visited in segment-index order and the one with the smallest residual
    wins, which keeps the result deterministic.
    """
    ts = np.linspace(0.0, 1.0, settings.samples)
    pts = evaluate_many(curve, ts)
    diam = curve.diameter()
    tol = settings.coincidence_tol * diam
    best: SelfIntersection | None = None
    for i, j, a, b in _candidate_crossings(pts):
        s0 = ts[i] + a * (ts[i + 1] - ts[i])
        t0 = ts[j] + b * (ts[j + 1] - ts[j])
        s, t, res, ok = _newton_pair(curve, s0, t0, tol)
        if not ok or abs(t - s) <= 2.0 * (ts[1] - ts[0]):
            s, t, res = _bisect_pair(curve, ts[i], ts[i + 1], ts[j], ts[j + 1], tol)
        if s > t:
            s, t = t, s
        cand = SelfIntersection(float(s), float(t), float(res))
        if best is None or cand.residual < best.residual:
            best = cand
    return best


def _cubic_coefficient_numeric(curve: CurveInstance) -> np.ndarray:
    """``t**3`` coefficient from the third forward difference at t = 0, 1/3, 2/3, 1."""
    z = evaluate_many(curve, np.array([0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0]))
    d3 = z[3] - 3.0 * z[2] + 3.0 * z[1] - z[0]
    return d3 * 27.0 / 6.0


def oracle_classify(curve: CurveInstance, settings: OracleSettings = DEFAULT_SETTINGS) -> ShapeClass:
    """Shape class from the detectors, precedence cusp > loop > inflections."""
    diam = curve.diameter()
    if _zero_curvature_everywhere(curve, settings):
        return ShapeClass(ShapeKind.COLLINEAR)
    if np.linalg.norm(_cubic_coefficient_numeric(curve)) <= 1e-9 * diam:
        return ShapeClass(ShapeKind.QUADRATIC)
    ends = derivatives_many(curve, np.array([0.0, 1.0]), 1)
    still = np.linalg.norm(ends, axis=1) <= settings.cusp_velocity_tol * diam
    if still.any():
        which = "both" if still.all() else ("start" if still[0] else "end")
        return ShapeClass(ShapeKind.ENDPOINT_DEGENERATE, endpoint=which)
    t = oracle_cusp(curve, settings)
    if t is not None:
        return ShapeClass(ShapeKind.CUSP, ((1.0 - t) / t,), (t,))
    hit = oracle_self_intersection(curve, settings)
    if hit is not None:
        tp, tq = hit.t_q, hit.t_p
        return ShapeClass(ShapeKind.LOOP, ((1.0 - tp) / tp, (1.0 - tq) / tq), (tp, tq))
    scan = oracle_inflection_count(curve, settings)
    if scan.count == 0:
        return ShapeClass(ShapeKind.CONVEX)
    kinds = {1: ShapeKind.SINGLE_INFLECTION, 2: ShapeKind.DOUBLE_INFLECTION}
    if scan.count not in kinds:
        raise RuntimeError(f"{scan.count} curvature sign changes on a cubic")
    ts = tuple(sorted(scan.t, reverse=True))
    return ShapeClass(kinds[scan.count], tuple((1.0 - t) / t for t in ts), ts)
