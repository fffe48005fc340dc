"""Analytic shape classification of H-form cubic Alternative curves.

Everything here depends on ``(alpha, beta)`` only; the positions of the
control points do not matter as long as the end tangents ``T0`` and ``T1``
are linearly independent.  Roots are bookkept in ``u = (1 - t) / t``, which
turns "inside the segment" into "positive".

Decision order of :func:`classify`:

1. ``alpha == beta == 2``: the curve is a parabola (:attr:`ShapeKind.QUADRATIC`).
2. ``alpha == 0`` or ``beta == 0``: a vanishing end tangent.
3. ``I == 0`` with an interior cusp parameter: cusp.
4. Both loop roots positive: loop.
5. Otherwise the number of positive roots of ``Phi(u)`` gives convex, one or
   two inflections.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .curve import (
    CurveInstance,
    ShapeParams,
    Vec2,
    cross2,
    derivatives_many,
    reparam_u_to_t,
)
from .shapes import ShapeClass, ShapeKind

__all__ = [
    "Tolerances",
    "PhiCoefficients",
    "RootSet",
    "InflectionCount",
    "ClassificationReport",
    "discriminant_I",
    "phi_coefficients",
    "quadratic_roots",
    "inflection_roots",
    "count_inflections",
    "cusp_alpha_for_beta",
    "cusp_parameter",
    "sylvester_quadratic",
    "resultant_check",
    "loop_roots",
    "loop_boundary_values",
    "class_codes",
    "classify",
    "classify_curve",
    "region_label",
    "boundary_distance",
    "REGION_LABELS",
]

REGION_LABELS = ("C", "D", "E", "F", "H", "I-curve", "R", "S", "U", "V")


@dataclass(frozen=True)
class Tolerances:
    geom: float = 1e-9
    identity: float = 1e-12
    discriminant: float = 1e-9

    def tol_I(self, alpha, beta):
        """Cusp-branch tolerance on ``I``; scales with the parameters squared."""
        return self.discriminant * (1.0 + np.abs(alpha) + np.abs(beta)) ** 2


DEFAULT_TOLERANCES = Tolerances()


class PhiCoefficients(NamedTuple):
    """``Phi(u) = c2 u^2 + c1 u + c0``, the sign pattern of ``Z' x Z''``."""

    c2: float
    c1: float
    c0: float

    def __call__(self, u):
        return (self.c2 * u + self.c1) * u + self.c0

    @property
    def discriminant(self) -> float:
        return self.c1 * self.c1 - 4.0 * self.c2 * self.c0


class RootSet(NamedTuple):
    roots: tuple[float, ...]
    notes: tuple[str, ...] = ()


class InflectionCount(NamedTuple):
    count: int
    u: tuple[float, ...]
    t: tuple[float, ...]
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class ClassificationReport:
    params: ShapeParams
    I: float
    phi: PhiCoefficients
    shape: ShapeClass
    region_label: str
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def kind(self) -> ShapeKind:
        return self.shape.kind

    def to_dict(self) -> dict:
        return {
            "alpha": self.params.alpha,
            "beta": self.params.beta,
            "I": self.I,
            "phi": list(self.phi),
            "class": self.shape.name,
            "roots_u": list(self.shape.u),
            "roots_t": list(self.shape.t),
            "region": self.region_label,
            "notes": list(self.notes),
        }


def discriminant_I(params: ShapeParams) -> float:
    a, b = params.alpha, params.beta
    return 12.0 - 4.0 * (a + b) + a * b


def phi_coefficients(params: ShapeParams) -> PhiCoefficients:
    a, b = params.alpha, params.beta
    return PhiCoefficients(a * (b - 3.0), -a * b, (a - 3.0) * b)


def loop_boundary_values(params: ShapeParams) -> tuple[float, float]:
    """Values of the two boundary parabolas ``L1``, ``L2`` at ``params``."""
    a, b = params.alpha, params.beta
    return a - 3.0 * b + b * b, b - 3.0 * a + a * a


def quadratic_roots(c2: float, c1: float, c0: float) -> tuple[float, ...]:
    """Real roots of ``c2 x^2 + c1 x + c0``, ascending.

    Uses the cancellation-free pairing ``x1 = q / c2``, ``x2 = c0 / q`` with
    ``q = -(c1 + sign(c1) sqrt(disc)) / 2``.  A double root is returned once;
    an identically zero polynomial has no isolated roots and returns ``()``.
    """
    if c2 == 0.0:
        if c1 == 0.0:
            return ()
        return (-c0 / c1,)
    disc = c1 * c1 - 4.0 * c2 * c0
    if disc < 0.0:
        return ()
    if disc == 0.0:
        return (-c1 / (2.0 * c2),)
    q = -0.5 * (c1 + math.copysign(math.sqrt(disc), c1))
    x1 = q / c2
    x2 = c0 / q if q != 0.0 else -x1
    return tuple(sorted((x1, x2)))


def inflection_roots(params: ShapeParams) -> RootSet:
    """Real roots of ``Phi(u)``, ascending, with notes on degenerate patterns."""
    phi = phi_coefficients(params)
    if phi.c2 == 0.0 and phi.c1 == 0.0:
        if phi.c0 == 0.0:
            return RootSet((), ("Phi vanishes identically",))
        return RootSet((), ("Phi is a nonzero constant",))
    roots = quadratic_roots(*phi)
    notes = []
    if phi.c2 == 0.0:
        notes.append("Phi is linear in u (leading coefficient zero)")
    elif not roots:
        notes.append("complex roots")
    return RootSet(roots, tuple(notes))


def count_inflections(params: ShapeParams) -> InflectionCount:
    """Number of interior inflection points and their locations.

    Only strictly positive ``u`` roots count.  A root at ``u == 0`` means
    zero curvature exactly at the end point ``t == 1`` and is reported in
    the notes instead; a vanishing leading coefficient likewise puts a root
    at ``u == inf`` (``t == 0``).
    """
    rs = inflection_roots(params)
    notes = list(rs.notes)
    us = tuple(r for r in rs.roots if r > 0.0)
    if any(r == 0.0 for r in rs.roots):
        notes.append("Phi root at u=0: zero curvature at end point t=1")
    phi = phi_coefficients(params)
    if phi.c2 == 0.0 and phi.c1 != 0.0:
        notes.append("Phi root at u=inf: zero curvature at start point t=0")
    ts = tuple(reparam_u_to_t(u) for u in us)
    return InflectionCount(len(us), us, ts, tuple(notes))


def cusp_alpha_for_beta(beta: float) -> float:
    """The ``alpha`` with ``I(alpha, beta) == 0``."""
    if beta == 4.0:
        raise ZeroDivisionError("I = -4 for every alpha when beta == 4")
    return 4.0 * (beta - 3.0) / (beta - 4.0)


def cusp_parameter(params: ShapeParams, tolerances: Tolerances = DEFAULT_TOLERANCES) -> float | None:
    """Parameter ``t`` of the cusp on an ``I == 0`` curve, if inside (0, 1).

    Raises ``ValueError`` at the quadratic point (2, 2) and when ``I`` is not
    zero within tolerance.
    """
    a, b = params.alpha, params.beta
    g = tolerances.geom
    if abs(a - 2.0) <= g and abs(b - 2.0) <= g:
        raise ValueError("(2, 2) is the quadratic point, not a cusp")
    if abs(discriminant_I(params)) > tolerances.tol_I(a, b):
        raise ValueError("I is not zero; no cusp")
    if not (_outside_0_3(a) and _outside_0_3(b)):
        return None
    t = 2.0 * (b - 3.0) / (3.0 * (b - 2.0))
    if not 0.0 < t < 1.0:
        return None
    return t


def _outside_0_3(x):
    return (x < 0.0) | (x > 3.0)


def sylvester_quadratic(p, q) -> np.ndarray:
    """4x4 Sylvester matrix of two quadratics given high-to-low coefficients."""
    p2, p1, p0 = p
    q2, q1, q0 = q
    return np.array(
        [
            [p2, p1, p0, 0.0],
            [0.0, p2, p1, p0],
            [q2, q1, q0, 0.0],
            [0.0, q2, q1, q0],
        ],
        dtype=float,
    )


def hodograph_coefficients(curve: CurveInstance) -> np.ndarray:
    """Power coefficients (high to low) of ``x'(t)`` and ``y'(t)``, shape (2, 3).

    Recovered by exact quadratic interpolation of the velocity at
    t = 0, 1/2, 1, so no closed-form derivative is trusted.
    """
    ts = np.array([0.0, 0.5, 1.0])
    vel = derivatives_many(curve, ts, 1)
    vander = np.vander(ts, 3)
    return np.linalg.solve(vander, vel).T


def resultant_check(params: ShapeParams, t0=(1.0, 0.0), t1=(0.0, 1.0)) -> float:
    """Determinant of the Sylvester matrix of the velocity components.

    Zero exactly when ``x'(t)`` and ``y'(t)`` share a root, i.e. when the
    velocity can vanish.  Equals ``-3 Gamma^2 alpha beta I``.
    """
    curve = CurveInstance.from_tangents(params.alpha, params.beta, t0, t1)
    if cross2(Vec2.of(t0), Vec2.of(t1)) == 0.0:
        raise ValueError("T0 and T1 must be linearly independent")
    cx, cy = hodograph_coefficients(curve)
    return float(np.linalg.det(sylvester_quadratic(cx, cy)))


def loop_roots(params: ShapeParams) -> RootSet:
    """The two ``u``-parameters of the double point, ascending.

    Empty (with a note) when the radicand ``alpha beta I`` is not positive
    or the denominator ``2 alpha L1`` vanishes.
    """
    a, b = params.alpha, params.beta
    I = discriminant_I(params)
    rad = a * b * I
    if not rad > 0.0:
        return RootSet((), ("loop radicand alpha*beta*I not positive: no double point",))
    L1, L2 = loop_boundary_values(params)
    den = 2.0 * a * L1
    if den == 0.0:
        return RootSet((), ("loop denominator 2*alpha*L1 vanishes: double point at t=0",))
    # Monic form u^2 - S u + P of the closed-form pair.
    s = b * (a * b - 3.0 * (a + b) + 8.0) / L1
    p = b * L2 / (a * L1)
    roots = quadratic_roots(1.0, -s, p)
    if len(roots) != 2:
        # Rounding can swallow a tiny discriminant; fall back to the closed form.
        sq = (a + b - a * b) * math.sqrt(rad)
        num = a * (8.0 + a * (b - 3.0) - 3.0 * b) * b
        roots = tuple(sorted(((num - sq) / den, (num + sq) / den)))
    return RootSet(roots, ("loop roots are u-parameters, t = 1/(1+u)",))


def boundary_distance(alpha, beta):
    """First-order distance from ``(alpha, beta)`` to the nearest class boundary.

    Boundaries are the axes, the lines ``alpha = 3`` and ``beta = 3``, the
    hyperbola ``I = 0`` and the parabolas ``L1 = 0``, ``L2 = 0``; curved sets
    use ``|f| / |grad f|``.
    """
    a = np.asarray(alpha, dtype=float)
    b = np.asarray(beta, dtype=float)
    I = 12.0 - 4.0 * (a + b) + a * b
    L1 = a - 3.0 * b + b * b
    L2 = b - 3.0 * a + a * a
    with np.errstate(divide="ignore"):
        d_I = np.abs(I) / np.hypot(b - 4.0, a - 4.0)
    d_L1 = np.abs(L1) / np.hypot(1.0, 2.0 * b - 3.0)
    d_L2 = np.abs(L2) / np.hypot(2.0 * a - 3.0, 1.0)
    return np.minimum.reduce([np.abs(a), np.abs(b), np.abs(a - 3.0), np.abs(b - 3.0), d_I, d_L1, d_L2])


def class_codes(alpha, beta, tolerances: Tolerances = DEFAULT_TOLERANCES):
    """Vectorised shape-kind codes (see :data:`altcurve.shapes.LEGEND`).

    Every predicate is evaluated from sign patterns of expressions whose
    floating-point value is invariant under swapping ``alpha`` and
    ``beta``, so the result is exactly symmetric in its arguments.
    """
    a = np.asarray(alpha, dtype=float)
    b = np.asarray(beta, dtype=float)
    g = tolerances.geom
    I = 12.0 - 4.0 * (a + b) + a * b
    ab = a * b

    quadratic = (np.abs(a - 2.0) <= g) & (np.abs(b - 2.0) <= g)
    endpoint = (np.abs(a) <= g) | (np.abs(b) <= g)
    on_I = np.abs(I) <= tolerances.tol_I(a, b)
    cusp = on_I & _outside_0_3(a) & _outside_0_3(b)

    L1 = a - 3.0 * b + b * b
    L2 = b - 3.0 * a + a * a
    K = ab - 3.0 * (a + b) + 8.0
    rad = ab * I
    # Vieta: product of loop roots has the sign of ab*L1*L2, the sum that of b*K*L1.
    loop = (rad > 0.0) & (ab * (L1 * L2) > 0.0) & (np.sign(b) * np.sign(K) * np.sign(L1) > 0.0)

    c2 = a * (b - 3.0)
    c1 = -ab
    c0 = (a - 3.0) * b
    pc = c2 * c0
    n_quad = np.where(pc > 0.0, np.where(c1 * c2 < 0.0, 2, 0), np.where(pc < 0.0, 1, 0))
    # One coefficient zero: roots {0, -c1/c2} or linear with root -c0/c1.
    n_edge = np.where((c1 * c2 < 0.0) | (c1 * c0 < 0.0), 1, 0)
    n_pos = np.where(pc == 0.0, n_edge, n_quad)
    n_pos = np.where(rad > 0.0, 0, n_pos)

    codes = np.choose(
        n_pos,
        [
            ShapeKind.CONVEX.code,
            ShapeKind.SINGLE_INFLECTION.code,
            ShapeKind.DOUBLE_INFLECTION.code,
        ],
    )
    codes = np.where(on_I & ~cusp, ShapeKind.CONVEX.code, codes)
    codes = np.where(loop & ~on_I, ShapeKind.LOOP.code, codes)
    codes = np.where(cusp, ShapeKind.CUSP.code, codes)
    codes = np.where(endpoint, ShapeKind.ENDPOINT_DEGENERATE.code, codes)
    codes = np.where(quadratic, ShapeKind.QUADRATIC.code, codes)
    return codes.astype(np.int8)


def _shape_payload(kind: ShapeKind, params: ShapeParams, tolerances: Tolerances, notes: list) -> ShapeClass:
    a, b = params.alpha, params.beta
    g = tolerances.geom
    if kind is ShapeKind.ENDPOINT_DEGENERATE:
        start, end = abs(a) <= g, abs(b) <= g
        which = "both" if start and end else ("start" if start else "end")
        notes.append(f"vanishing end tangent at the {which} of the segment")
        return ShapeClass(kind, endpoint=which)
    if kind is ShapeKind.CUSP:
        t = cusp_parameter(params, tolerances)
        u = b / (2.0 * (b - 3.0))
        return ShapeClass(kind, (u,), (t,))
    if kind is ShapeKind.LOOP:
        rs = loop_roots(params)
        notes.extend(rs.notes)
        us = tuple(max(u, 0.0) for u in rs.roots)
        return ShapeClass(kind, us, tuple(reparam_u_to_t(u) for u in us))
    if kind in (ShapeKind.SINGLE_INFLECTION, ShapeKind.DOUBLE_INFLECTION, ShapeKind.CONVEX):
        ic = count_inflections(params)
        notes.extend(ic.notes)
        expected = {ShapeKind.CONVEX: 0, ShapeKind.SINGLE_INFLECTION: 1, ShapeKind.DOUBLE_INFLECTION: 2}[kind]
        us = ic.u
        if len(us) != expected:
            notes.append(f"root filter found {len(us)} positive roots, sign analysis {expected}")
            us = tuple(sorted(us, reverse=True)[:expected])[::-1]
        if kind is ShapeKind.CONVEX:
            return ShapeClass(kind)
        return ShapeClass(kind, us, tuple(reparam_u_to_t(u) for u in us))
    return ShapeClass(kind)


def classify(params: ShapeParams, tolerances: Tolerances = DEFAULT_TOLERANCES) -> ClassificationReport:
    """Classify the curve shape from the shape parameters alone."""
    a, b = params.alpha, params.beta
    kind = ShapeKind.from_code(class_codes(a, b, tolerances))
    notes: list[str] = []
    I = discriminant_I(params)
    if abs(I) <= tolerances.tol_I(a, b) and kind is ShapeKind.CONVEX:
        notes.append("double Phi-root outside segment (I = 0, no interior cusp)")
    if 0.0 < a < 3.0 and 0.0 < b < 3.0 and I < 0.0:
        notes.append("no-inflection subcase 0 < alpha, beta < 3 with I < 0: both Phi roots negative")
    shape = _shape_payload(kind, params, tolerances, notes)
    return ClassificationReport(
        params=params,
        I=I,
        phi=phi_coefficients(params),
        shape=shape,
        region_label=_label_for(kind, params, tolerances),
        notes=tuple(notes),
    )


def classify_curve(curve: CurveInstance, tolerances: Tolerances = DEFAULT_TOLERANCES) -> ClassificationReport:
    """:func:`classify` guarded by the geometric preconditions of ``curve``.

    Parallel end tangents (``Gamma == 0``) give :attr:`ShapeKind.COLLINEAR`;
    those configurations are handled by :mod:`altcurve.degenerate`.
    """
    if not curve.is_h_form():
        raise ValueError("analytic classification needs an H-form polygon (P1 == P2)")
    scale = curve.t0.norm() * curve.t1.norm()
    if abs(curve.gamma) <= tolerances.geom * scale or scale == 0.0:
        params = curve.params
        return ClassificationReport(
            params=params,
            I=discriminant_I(params),
            phi=phi_coefficients(params),
            shape=ShapeClass(ShapeKind.COLLINEAR),
            region_label="unlabeled",
            notes=("end tangents are parallel (Gamma = 0)",),
        )
    return classify(curve.params, tolerances)


def _label_for(kind: ShapeKind, params: ShapeParams, tolerances: Tolerances) -> str:
    a, b = params.alpha, params.beta
    g = tolerances.geom
    if kind is ShapeKind.QUADRATIC:
        return "C"
    if kind is ShapeKind.CUSP:
        return "I-curve"
    if kind in (ShapeKind.ENDPOINT_DEGENERATE, ShapeKind.COLLINEAR):
        return "unlabeled"
    L1, L2 = loop_boundary_values(params)
    if min(abs(a - 3.0), abs(b - 3.0), abs(L1), abs(L2)) <= g:
        return "unlabeled"
    if kind is ShapeKind.DOUBLE_INFLECTION:
        return "D"
    if kind is ShapeKind.LOOP:
        return "E" if a > 0.0 and b > 0.0 else "U"
    if kind is ShapeKind.SINGLE_INFLECTION:
        return "S" if min(a, b) < 0.0 else "F"
    if 0.0 < a < 3.0 and 0.0 < b < 3.0:
        return "C"
    if a < 0.0 and b < 0.0:
        return "R"
    if a < 0.0 and b > 3.0:
        return "V"
    if a > 3.0 and b < 0.0:
        return "H"
    return "unlabeled"


def region_label(params: ShapeParams, tolerances: Tolerances = DEFAULT_TOLERANCES) -> str:
    """Letter of the shape-diagram region containing ``params``.

    C: convex, both parameters in (0, 3).  D: two inflections.  E: loop with
    both parameters positive.  U: loop with parameters of opposite sign.
    F: one inflection, parameters in (0, 3) and (3, inf).  S: one inflection
    with a negative parameter.  R: convex, both negative.  V / H: convex
    with ``alpha < 0 < 3 < beta`` / ``beta < 0 < 3 < alpha``.  I-curve: the
    cusp branches of ``I = 0``.  Boundary sets return ``"unlabeled"``.
    """
    kind = ShapeKind.from_code(class_codes(params.alpha, params.beta, tolerances))
    return _label_for(kind, params, tolerances)
