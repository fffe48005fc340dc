"""Cubic Alternative curves: basis, evaluation, derivatives and curvature.

A curve is a control polygon ``P0..P3`` together with two shape parameters
``alpha`` and ``beta`` that scale the end tangents::

    Z(t) = F0(t) P0 + F1(t) P1 + F2(t) P2 + F3(t) P3,   0 <= t <= 1

At ``alpha == beta == 3`` the basis is the cubic Bernstein basis.  The
"H-form" polygon has ``P1 == P2 == H``; the shape analysis in
:mod:`altcurve.classify` is derived for that form only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

__all__ = [
    "DomainError",
    "NotHFormError",
    "SingularVelocityError",
    "Vec2",
    "Point2",
    "ShapeParams",
    "ControlPolygon",
    "CurveInstance",
    "basis",
    "basis_derivative",
    "evaluate",
    "evaluate_many",
    "first_derivative",
    "second_derivative",
    "derivatives_many",
    "cross2",
    "phi_t",
    "hodograph_cross",
    "signed_curvature",
    "reparam_u_to_t",
    "reparam_t_to_u",
    "cubic_coefficient",
]

# Coincidence of P1 and P2, relative to the polygon diameter.
H_FORM_TOL = 1e-12


class DomainError(ValueError):
    """A parameter lies outside the domain of an operation."""


class NotHFormError(ValueError):
    """An H-form closed formula was requested for a polygon with P1 != P2."""


class SingularVelocityError(ArithmeticError):
    """Curvature is undefined because the velocity vanishes."""


def _check_finite(*values: float) -> None:
    for v in values:
        if not math.isfinite(v):
            raise ValueError(f"non-finite component: {v!r}")


@dataclass(frozen=True)
class Vec2:
    x: float
    y: float

    def __post_init__(self):
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        _check_finite(self.x, self.y)

    @classmethod
    def of(cls, value) -> "Vec2":
        if isinstance(value, Vec2):
            return value
        x, y = value
        return cls(x, y)

    def __add__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "Vec2":
        return Vec2(-self.x, -self.y)

    def __mul__(self, k: float) -> "Vec2":
        return Vec2(self.x * k, self.y * k)

    __rmul__ = __mul__

    def __iter__(self):
        yield self.x
        yield self.y

    def __getitem__(self, i: int) -> float:
        return (self.x, self.y)[i]

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y])


Point2 = Vec2


@dataclass(frozen=True)
class ShapeParams:
    """The two (untrimmed, any real) shape parameters."""

    alpha: float
    beta: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", float(self.beta))
        _check_finite(self.alpha, self.beta)

    def swapped(self) -> "ShapeParams":
        return ShapeParams(self.beta, self.alpha)


@dataclass(frozen=True)
class ControlPolygon:
    p0: Vec2
    p1: Vec2
    p2: Vec2
    p3: Vec2

    def __post_init__(self):
        for name in ("p0", "p1", "p2", "p3"):
            object.__setattr__(self, name, Vec2.of(getattr(self, name)))

    @classmethod
    def h_form(cls, p0, h, p3) -> "ControlPolygon":
        """Polygon with the two middle points merged into ``h``."""
        h = Vec2.of(h)
        return cls(p0, h, h, p3)

    @classmethod
    def from_tangents(cls, p0=(0.0, 0.0), t0=(1.0, 0.0), t1=(0.0, 1.0)) -> "ControlPolygon":
        """H-form polygon with ``H = P0 + T0`` and ``P3 = H + T1``."""
        p0 = Vec2.of(p0)
        h = p0 + Vec2.of(t0)
        return cls.h_form(p0, h, h + Vec2.of(t1))

    @property
    def points(self) -> tuple[Vec2, Vec2, Vec2, Vec2]:
        return (self.p0, self.p1, self.p2, self.p3)

    def as_array(self) -> np.ndarray:
        return np.array([[p.x, p.y] for p in self.points])

    def diameter(self) -> float:
        pts = self.as_array()
        d = pts[:, None, :] - pts[None, :, :]
        return float(np.sqrt((d**2).sum(-1)).max())

    def is_h_form(self, tol: float = H_FORM_TOL) -> bool:
        return (self.p2 - self.p1).norm() <= tol * self.diameter()

    @property
    def t0(self) -> Vec2:
        return self.p1 - self.p0

    @property
    def t1(self) -> Vec2:
        return self.p3 - self.p2

    def transformed(self, matrix, offset=(0.0, 0.0)) -> "ControlPolygon":
        """Image under the affine map ``x -> matrix @ x + offset``."""
        a = np.asarray(matrix, dtype=float)
        b = np.asarray(offset, dtype=float)
        pts = self.as_array() @ a.T + b
        return ControlPolygon(*(Vec2(*p) for p in pts))


@dataclass(frozen=True)
class CurveInstance:
    polygon: ControlPolygon
    params: ShapeParams

    @classmethod
    def from_tangents(cls, alpha, beta, t0=(1.0, 0.0), t1=(0.0, 1.0), p0=(0.0, 0.0)):
        return cls(ControlPolygon.from_tangents(p0, t0, t1), ShapeParams(alpha, beta))

    @property
    def t0(self) -> Vec2:
        return self.polygon.t0

    @property
    def t1(self) -> Vec2:
        return self.polygon.t1

    @property
    def gamma(self) -> float:
        """Cross product of the end-tangent directions ``T0 x T1``."""
        return cross2(self.t0, self.t1)

    def is_h_form(self, tol: float = H_FORM_TOL) -> bool:
        return self.polygon.is_h_form(tol)

    def diameter(self) -> float:
        return self.polygon.diameter()

    def __call__(self, t):
        return evaluate(self, t)


def _check_t(t: float) -> None:
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"t must lie in [0, 1], got {t!r}")


def _check_t_array(ts: np.ndarray) -> None:
    if ts.size and (np.any(ts < 0.0) or np.any(ts > 1.0) or not np.all(np.isfinite(ts))):
        raise DomainError("t values must lie in [0, 1]")


def _basis_values(alpha: float, beta: float, t):
    s = 1.0 - t
    return (
        s * s * (1.0 + (2.0 - alpha) * t),
        alpha * s * s * t,
        beta * t * t * s,
        t * t * (1.0 + (2.0 - beta) * s),
    )


def _basis_power_coefficients(alpha: float, beta: float) -> np.ndarray:
    """Rows are basis functions, columns the coefficients of 1, t, t^2, t^3."""
    return np.array(
        [
            [1.0, -alpha, 2.0 * alpha - 3.0, 2.0 - alpha],
            [0.0, alpha, -2.0 * alpha, alpha],
            [0.0, 0.0, beta, -beta],
            [0.0, 0.0, 3.0 - beta, beta - 2.0],
        ]
    )


def basis(params: ShapeParams, t: float) -> tuple[float, float, float, float]:
    """Return ``(F0, F1, F2, F3)`` at ``t``."""
    _check_t(t)
    return _basis_values(params.alpha, params.beta, float(t))


def basis_derivative(params: ShapeParams, t: float, order: int = 1) -> tuple[float, ...]:
    """Derivatives of the four basis functions, ``order`` in 0..3."""
    _check_t(t)
    if order == 0:
        return basis(params, t)
    c = _basis_power_coefficients(params.alpha, params.beta)
    for _ in range(order):
        c = c[:, 1:] * np.arange(1, c.shape[1])
    powers = float(t) ** np.arange(c.shape[1])
    return tuple(float(v) for v in c @ powers)


def evaluate(curve: CurveInstance, t: float) -> Vec2:
    """Point on the curve at parameter ``t``."""
    _check_t(t)
    f = _basis_values(curve.params.alpha, curve.params.beta, float(t))
    pts = curve.polygon.points
    x = f[0] * pts[0].x + f[1] * pts[1].x + f[2] * pts[2].x + f[3] * pts[3].x
    y = f[0] * pts[0].y + f[1] * pts[1].y + f[2] * pts[2].y + f[3] * pts[3].y
    return Vec2(x, y)


def evaluate_many(curve: CurveInstance, ts: Iterable[float]) -> np.ndarray:
    """Vectorised :func:`evaluate`; returns an ``(n, 2)`` array."""
    ts = np.asarray(ts, dtype=float)
    _check_t_array(ts)
    f = np.stack(_basis_values(curve.params.alpha, curve.params.beta, ts), axis=-1)
    return f @ curve.polygon.as_array()


def derivatives_many(curve: CurveInstance, ts: Iterable[float], order: int = 1) -> np.ndarray:
    """Derivative of ``order`` (1..3) at each t, by differentiating the basis.

    Works for any polygon; no H-form assumption.
    """
    ts = np.asarray(ts, dtype=float)
    _check_t_array(ts)
    c = _basis_power_coefficients(curve.params.alpha, curve.params.beta)
    for _ in range(order):
        c = c[:, 1:] * np.arange(1, c.shape[1])
    powers = ts[..., None] ** np.arange(c.shape[1])
    return powers @ c.T @ curve.polygon.as_array()


def _h_form_first(curve: CurveInstance, t: float) -> Vec2:
    a, b = curve.params.alpha, curve.params.beta
    k0 = (t - 1.0) * (3.0 * t * (a - 2.0) - a)
    k1 = t * (6.0 + 3.0 * t * (b - 2.0) - 2.0 * b)
    return curve.t0 * k0 + curve.t1 * k1


def _h_form_second(curve: CurveInstance, t: float) -> Vec2:
    a, b = curve.params.alpha, curve.params.beta
    k0 = 2.0 * (3.0 + 3.0 * t * (a - 2.0) - 2.0 * a)
    k1 = 2.0 * (3.0 + 3.0 * t * (b - 2.0) - b)
    return curve.t0 * k0 + curve.t1 * k1


def _use_h_form(curve: CurveInstance, h_form: bool | None) -> bool:
    if h_form is None:
        return curve.is_h_form()
    if h_form and not curve.is_h_form():
        raise NotHFormError("polygon is not in H-form (P1 != P2)")
    return h_form


def first_derivative(curve: CurveInstance, t: float, h_form: bool | None = None) -> Vec2:
    """Velocity ``Z'(t)``.

    ``h_form=None`` picks the closed H-form expression when the polygon
    allows it; ``True`` insists on it, ``False`` always differentiates the
    basis directly.
    """
    _check_t(t)
    if _use_h_form(curve, h_form):
        return _h_form_first(curve, float(t))
    return Vec2(*derivatives_many(curve, [float(t)], 1)[0])


def second_derivative(curve: CurveInstance, t: float, h_form: bool | None = None) -> Vec2:
    _check_t(t)
    if _use_h_form(curve, h_form):
        return _h_form_second(curve, float(t))
    return Vec2(*derivatives_many(curve, [float(t)], 2)[0])


def cross2(v, w) -> float:
    """Scalar cross product of two plane vectors."""
    return v[0] * w[1] - v[1] * w[0]


def phi_t(params: ShapeParams, t: float) -> float:
    """Quadratic in t whose sign pattern is that of ``Z' x Z''`` (up to ``-2 Gamma``)."""
    a, b = params.alpha, params.beta
    return t * t * (3.0 * a * (b - 1.0) - 3.0 * b) - 3.0 * t * a * (b - 2.0) - 3.0 * a + a * b


def hodograph_cross(curve: CurveInstance, t: float) -> float:
    """``Z'(t) x Z''(t)`` for an H-form curve, via ``-2 Gamma Phi(t)``."""
    _check_t(t)
    if not curve.is_h_form():
        raise NotHFormError("polygon is not in H-form (P1 != P2)")
    return -2.0 * curve.gamma * phi_t(curve.params, float(t))


def signed_curvature(curve: CurveInstance, t: float, tol: float = 1e-9) -> float:
    """Signed curvature; positive where the curve bends to the left.

    Raises :class:`SingularVelocityError` when ``|Z'(t)|`` is at most
    ``tol`` times the polygon diameter.
    """
    d1 = first_derivative(curve, t)
    d2 = second_derivative(curve, t)
    speed = d1.norm()
    if speed <= tol * curve.diameter():
        raise SingularVelocityError(f"velocity vanishes at t={t!r}")
    return cross2(d1, d2) / speed**3


def reparam_u_to_t(u: float) -> float:
    """Map ``u`` in ``[0, inf)`` to ``t = 1 / (1 + u)`` in ``(0, 1]``."""
    if not u >= 0.0:
        raise DomainError(f"u must be >= 0, got {u!r}")
    return 1.0 / (1.0 + u)


def reparam_t_to_u(t: float) -> float:
    """Inverse of :func:`reparam_u_to_t`, ``u = (1 - t) / t``."""
    if not 0.0 < t <= 1.0:
        raise DomainError(f"t must lie in (0, 1], got {t!r}")
    return (1.0 - t) / t


def cubic_coefficient(curve: CurveInstance) -> Vec2:
    """Vector coefficient of ``t**3`` in the H-form power expansion."""
    if not curve.is_h_form():
        raise NotHFormError("polygon is not in H-form (P1 != P2)")
    a, b = curve.params.alpha, curve.params.beta
    return curve.t0 * (a - 2.0) + curve.t1 * (b - 2.0)
