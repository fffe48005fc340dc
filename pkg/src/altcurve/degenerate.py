"""Curves whose end tangents are parallel.

With a unit end-tangent direction ``z0`` and a unit lateral direction
``zs`` the curve only depends on ``a = mu * alpha``, ``b = nu * beta``, the
lateral offset ``m`` and ``upsilon = z0 x zs``::

    Z(t) = P0 + m (3 - 2t) t^2 zs + t (a (1 + t - t^2) + b (t - 2) t) z0

Such a curve has at most one inflection point (exactly one when
``a * b < 0``), never a cusp and never a loop.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .classify import hodograph_coefficients, quadratic_roots, sylvester_quadratic
from .curve import ControlPolygon, CurveInstance, ShapeParams, Vec2, _check_t, cross2

__all__ = [
    "DegenerateConfig",
    "DegenerateDerived",
    "DegenerateReport",
    "derived",
    "build_degenerate_polygon",
    "degenerate_curve",
    "evaluate_degenerate",
    "degenerate_cross",
    "degenerate_inflections",
    "degenerate_loop_roots",
    "degenerate_resultant",
    "degenerate_classify",
]

_UNIT_TOL = 1e-12


@dataclass(frozen=True, kw_only=True)
class DegenerateConfig:
    """Parallel-tangent configuration; ``mu, nu > 0`` and signs live in alpha, beta."""

    p0: Vec2 = Vec2(0.0, 0.0)
    z0: Vec2 = Vec2(1.0, 0.0)
    zs: Vec2 = Vec2(0.0, 1.0)
    mu: float = 1.0
    nu: float = 1.0
    m: float = 1.0
    alpha: float = 1.0
    beta: float = 1.0

    def __post_init__(self):
        for name in ("p0", "z0", "zs"):
            object.__setattr__(self, name, Vec2.of(getattr(self, name)))
        for name in ("mu", "nu", "m", "alpha", "beta"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite")
            object.__setattr__(self, name, v)
        if abs(self.z0.norm() - 1.0) > _UNIT_TOL or abs(self.zs.norm() - 1.0) > _UNIT_TOL:
            raise ValueError("z0 and zs must be unit vectors")
        if not (self.mu > 0.0 and self.nu > 0.0):
            raise ValueError("mu and nu must be positive")
        if self.m == 0.0:
            raise ValueError("m must be nonzero")
        if cross2(self.z0, self.zs) == 0.0:
            raise ValueError("z0 and zs are parallel: the polygon is collinear")

    @classmethod
    def from_abm(cls, a: float, b: float, m: float, **kwargs) -> "DegenerateConfig":
        """Configuration with ``mu = nu = 1`` so that ``alpha = a``, ``beta = b``."""
        return cls(alpha=a, beta=b, m=m, **kwargs)


@dataclass(frozen=True)
class DegenerateDerived:
    a: float
    b: float
    upsilon: float


@dataclass(frozen=True)
class DegenerateReport:
    a: float
    b: float
    m: float
    upsilon: float
    inflections: int
    inflection_u: tuple[float, ...]
    inflection_t: tuple[float, ...]
    loop_roots_u: tuple[float, ...]
    resultant: float
    cusp: bool = False
    loop: bool = False
    notes: tuple[str, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "m": self.m,
            "inflections": self.inflections,
            "inflection_t": list(self.inflection_t),
            "cusp": self.cusp,
            "loop": self.loop,
            "inflection_u": list(self.inflection_u),
            "loop_roots_u": list(self.loop_roots_u),
            "resultant": self.resultant,
            "notes": list(self.notes),
        }


def derived(config: DegenerateConfig) -> DegenerateDerived:
    return DegenerateDerived(config.mu * config.alpha, config.nu * config.beta, cross2(config.z0, config.zs))


def build_degenerate_polygon(config: DegenerateConfig) -> tuple[ControlPolygon, ShapeParams]:
    """Control polygon realising ``config``.

    ``P1 - P0 = mu z0`` and ``P3 - P2 = -nu z0``, with the end point
    ``P3 = P0 + (a - b) z0 + m zs``.  The middle leg ``P2 - P1`` is along
    ``zs`` only when ``mu alpha - nu beta == mu - nu``.
    """
    d = derived(config)
    p0 = config.p0
    p1 = p0 + config.mu * config.z0
    p3 = p0 + (d.a - d.b) * config.z0 + config.m * config.zs
    p2 = p3 + config.nu * config.z0
    return ControlPolygon(p0, p1, p2, p3), ShapeParams(config.alpha, config.beta)


def degenerate_curve(config: DegenerateConfig) -> CurveInstance:
    return CurveInstance(*build_degenerate_polygon(config))


def evaluate_degenerate(config: DegenerateConfig, t: float) -> Vec2:
    """Closed-form point at ``t``, independent of the control polygon."""
    _check_t(t)
    d = derived(config)
    ks = config.m * (3.0 - 2.0 * t) * t * t
    k0 = t * (d.a * (1.0 + t - t * t) + d.b * (t - 2.0) * t)
    return config.p0 + ks * config.zs + k0 * config.z0


def degenerate_cross(config: DegenerateConfig, u: float) -> float:
    """``Z' x Z''`` at ``t = 1 / (1 + u)``, written in ``u``.

    Equals ``6 m upsilon (b + a u^2) / (1 + u)^2``; only the zeros and sign
    matter for the inflection analysis.
    """
    if not u >= 0.0:
        raise ValueError(f"u must be >= 0, got {u!r}")
    d = derived(config)
    return 6.0 * config.m * d.upsilon * (d.b + d.a * u * u) / (1.0 + u) ** 2


def degenerate_inflections(config: DegenerateConfig) -> tuple[int, tuple[float, ...], tuple[float, ...], tuple[str, ...]]:
    """``(count, u, t, notes)``: one inflection at ``u = sqrt(-b / a)`` iff ``ab < 0``."""
    d = derived(config)
    if d.a == 0.0 and d.b == 0.0:
        return 0, (), (), ("a = b = 0: the curve is the straight leg along zs",)
    if d.a == 0.0:
        return 0, (), (), ("a = 0: curvature vanishes only at the start point",)
    if d.b == 0.0:
        return 0, (), (), ("b = 0: curvature vanishes only at the end point",)
    if d.a * d.b > 0.0:
        return 0, (), (), ()
    u = math.sqrt(-d.b / d.a)
    return 1, (u,), (1.0 / (1.0 + u),), ()


def degenerate_loop_roots(config: DegenerateConfig) -> tuple[tuple[float, ...], tuple[str, ...]]:
    """Closed-form double-point pair, defined for ``ab > 0`` and ``a != 3b``."""
    d = derived(config)
    a, b = d.a, d.b
    if not a * b > 0.0:
        return (), ("double-point pair undefined for ab <= 0",)
    if a == 3.0 * b:
        return (), ("double-point denominator a(a - 3b) vanishes",)
    # Monic form u^2 + A u + B of the pair.
    roots = quadratic_roots(1.0, -8.0 * b / (a - 3.0 * b), b * (b - 3.0 * a) / (a * (a - 3.0 * b)))
    npos = sum(r > 0.0 for r in roots)
    return roots, (f"{npos} of the pair positive: no loop",)


def degenerate_resultant(config: DegenerateConfig) -> float:
    """Sylvester resultant of the velocity components of the built polygon."""
    cx, cy = hodograph_coefficients(degenerate_curve(config))
    return float(np.linalg.det(sylvester_quadratic(cx, cy)))


def degenerate_classify(config: DegenerateConfig) -> DegenerateReport:
    d = derived(config)
    if d.a * d.b == 0.0:
        raise ValueError("a*b must be nonzero")
    count, us, ts, notes = degenerate_inflections(config)
    roots, loop_notes = degenerate_loop_roots(config)
    notes = notes + loop_notes + ("resultant -36 a b m^2 upsilon^2 is nonzero: no cusp",)
    return DegenerateReport(
        a=d.a,
        b=d.b,
        m=config.m,
        upsilon=d.upsilon,
        inflections=count,
        inflection_u=us,
        inflection_t=ts,
        loop_roots_u=roots,
        resultant=degenerate_resultant(config),
        notes=notes,
    )
