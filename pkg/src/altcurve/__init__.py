"""Shape analysis of planar cubic Alternative curves."""

from .curve import (
    ControlPolygon,
    CurveInstance,
    DomainError,
    NotHFormError,
    Point2,
    ShapeParams,
    SingularVelocityError,
    Vec2,
    basis,
    basis_derivative,
    cross2,
    cubic_coefficient,
    derivatives_many,
    evaluate,
    evaluate_many,
    first_derivative,
    hodograph_cross,
    phi_t,
    reparam_t_to_u,
    reparam_u_to_t,
    second_derivative,
    signed_curvature,
)
from .shapes import LEGEND, ShapeClass, ShapeKind
from .classify import ClassificationReport, Tolerances, classify, classify_curve, region_label

__version__ = "0.1.0"
