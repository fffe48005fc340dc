import ast
import pathlib

import numpy as np
import pytest

import altcurve.oracle as oracle_mod
from altcurve import CurveInstance, ShapeKind, ShapeParams, classify
from altcurve.classify import boundary_distance
from altcurve.oracle import (
    OracleSettings,
    oracle_classify,
    oracle_cusp,
    oracle_inflection_count,
    oracle_min_speed,
    oracle_self_intersection,
)


def test_oracle_imports_no_analytic_code():
    tree = ast.parse(pathlib.Path(oracle_mod.__file__).read_text())
    imported = set()
    for node in ast.walk(tree):
        if isinstance(node, ast.ImportFrom):
            imported.add(node.module or "")
        elif isinstance(node, ast.Import):
            imported.update(a.name for a in node.names)
    assert imported <= {"__future__", "dataclasses", "typing", "numpy", "scipy.optimize", "curve", "shapes"}


def test_settings_validation():
    with pytest.raises(ValueError):
        OracleSettings(samples=100)


@pytest.mark.parametrize(
    "a, b, kind",
    [
        (1.5, 1.5, ShapeKind.CONVEX),
        (4, 4, ShapeKind.DOUBLE_INFLECTION),
        (6, 6, ShapeKind.CUSP),
        (7, 7, ShapeKind.LOOP),
        (-1, 1, ShapeKind.SINGLE_INFLECTION),
        (-4, 3.75, ShapeKind.LOOP),
        (2, 2, ShapeKind.QUADRATIC),
        (0, 4, ShapeKind.ENDPOINT_DEGENERATE),
    ],
)
def test_instances(a, b, kind):
    assert oracle_classify(CurveInstance.from_tangents(a, b)).kind is kind


def test_collinear_polygon():
    curve = CurveInstance.from_tangents(1, 5, t0=(1, 0), t1=(3, 0))
    assert oracle_classify(curve).kind is ShapeKind.COLLINEAR


def test_loop_pair_7_7():
    hit = oracle_self_intersection(CurveInstance.from_tangents(7, 7))
    assert hit is not None
    np.testing.assert_allclose((hit.t_p, hit.t_q), (0.5 - 5**0.5 / 10, 0.5 + 5**0.5 / 10), atol=1e-9)


def test_no_self_intersection_on_convex():
    assert oracle_self_intersection(CurveInstance.from_tangents(1, 1)) is None


def test_min_speed_at_cusp():
    t, speed = oracle_min_speed(CurveInstance.from_tangents(6, 6))
    assert t == pytest.approx(0.5, abs=1e-6)
    assert speed <= 1e-7
    assert oracle_cusp(CurveInstance.from_tangents(6.5, 6.5)) is None


def test_inflection_locations_match_analytic():
    for a, b in [(4, 4), (-1, 1), (1.5, 6), (-3, 1.5)]:
        curve = CurveInstance.from_tangents(a, b)
        scan = oracle_inflection_count(curve)
        np.testing.assert_allclose(sorted(scan.t), sorted(classify(ShapeParams(a, b)).shape.t), atol=1e-8)


def _sweep(n, seed):
    rng = np.random.default_rng(seed)
    ab = rng.uniform(-8, 8, size=(4 * n, 2))
    return ab[boundary_distance(ab[:, 0], ab[:, 1]) > 0.05][:n]


def test_resolution_stability():
    fine = OracleSettings(samples=8192)
    for a, b in _sweep(60, 5):
        curve = CurveInstance.from_tangents(a, b)
        assert oracle_classify(curve).kind is oracle_classify(curve, fine).kind


def test_deterministic():
    curve = CurveInstance.from_tangents(-4, 3.75, t0=(2, 1), t1=(-1, 3))
    assert oracle_self_intersection(curve) == oracle_self_intersection(curve)


def test_affine_robust():
    curve = CurveInstance.from_tangents(7, 7, t0=(1e3, 0), t1=(0, 1e-2), p0=(5e3, -7))
    assert oracle_classify(curve).kind is ShapeKind.LOOP
