import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from altcurve import CurveInstance, ShapeKind, ShapeParams, classify, classify_curve, evaluate, region_label
from altcurve.classify import (
    boundary_distance,
    class_codes,
    count_inflections,
    cusp_alpha_for_beta,
    cusp_parameter,
    discriminant_I,
    loop_roots,
    phi_coefficients,
    quadratic_roots,
    resultant_check,
)
from altcurve.diagram import GALLERY_EXAMPLES

from conftest import h_form_curves, params_st


class TestDiscriminant:
    def test_symbolic_identity(self):
        a, b = sp.symbols("alpha beta")
        c2, c1, c0 = a * (b - 3), -a * b, (a - 3) * b
        I = 12 - 4 * (a + b) + a * b
        assert sp.expand(c1**2 - 4 * c2 * c0 + 3 * a * b * I) == 0

    @given(params_st, params_st)
    def test_numeric_identity(self, a, b):
        p = ShapeParams(a, b)
        lhs = phi_coefficients(p).discriminant
        rhs = -3.0 * a * b * discriminant_I(p)
        assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(lhs), abs(rhs), (1 + abs(a) + abs(b)) ** 4)

    def test_frozen_values(self):
        assert discriminant_I(ShapeParams(6, 6)) == 0.0
        assert discriminant_I(ShapeParams(7, 7)) == 5.0
        assert discriminant_I(ShapeParams(1, 1)) == 5.0
        assert discriminant_I(ShapeParams(4, 4)) == -4.0


class TestQuadraticRoots:
    def test_no_cancellation(self):
        small, big = quadratic_roots(1.0, -1e8, 1.0)
        assert small == pytest.approx(1e-8, rel=1e-12)
        assert big == pytest.approx(1e8, rel=1e-12)

    def test_degenerate_inputs(self):
        assert quadratic_roots(0.0, 0.0, 1.0) == ()
        assert quadratic_roots(0.0, 2.0, -1.0) == (0.5,)
        assert quadratic_roots(1.0, 0.0, 1.0) == ()
        assert quadratic_roots(1.0, -2.0, 1.0) == (1.0,)

    @given(st.floats(-100, 100), st.floats(-100, 100))
    def test_roots_of_monic_product(self, r1, r2):
        got = quadratic_roots(1.0, -(r1 + r2), r1 * r2)
        assume(abs(r1 - r2) > 1e-3)
        np.testing.assert_allclose(got, sorted((r1, r2)), rtol=1e-8, atol=1e-8)


class TestInstances:
    @pytest.mark.parametrize(
        "a, b, kind, count",
        [
            (4, 4, ShapeKind.DOUBLE_INFLECTION, 2),
            (-1, 1, ShapeKind.SINGLE_INFLECTION, 1),
            (1, 1, ShapeKind.CONVEX, 0),
            (3, 3, ShapeKind.CONVEX, 0),
            (1.5, 6, ShapeKind.SINGLE_INFLECTION, 1),
            (-3, -3, ShapeKind.CONVEX, 0),
        ],
    )
    def test_inflection_classes(self, a, b, kind, count):
        rep = classify(ShapeParams(a, b))
        assert rep.kind is kind
        assert rep.shape.inflection_count == count

    def test_double_inflection_locations(self):
        rep = classify(ShapeParams(4, 4))
        # Phi(u) = 4u^2 - 16u + 4, roots 2 -+ sqrt(3).
        np.testing.assert_allclose(rep.shape.u, (2 - math.sqrt(3), 2 + math.sqrt(3)), rtol=1e-14)
        np.testing.assert_allclose(sorted(rep.shape.t), (0.5 - math.sqrt(3) / 6, 0.5 + math.sqrt(3) / 6), rtol=1e-14)

    def test_single_inflection_location(self):
        # Phi(u) = 2u^2 + u - 4 at (-1, 1).
        rep = classify(ShapeParams(-1, 1))
        u = (-1 + math.sqrt(33)) / 4
        assert rep.shape.u == pytest.approx((u,), rel=1e-14)
        assert rep.shape.t == pytest.approx((1 / (1 + u),), rel=1e-14)

    def test_quadratic_point(self):
        rep = classify(ShapeParams(2, 2))
        assert rep.kind is ShapeKind.QUADRATIC
        with pytest.raises(ValueError):
            cusp_parameter(ShapeParams(2, 2))

    def test_cusp_6_6(self):
        rep = classify(ShapeParams(6, 6))
        assert rep.kind is ShapeKind.CUSP
        assert rep.shape.t == pytest.approx((0.5,), abs=1e-15)
        assert rep.region_label == "I-curve"

    def test_cusp_off_diagonal(self):
        a = cusp_alpha_for_beta(-2.0)
        assert a == pytest.approx(10 / 3)
        assert cusp_parameter(ShapeParams(a, -2.0)) == pytest.approx(5 / 6, rel=1e-14)
        assert classify(ShapeParams(a, -2.0)).kind is ShapeKind.CUSP

    def test_I_zero_without_interior_cusp(self):
        # (2.5, -4/(-1.5)) lies on I = 0 with alpha in (0, 3).
        b = cusp_alpha_for_beta(2.5)
        rep = classify(ShapeParams(2.5, b))
        assert rep.kind is not ShapeKind.CUSP
        assert cusp_parameter(ShapeParams(2.5, b)) is None

    def test_cusp_alpha_pole(self):
        with pytest.raises(ZeroDivisionError):
            cusp_alpha_for_beta(4.0)
        with pytest.raises(ValueError):
            cusp_parameter(ShapeParams(1, 1))

    def test_loop_7_7(self):
        rep = classify(ShapeParams(7, 7))
        assert rep.kind is ShapeKind.LOOP
        np.testing.assert_allclose(rep.shape.u, ((3 - math.sqrt(5)) / 2, (3 + math.sqrt(5)) / 2), rtol=1e-13)

    def test_endpoint_degenerate(self):
        rep = classify(ShapeParams(0, 5))
        assert rep.kind is ShapeKind.ENDPOINT_DEGENERATE
        assert rep.shape.endpoint == "start"
        assert classify(ShapeParams(5, 0)).shape.endpoint == "end"

    def test_negative_I_in_open_square_is_convex(self):
        rep = classify(ShapeParams(2.5, 2.5))
        assert discriminant_I(ShapeParams(2.5, 2.5)) < 0
        assert rep.kind is ShapeKind.CONVEX
        assert any("subcase" in n for n in rep.notes)

    def test_report_dict_keys(self):
        d = classify(ShapeParams(7, 7)).to_dict()
        assert list(d) == ["alpha", "beta", "I", "phi", "class", "roots_u", "roots_t", "region", "notes"]
        assert d["class"] == "Loop"


class TestLoopRoots:
    def test_symbolic_double_point(self):
        # Z(s) == Z(t) for s != t on the unit frame; eliminate and compare.
        a, b, s, t = sp.symbols("alpha beta s t")
        F = lambda x: (a * (1 - x) ** 2 * x + b * x**2 * (1 - x) + x**2 * (1 + (2 - b) * (1 - x)),
                       x**2 * (1 + (2 - b) * (1 - x)))
        fs, ft = F(s), F(t)
        ex = sp.cancel((fs[0] - ft[0]) / (s - t))
        ey = sp.cancel((fs[1] - ft[1]) / (s - t))
        vals = {a: 7, b: 7}
        sol = sp.solve([ex.subs(vals), ey.subs(vals)], [s, t], dict=True)
        pairs = {tuple(sorted((float(d[s]), float(d[t])))) for d in sol if all(v.is_real for v in d.values())}
        want = tuple(sorted(1 / (1 + u) for u in loop_roots(ShapeParams(7, 7)).roots))
        assert any(np.allclose(p, want, atol=1e-12) for p in pairs)

    def test_roots_coincide_in_plane(self):
        rng = np.random.default_rng(11)
        ab = rng.uniform(-8, 8, size=(20000, 2))
        ab = ab[(boundary_distance(ab[:, 0], ab[:, 1]) > 0.05) & (class_codes(ab[:, 0], ab[:, 1]) == ShapeKind.LOOP.code)]
        assert len(ab) > 100
        for a, b in ab[:300]:
            rep = classify(ShapeParams(a, b))
            curve = CurveInstance.from_tangents(a, b)
            p, q = (evaluate(curve, t) for t in rep.shape.t)
            assert (p - q).norm() <= 1e-9 * curve.diameter()
            assert all(0 < t < 1 for t in rep.shape.t)

    def test_no_loop_without_radicand(self):
        assert loop_roots(ShapeParams(4, 4)).roots == ()


class TestSymmetry:
    @given(params_st, params_st)
    def test_class_codes_symmetric(self, a, b):
        assert class_codes(a, b) == class_codes(b, a)

    def test_grid_symmetric(self):
        x = np.linspace(-8, 8, 301)
        aa, bb = np.meshgrid(x, x)
        codes = class_codes(aa, bb)
        assert (codes == codes.T).all()

    @settings(max_examples=200)
    @given(params_st, params_st)
    def test_scalar_matches_vector(self, a, b):
        assert classify(ShapeParams(a, b)).shape.code == int(class_codes(np.array([a]), np.array([b]))[0])


class TestGeometryIndependence:
    @settings(max_examples=100)
    @given(h_form_curves())
    def test_classify_curve_ignores_geometry(self, curve):
        assert classify_curve(curve).kind is classify(curve.params).kind

    def test_collinear(self):
        curve = CurveInstance.from_tangents(1, 1, t0=(1, 0), t1=(2, 0))
        assert classify_curve(curve).kind is ShapeKind.COLLINEAR


class TestResultant:
    @settings(max_examples=100)
    @given(st.floats(-8, 8), st.floats(-8, 8), h_form_curves())
    def test_resultant_identity(self, a, b, curve):
        t0, t1 = tuple(curve.t0), tuple(curve.t1)
        got = resultant_check(ShapeParams(a, b), t0, t1)
        want = -3.0 * curve.gamma**2 * a * b * discriminant_I(ShapeParams(a, b))
        scale = (np.hypot(*t0) * np.hypot(*t1)) ** 2 * (1 + abs(a) + abs(b)) ** 4
        assert abs(got - want) <= 1e-9 * max(abs(want), scale)

    def test_resultant_vanishes_at_cusp(self):
        assert abs(resultant_check(ShapeParams(6, 6))) <= 1e-9

    def test_parallel_tangents_rejected(self):
        with pytest.raises(ValueError):
            resultant_check(ShapeParams(1, 1), (1, 0), (2, 0))


class TestRegions:
    @pytest.mark.parametrize("ex", GALLERY_EXAMPLES, ids=lambda e: e.panel)
    def test_representative_points(self, ex):
        rep = classify(ShapeParams(ex.alpha, ex.beta))
        assert rep.kind is ex.kind
        assert rep.region_label == ex.region

    def test_h_region(self):
        assert region_label(ShapeParams(8, -2)) == "H"

    def test_boundaries_unlabeled(self):
        assert region_label(ShapeParams(3, 5)) == "unlabeled"
        assert region_label(ShapeParams(0, 5)) == "unlabeled"

    def test_counts_agree(self):
        for a, b in [(4, 4), (-1, 1), (1, 1)]:
            assert count_inflections(ShapeParams(a, b)).count == classify(ShapeParams(a, b)).shape.inflection_count
