import numpy as np
import pytest
from hypothesis import strategies as st

from altcurve import ControlPolygon, CurveInstance, ShapeParams

params_st = st.floats(-20.0, 20.0, allow_nan=False, allow_infinity=False)
coord_st = st.floats(-10.0, 10.0, allow_nan=False, allow_infinity=False)
unit_t = st.floats(0.0, 1.0)


@st.composite
def h_form_curves(draw, min_gamma=0.1):
    """Random H-form curve with well separated end tangents."""
    p0 = (draw(coord_st), draw(coord_st))
    t0 = (draw(coord_st), draw(coord_st))
    t1 = (draw(coord_st), draw(coord_st))
    gamma = t0[0] * t1[1] - t0[1] * t1[0]
    norm = np.hypot(*t0) * np.hypot(*t1)
    from hypothesis import assume

    assume(norm > 1e-3 and abs(gamma) > min_gamma * norm)
    return CurveInstance(ControlPolygon.from_tangents(p0, t0, t1), ShapeParams(draw(params_st), draw(params_st)))


@pytest.fixture
def unit_frame():
    def make(alpha, beta):
        return CurveInstance.from_tangents(alpha, beta)

    return make


# Acceptance criteria register their outcome here; the summary hook prints one line each.
ACCEPTANCE: dict[int, tuple[str, bool]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, ok = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {title}")
