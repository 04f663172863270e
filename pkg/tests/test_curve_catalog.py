import math

import numpy as np
import pytest

from core.curve_catalog import (
    ConstProfile,
    HelixExpr,
    LineExpr,
    MomentExpr,
    PolyProfile,
    SamplesExpr,
    TanProfile,
    default_domain,
    parse_scalar_expr,
    parse_vector_expr,
)
from core.dual_algebra import DualScalar
from core.errors import InvalidCurveDefinition
from utils.helpers import fd_derivative


class TestVectorExpressions:
    @pytest.mark.parametrize("data, kind", [
        ({"kind": "helix", "radius": 3, "pitch": 4}, "helix"),
        ({"kind": "circle", "radius": 1}, "circle"),
        ({"kind": "line", "point": [0, 0, 0], "direction": [1, 0, 0]}, "line"),
        ({"kind": "constant", "value": [1, 2, 3]}, "constant"),
        ({"kind": "polynomial", "coeffs": [[0, 1], [0, 0, 1], [1]]}, "polynomial"),
        ({"kind": "scaled", "factor": 0.1, "of": {"kind": "circle", "radius": 2}}, "scaled"),
        ({"kind": "zero"}, "zero"),
    ])
    def test_parse_round_trip(self, data, kind):
        expr = parse_vector_expr(data)
        assert expr.to_dict()["kind"] == kind
        assert parse_vector_expr(expr.to_dict()).to_dict() == expr.to_dict()

    @pytest.mark.parametrize("data", [
        {"kind": "spiral"},
        {"kind": "helix", "radius": 3},
        {"kind": "line", "point": [0, 0], "direction": [1, 0, 0]},
        {"kind": "circle", "radius": "wide"},
        [1, 2, 3],
    ])
    def test_malformed(self, data):
        with pytest.raises(InvalidCurveDefinition):
            parse_vector_expr(data)

    @pytest.mark.parametrize("order", [1, 2, 3])
    def test_helix_derivatives(self, order):
        helix = HelixExpr(3.0, 4.0)
        expected = fd_derivative(helix.value, 0.7, order, 1e-3)
        np.testing.assert_allclose(helix.derivative(0.7, order), expected, atol=1e-6)

    @pytest.mark.parametrize("order", [1, 2, 3])
    def test_moment_derivatives(self, order):
        moment = MomentExpr(LineExpr([0, 0, 0], [0, 0, 0.5]), HelixExpr(1.0, 0.0))
        expected = fd_derivative(moment.value, 1.3, order, 1e-3)
        np.testing.assert_allclose(moment.derivative(1.3, order), expected, atol=1e-6)

    def test_samples_need_increasing_parameters(self):
        with pytest.raises(InvalidCurveDefinition):
            SamplesExpr([0.0, 0.0, 1.0], np.zeros((3, 3)))

    def test_samples_interpolate(self):
        t = np.linspace(0.0, 1.0, 21)
        expr = SamplesExpr(t, np.column_stack([t, t ** 2, np.zeros_like(t)]))
        np.testing.assert_allclose(expr.value(0.33), [0.33, 0.33 ** 2, 0.0], atol=1e-12)
        assert not expr.analytic

    def test_default_domain(self):
        assert default_domain(HelixExpr(1, 1), parse_vector_expr(None)) == (0.0, 2.0 * math.pi)
        assert default_domain(LineExpr([0, 0, 0], [1, 0, 0]), parse_vector_expr(None)) == (0.0, 1.0)


class TestScalarProfiles:
    def test_number_is_constant(self):
        profile = parse_scalar_expr(2.5)
        assert isinstance(profile, ConstProfile)
        assert profile(1.0) == DualScalar(2.5)
        assert profile.derivative(1.0) == DualScalar(0.0)

    def test_poly(self):
        profile = parse_scalar_expr({"kind": "poly", "re_coeffs": [1, 2], "du_coeffs": [0, 0, 3]})
        assert isinstance(profile, PolyProfile)
        assert profile.value(2.0) == DualScalar(5.0, 12.0)
        assert profile.derivative(2.0, 1) == DualScalar(2.0, 12.0)

    def test_tan_with_dual_parameters(self):
        profile = parse_scalar_expr({"kind": "tan", "scale": {"re": 2, "du": 0.5}, "rate": 0.5})
        assert isinstance(profile, TanProfile)
        value = profile.value(1.0)
        assert value.re == pytest.approx(2.0 * math.tan(0.5))
        assert value.du == pytest.approx(0.5 * math.tan(0.5))

    @pytest.mark.parametrize("order", [1, 2, 3])
    def test_tan_derivatives(self, order):
        profile = TanProfile(DualScalar(1.0), DualScalar(0.8), DualScalar(0.1))
        h = 1e-3
        expected = fd_derivative(lambda s: [profile.value(s).re], 0.4, order, h)[0]
        assert profile.derivative(0.4, order).re == pytest.approx(expected, rel=1e-5)

    def test_unknown_kind(self):
        with pytest.raises(InvalidCurveDefinition):
            parse_scalar_expr({"kind": "sinh"})
        with pytest.raises(InvalidCurveDefinition):
            parse_scalar_expr({"kind": "tan", "scale": "big"})
