import math

import numpy as np
import pytest

import config
from core.curve_catalog import CircleExpr, HelixExpr, TanProfile
from core.dual_algebra import DualScalar, sin_cos
from core.dual_curve import ExprCurve, frenet
from core.dual_linear import DualVec3
from core.errors import DegeneratePartner, InvalidCurveDefinition, PairValidationFailed, PureDualLambda
from core.mannheim import (
    MannheimCurvature,
    check_line_partner,
    check_mannheim_condition,
    check_partner_ode,
    generate_pair,
    mannheim_from_partner,
    osculating_ratio,
    pair_check,
    partner_from_mannheim,
    verify_theorems,
)
from models.geometry import TheoremReport
from models.tolerances import resolve

PAIR_RELATIONS = ["normal_binormal", "thm4_torsion", "thm7_linear", "thm8_i", "thm8_ii",
                  "thm8_iii", "thm8_iv", "eq9_eq10_angle"]


class TestGeneratedPair:
    def test_offset_constant_and_orientation(self, tan_pair):
        assert tan_pair.lam.re == pytest.approx(1.0, abs=1e-7)
        assert tan_pair.lam.du == pytest.approx(0.0, abs=1e-7)
        # ñ points against b̃₁ when λ̃ > 0
        assert tan_pair.orientation == -1
        assert len(tan_pair.samples) == config.PAIR_SAMPLES

    def test_correspondence_is_monotone(self, tan_pair):
        t, t1 = tan_pair.correspondence
        assert np.all(np.diff(t) > 0) and np.all(np.diff(t1) > 0)

    def test_metadata(self, tan_pair):
        assert tan_pair.metadata["lambda_input"] == {"re": 1.0, "du": 0.0}
        assert tan_pair.metadata["tau1"]["kind"] == "tan"
        assert tan_pair.to_dict()["s_range"] == [-1.0, 1.0]

    def test_pure_dual_offset(self):
        with pytest.raises(PureDualLambda):
            generate_pair(DualScalar(0.0, 1.0), TanProfile(), (-1.0, 1.0))

    def test_pair_check_on_generated_curves(self, tan_pair):
        pair, report = pair_check(tan_pair.curve_c, tan_pair.curve_c1, samples=64)
        assert pair is not None and report.passed
        assert report.get("normal_binormal").max_residual_re < 1e-6

    def test_dual_torsion_profile_reaches_partner(self, tan_pair_dual_torsion):
        f1 = frenet(tan_pair_dual_torsion.curve_c1, 0.3)
        assert f1.tau.re == pytest.approx(math.tan(0.3), abs=1e-6)
        assert f1.tau.du == pytest.approx(0.1 / math.cos(0.3) ** 2, abs=1e-6)
        assert tan_pair_dual_torsion.lam.du == pytest.approx(0.25, abs=1e-7)

    def test_mu_is_cached_per_sample(self, tan_pair_dual):
        lam = tan_pair_dual.lam
        assert len(tan_pair_dual.mu) == len(tan_pair_dual.samples)
        for sample, mu in zip(tan_pair_dual.samples, tan_pair_dual.mu):
            s, c = sin_cos(sample.theta)
            if abs(s.re) < resolve(None).parallel:
                assert mu is None
                continue
            expected = lam * c / s
            assert mu.re == pytest.approx(expected.re, rel=1e-12)
            assert mu.du == pytest.approx(expected.du, rel=1e-12, abs=1e-12)

    def test_pair_check_rejects_concentric_helices(self, helix):
        concentric = ExprCurve(HelixExpr(1.5, 4.0), None, (0.0, 2.0 * math.pi))
        pair, report = pair_check(helix, concentric, samples=64)
        assert pair is None
        assert not report.passed
        assert report.get("normal_binormal").max_residual_re == pytest.approx(1.0, abs=1e-6)

    def test_failure_carries_report(self):
        err = PairValidationFailed("failed", TheoremReport(pair={"lambda": {"re": 1.0, "du": 0.0}}))
        assert err.to_dict()["report"]["pair"]["lambda"]["re"] == 1.0


class TestVerifyTheorems:
    @pytest.mark.parametrize("fixture", ["tan_pair", "tan_pair_dual", "tan_pair_dual_torsion"])
    def test_all_relations_hold(self, fixture, request):
        pair = request.getfixturevalue(fixture)
        report = verify_theorems(pair)
        assert report.passed, [c.to_dict() for c in report.failures()]
        for name in PAIR_RELATIONS[1:]:
            check = report.get(name)
            assert check.max_residual_re < 1e-6 and check.max_residual_du < 1e-6, name

    def test_distance_between_corresponding_points(self, tan_pair_dual):
        check = verify_theorems(tan_pair_dual).get("thm2_distance")
        assert check.max_residual_re < 1e-7 and check.max_residual_du < 1e-7

    def test_printed_forms_are_reported(self, tan_pair):
        report = verify_theorems(tan_pair)
        for name in ("thm1_condition", "thm4_torsion", "eq9_eq10_angle", "thm8_ii", "cor4"):
            assert report.get(name).printed_residual_re is not None

    def test_squared_curvature_relation(self, tan_pair):
        check = verify_theorems(tan_pair).get("cor4")
        assert check.passed
        # the first-power form misses the factor ds̃₁/ds̃
        assert check.printed_residual_re > 1e-3

    def test_schell_product_is_not_constant(self, tan_pair):
        check = verify_theorems(tan_pair).get("cor2_schell")
        assert check.expect_nonconstant
        assert check.passed and check.max_residual_re > 0.01

    def test_mu_relation_skips_ill_conditioned_samples(self, tan_pair):
        floor = max(resolve(None).parallel, config.MU_MIN_SIN)
        expected = sum(abs(sin_cos(p.theta)[0].re) < floor for p in tan_pair.samples)
        check = verify_theorems(tan_pair).get("thm7_linear")
        assert check.skipped == expected
        assert check.samples == len(tan_pair.samples) - expected
        if expected:
            assert f"{floor:g}" in check.note

    def test_diagnostics_do_not_decide_verdict(self, tan_pair):
        report = verify_theorems(tan_pair)
        assert report.get("thm7_mu_constant").diagnostic
        assert report.get("cor3_linear").diagnostic
        assert report.get("thm7_linear").skipped >= 0


class TestOsculatingRatio:
    def test_ratio_varies_along_pair(self, tan_pair):
        osc = osculating_ratio(tan_pair)
        assert not osc.is_constant
        assert osc.spread > 0.01
        assert osc.radius_deviation < 1e-9
        assert len(osc.ratio) == len(tan_pair.samples)
        assert "ratio" in osc.to_dict()


class TestSingleCurveConditions:
    def test_helix_condition(self, helix):
        exact = check_mannheim_condition(helix, 3.0).get("thm1_condition")
        perturbed = check_mannheim_condition(helix, 3.03).get("thm1_condition")
        assert exact.max_residual_re < 1e-12 and exact.max_residual_du < 1e-12
        assert perturbed.max_residual_re > 1e-3

    def test_partner_ode(self, tan_pair):
        check = check_partner_ode(tan_pair.curve_c1, tan_pair.lam).get("partner_ode")
        assert check.passed

    def test_partner_ode_with_dual_offset_and_torsion(self, tan_pair_dual_torsion):
        report = check_partner_ode(tan_pair_dual_torsion.curve_c1, DualScalar(1.0, 0.25))
        check = report.get("partner_ode")
        assert check.passed
        assert check.max_residual_re < 1e-9 and check.max_residual_du < 1e-9
        assert report.pair["lambda"] == {"re": 1.0, "du": 0.25}

    def test_partner_ode_with_wrong_offset(self, tan_pair):
        check = check_partner_ode(tan_pair.curve_c1, 2.0).get("partner_ode")
        assert not check.passed

    def test_pure_dual_lambda(self, helix):
        with pytest.raises(PureDualLambda):
            check_mannheim_condition(helix, DualScalar(0.0, 2.0))


class TestOffsets:
    def test_partner_of_helix_is_coaxial_helix(self, helix):
        partner = partner_from_mannheim(helix, 1.5)
        for s in partner.grid(9):
            p = partner.eval(s)
            assert math.hypot(p.re[0], p.re[1]) == pytest.approx(1.5, abs=1e-9)
            np.testing.assert_allclose(p.du, 0.0, atol=1e-12)

    def test_critical_offset_gives_axis(self, helix):
        partner = partner_from_mannheim(helix, 3.0)
        for s in partner.grid(5):
            np.testing.assert_allclose(partner.eval(s).re[:2], 0.0, atol=1e-9)

    def test_circle_at_its_radius_collapses(self):
        circle = ExprCurve(CircleExpr(2.0), None, (0.0, 2.0 * math.pi))
        with pytest.raises(DegeneratePartner):
            partner_from_mannheim(circle, 2.0)

    def test_negative_offset_moves_away_from_axis(self, helix):
        partner = partner_from_mannheim(helix, -3.0)
        for s in partner.grid(9):
            p = partner.eval(s)
            assert math.hypot(p.re[0], p.re[1]) == pytest.approx(6.0, abs=1e-9)

    def test_mannheim_from_partner_is_offset_along_binormal(self, tan_pair):
        c1 = tan_pair.curve_c1
        c = mannheim_from_partner(c1, DualScalar(0.5))
        for s in c.grid(7):
            # c is parameterized by its own arc length; compare against the base offset
            u = c.t_of(s)
            f1 = frenet(c1, u)
            expected = c1.eval(u) + f1.b_vec * 0.5
            np.testing.assert_allclose(c.eval(s).as_array(), expected.as_array(), atol=1e-9)

    def test_mannheim_curvature_profile(self):
        kappa1 = MannheimCurvature(DualScalar(1.0), TanProfile())
        assert kappa1.value(0.0) == DualScalar(1.0, 0.0)
        h = 1e-4
        fd = (kappa1.value(0.3 + h).re - kappa1.value(0.3 - h).re) / (2 * h)
        assert kappa1.derivative(0.3).re == pytest.approx(fd, rel=1e-6)
        assert kappa1.to_dict()["kind"] == "mannheim_curvature"


class TestLinePartner:
    def test_partner_stays_in_plane(self):
        report = check_line_partner(
            DualVec3([1.0, 0.0, 0.0], [0.0, 0.0, 0.0]),
            DualVec3([0.0, 0.0, 0.0], [0.0, 0.0, 0.0]),
            DualVec3([0.0, 1.0, 0.0], [0.0, 0.0, 0.0]),
            2.0,
        )
        assert report.passed
        assert report.names() == ["cor1_plane", "cor1_partner_straight"]

    def test_normal_must_be_perpendicular(self):
        with pytest.raises(InvalidCurveDefinition):
            check_line_partner(
                DualVec3([1.0, 0.0, 0.0], [0.0, 0.0, 0.0]),
                DualVec3([0.0, 0.0, 0.0], [0.0, 0.0, 0.0]),
                DualVec3([1.0, 1.0, 0.0], [0.0, 0.0, 0.0]),
                2.0,
            )
