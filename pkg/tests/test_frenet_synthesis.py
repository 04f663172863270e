import numpy as np
import pytest

from core.curve_catalog import ConstProfile, PolyProfile
from core.dual_algebra import DualScalar
from core.dual_curve import frenet
from core.dual_linear import DualVec3
from core.errors import InvalidCurveDefinition, ProfileSingularity, StepTooLarge
from core.frenet_synthesis import integrate_frenet, profile_from_dict, profile_to_dict
from models.geometry import FrenetProfile

KAPPA = DualScalar(0.12, -0.012)
TAU = DualScalar(0.16, -0.016)


@pytest.fixture(scope="module")
def dual_helix_curve():
    return integrate_frenet(FrenetProfile(ConstProfile(KAPPA), ConstProfile(TAU), (0.0, 5.0)), 1e-3)


class TestIntegration:
    def test_unit_circle_endpoint(self):
        curve = integrate_frenet(FrenetProfile(1.0, 0.0, (0.0, np.pi)), 1e-3)
        np.testing.assert_allclose(curve.eval(np.pi).re, [0.0, 2.0, 0.0], atol=1e-9)

    def test_profiles_are_reproduced(self, dual_helix_curve):
        for s in np.linspace(0.0, 5.0, 11):
            f = frenet(dual_helix_curve, s)
            assert f.kappa.re == pytest.approx(KAPPA.re, abs=1e-6)
            assert f.kappa.du == pytest.approx(KAPPA.du, abs=1e-6)
            assert f.tau.re == pytest.approx(TAU.re, abs=1e-6)
            assert f.tau.du == pytest.approx(TAU.du, abs=1e-6)

    def test_unit_dual_speed(self, dual_helix_curve):
        d1 = dual_helix_curve.derivative(2.5, 1)
        assert np.linalg.norm(d1.re) == pytest.approx(1.0, abs=1e-12)
        assert np.dot(d1.re, d1.du) == pytest.approx(0.0, abs=1e-12)

    def test_curvature_rates_come_from_profile(self):
        profile = FrenetProfile(PolyProfile([1.0, 0.5]), PolyProfile([0.0, 0.0, 1.0]), (0.0, 1.0))
        curve = integrate_frenet(profile)
        dk, dt = curve.curvature_rates(0.5)
        assert dk == DualScalar(0.5, 0.0)
        assert dt == DualScalar(1.0, 0.0)

    def test_real_only_drops_dual_parts(self):
        profile = FrenetProfile(ConstProfile(KAPPA), ConstProfile(TAU), (0.0, 1.0))
        curve = integrate_frenet(profile, real_only=True)
        f = frenet(curve, 0.5)
        assert f.kappa.du == pytest.approx(0.0, abs=1e-12)
        assert f.kappa.re == pytest.approx(KAPPA.re, abs=1e-9)
        # the real parts integrate independently of the dual parts
        full = integrate_frenet(profile)
        np.testing.assert_allclose(curve.eval(1.0).re, full.eval(1.0).re, atol=1e-12)


class TestErrors:
    def test_non_positive_curvature(self):
        profile = FrenetProfile(PolyProfile([0.5, -1.0]), 0.0, (0.0, 1.0))
        with pytest.raises(ProfileSingularity):
            integrate_frenet(profile)

    def test_step_too_large(self):
        profile = FrenetProfile(3.0, 3.0, (0.0, 2.0))
        with pytest.raises(StepTooLarge):
            integrate_frenet(profile, 0.5)

    def test_non_positive_step(self):
        with pytest.raises(InvalidCurveDefinition):
            integrate_frenet(FrenetProfile(1.0, 0.0, (0.0, 1.0)), 0.0)

    def test_empty_range(self):
        with pytest.raises(InvalidCurveDefinition):
            FrenetProfile(1.0, 0.0, (1.0, 1.0))

    def test_frame_must_be_orthonormal(self):
        frame = (DualVec3([1, 0, 0], [0, 0, 0]), DualVec3([1, 1, 0], [0, 0, 0]), DualVec3([0, 0, 1], [0, 0, 0]))
        with pytest.raises(InvalidCurveDefinition):
            FrenetProfile(1.0, 0.0, (0.0, 1.0), initial_frame=frame)


class TestProfileJson:
    def test_round_trip(self):
        data = {"kappa": {"kind": "const", "re": 1.0, "du": 0.1}, "tau": {"kind": "tan"}, "s_range": [-1, 1], "step": 0.002}
        profile, step = profile_from_dict(data)
        assert step == 0.002
        assert profile.s_range == (-1.0, 1.0)
        again, _ = profile_from_dict(profile_to_dict(profile, step))
        assert again.to_dict() == profile.to_dict()

    @pytest.mark.parametrize("data", [
        {"tau": 0.0, "s_range": [0, 1]},
        {"kappa": 1.0, "tau": 0.0},
        {"kappa": 1.0, "tau": 0.0, "s_range": [0, 1], "initial_frame": [{"re": [1, 0, 0]}]},
        "not a profile",
    ])
    def test_malformed(self, data):
        with pytest.raises(InvalidCurveDefinition):
            profile_from_dict(data)
