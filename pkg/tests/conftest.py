"""Shared fixtures: catalog curves and generated Mannheim pairs."""

import math

import pytest

import config
from core.curve_catalog import HelixExpr, ScaledExpr, TanProfile
from core.dual_algebra import DualScalar
from core.dual_curve import ExprCurve
from core.mannheim import generate_pair


@pytest.fixture(autouse=True)
def no_log_file(monkeypatch):
    monkeypatch.setattr(config, "LOG_FILE", "")


@pytest.fixture
def helix():
    """Real helix a=3, b=4: κ = 0.12, τ = 0.16."""
    return ExprCurve(HelixExpr(3.0, 4.0), None, (0.0, 2.0 * math.pi))


@pytest.fixture
def dual_helix():
    """Helix with dual part 0.1·α: κ̃ = (0.12, -0.012), τ̃ = (0.16, -0.016)."""
    return ExprCurve(HelixExpr(3.0, 4.0), ScaledExpr(0.1, HelixExpr(3.0, 4.0)), (0.0, 2.0 * math.pi))


@pytest.fixture(scope="session")
def tan_pair():
    return generate_pair(DualScalar(1.0, 0.0), TanProfile(), (-1.0, 1.0))


@pytest.fixture(scope="session")
def tan_pair_dual():
    return generate_pair(DualScalar(1.0, 0.25), TanProfile(), (-1.0, 1.0))


@pytest.fixture(scope="session")
def tan_pair_dual_torsion():
    """τ̃₁ = tan(s + 0.1ε) = (tan s, 0.1·sec² s) with λ̃ = (1, 0.25)."""
    return generate_pair(DualScalar(1.0, 0.25), TanProfile(shift=DualScalar(0.0, 0.1)), (-1.0, 1.0))
