"""
DUALFRENET Frenet Synthesis
Builds dual curves from prescribed dual curvature and torsion by integrating
dα̃/ds = t̃, dt̃/ds = κ̃ñ, dñ/ds = -κ̃t̃ + τ̃b̃, db̃/ds = -τ̃ñ with classical RK4
carried out in dual arithmetic over real arc length.
"""

import logging
import math
from typing import Any, Dict, Optional, Tuple

import numpy as np

import config
from core.curve_catalog import RealPartProfile, ScalarExpr, parse_scalar_expr
from core.dual_algebra import DualScalar
from core.dual_curve import HermiteCurve
from core.dual_linear import DualVec3, cross, dot, normalize
from core.errors import InvalidCurveDefinition, ProfileSingularity, StepTooLarge
from models.geometry import FrenetProfile
from models.tolerances import Tolerances, resolve

logger = logging.getLogger(__name__)


class SynthesizedCurve(HermiteCurve):
    """Unit-speed curve from integration; curvature rates come from the profile."""

    def __init__(self, nodes, jets, profile: FrenetProfile, step: float, max_drift: float):
        super().__init__(nodes, jets)
        self.profile = profile
        self.step = step
        self.max_drift = max_drift

    def curvature_rates(self, t: float, tol: Optional[Tolerances] = None) -> Tuple[DualScalar, DualScalar]:
        return self.profile.kappa_fn.derivative(t, 1), self.profile.tau_fn.derivative(t, 1)


def _scaled(k: DualScalar, re: np.ndarray, du: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    return k.re * re, k.re * du + k.du * re


class FrenetIntegrator:
    """Fixed-step RK4 on the dual Frenet system with per-step re-orthonormalization."""

    def __init__(self, profile: FrenetProfile, tol: Optional[Tolerances] = None, real_only: bool = False):
        self.profile = profile
        self.tol = resolve(tol)
        self.real_only = real_only
        self.kappa: ScalarExpr = RealPartProfile(profile.kappa_fn) if real_only else profile.kappa_fn
        self.tau: ScalarExpr = RealPartProfile(profile.tau_fn) if real_only else profile.tau_fn

    def _curvature(self, s: float) -> DualScalar:
        k = self.kappa.value(s)
        if not k.re > 0.0:
            raise ProfileSingularity(
                f"Prescribed curvature is not positive at s={s:.12g} (κ={k.re:.6g})",
                {"s": s, "kappa": k.to_dict()},
            )
        return k

    def _rhs(self, s: float, re: np.ndarray, du: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        k = self._curvature(s)
        tau = self.tau.value(s)
        t_re, n_re, b_re = re[1], re[2], re[3]
        t_du, n_du, b_du = du[1], du[2], du[3]
        kn = _scaled(k, n_re, n_du)
        kt = _scaled(k, t_re, t_du)
        tb = _scaled(tau, b_re, b_du)
        tn = _scaled(tau, n_re, n_du)
        d_re = np.array([t_re, kn[0], -kt[0] + tb[0], -tn[0]])
        d_du = np.array([t_du, kn[1], -kt[1] + tb[1], -tn[1]])
        return d_re, d_du

    def _drift(self, re: np.ndarray, du: np.ndarray) -> float:
        frame_re, frame_du = re[1:], du[1:]
        gram_re = frame_re @ frame_re.T - np.eye(3)
        gram_du = frame_re @ frame_du.T + frame_du @ frame_re.T
        return float(max(np.max(np.abs(gram_re)), np.max(np.abs(gram_du))))

    def _orthonormalize(self, re: np.ndarray, du: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        t_vec = normalize(DualVec3(re[1], du[1]), self.tol)
        n_raw = DualVec3(re[2], du[2])
        n_vec = normalize(n_raw - t_vec * dot(n_raw, t_vec), self.tol)
        b_vec = cross(t_vec, n_vec)
        return (
            np.array([re[0], t_vec.re, n_vec.re, b_vec.re]),
            np.array([du[0], t_vec.du, n_vec.du, b_vec.du]),
        )

    def _jet(self, s: float, re: np.ndarray, du: np.ndarray) -> np.ndarray:
        """Rows α̃, α̃′ = t̃, α̃″ = κ̃ñ, α̃‴ = κ̃′ñ + κ̃(-κ̃t̃ + τ̃b̃), each [re, du]."""
        a, t, n, b = (DualVec3(re[k], du[k]) for k in range(4))
        k = self.kappa.value(s)
        dk = self.kappa.derivative(s, 1)
        tau = self.tau.value(s)
        third = n * dk + (t * (-(k * k)) + b * (k * tau))
        return np.array([a.as_array(), t.as_array(), (n * k).as_array(), third.as_array()])

    def run(self, step: float) -> SynthesizedCurve:
        if not step > 0:
            raise InvalidCurveDefinition(f"Integration step must be positive, got {step!r}")
        a, b = self.profile.s_range
        n_steps = max(1, int(math.ceil((b - a) / step - 1e-12)))
        h = (b - a) / n_steps

        p = self.profile
        re = np.array([p.initial_point.re] + [v.re for v in p.initial_frame], dtype=float)
        du = np.array([p.initial_point.du] + [v.du for v in p.initial_frame], dtype=float)
        if self.real_only:
            du = np.zeros_like(du)

        nodes = a + h * np.arange(n_steps + 1)
        nodes[-1] = b
        jets = np.empty((n_steps + 1, 4, 6))
        jets[0] = self._jet(nodes[0], re, du)
        max_drift = 0.0

        # ── RK4 sweep ────────────────────────────────────────────────────────
        for i in range(n_steps):
            s = nodes[i]
            k1 = self._rhs(s, re, du)
            k2 = self._rhs(s + 0.5 * h, re + 0.5 * h * k1[0], du + 0.5 * h * k1[1])
            k3 = self._rhs(s + 0.5 * h, re + 0.5 * h * k2[0], du + 0.5 * h * k2[1])
            k4 = self._rhs(s + h, re + h * k3[0], du + h * k3[1])
            re = re + (h / 6.0) * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0])
            du = du + (h / 6.0) * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])

            drift = self._drift(re, du)
            if drift > self.tol.drift:
                raise StepTooLarge(
                    f"Frame drift {drift:.3e} per step exceeds {self.tol.drift:.1e} (h={h:.3e})",
                    {"step": h, "drift": drift, "s": float(nodes[i + 1])},
                )
            max_drift = max(max_drift, drift)
            re, du = self._orthonormalize(re, du)
            jets[i + 1] = self._jet(nodes[i + 1], re, du)

        profile = p
        if self.real_only:
            profile = FrenetProfile(self.kappa, self.tau, p.s_range)
        curve = SynthesizedCurve(
            nodes, [jets[:, k, :] for k in range(4)], profile=profile, step=h, max_drift=max_drift
        )
        logger.info(
            f"Integrated Frenet profile over [{a:.6g}, {b:.6g}]: {n_steps} steps, "
            f"h={h:.3e}, max drift={max_drift:.3e}"
        )
        return curve


def integrate_frenet(
    profile: FrenetProfile,
    step: float = config.DEFAULT_STEP,
    tol: Optional[Tolerances] = None,
    real_only: bool = False,
) -> SynthesizedCurve:
    """Synthesize the dual curve with the prescribed curvature and torsion."""
    return FrenetIntegrator(profile, tol, real_only).run(step)


def profile_from_dict(data: Any) -> Tuple[FrenetProfile, float]:
    """
    Parse {"kappa": expr, "tau": expr, "s_range": [a, b], "step": h} with
    optional "initial_point" and "initial_frame" (three dual vectors).
    """
    if not isinstance(data, dict):
        raise InvalidCurveDefinition("Profile definition must be a JSON object")
    try:
        kappa = parse_scalar_expr(data["kappa"])
        tau = parse_scalar_expr(data["tau"])
        s_range = (float(data["s_range"][0]), float(data["s_range"][1]))
        step = float(data.get("step", config.DEFAULT_STEP))
        initial_point = DualVec3.from_dict(data["initial_point"]) if "initial_point" in data else DualVec3.zero()
        frame = data.get("initial_frame")
        initial_frame = tuple(DualVec3.from_dict(v) for v in frame) if frame is not None else None
    except KeyError as e:
        raise InvalidCurveDefinition(f"Profile definition is missing {e}")
    except (TypeError, ValueError, IndexError) as e:
        raise InvalidCurveDefinition(f"Malformed profile definition: {e}")
    if initial_frame is not None and len(initial_frame) != 3:
        raise InvalidCurveDefinition("initial_frame must list three dual vectors")
    return FrenetProfile(kappa, tau, s_range, initial_point, initial_frame), step


def profile_to_dict(profile: FrenetProfile, step: float) -> Dict[str, Any]:
    data = profile.to_dict()
    data["step"] = step
    return data
