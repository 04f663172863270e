"""
DUALFRENET Mannheim Engine
Constructs dual Mannheim pairs, establishes their validity numerically and
verifies the relations between the two Frenet apparatuses.

Orientation conventions
-----------------------
Both frames are natural (κ̃.re ≥ 0). The pair orientation ν = sign⟨ñ, b̃₁⟩.re is
read at the first verification sample and held. λ̃ = ⟨α̃ - α̃₁, b̃₁⟩ and the
signed dual angle θ̃ satisfies t̃ = cos θ̃ t̃₁ + sin θ̃ ñ₁. Every relation is
evaluated in the form that holds under ν; the commonly printed form (which
assumes one particular orientation) is reported next to it.
"""

import logging
import math
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.interpolate import make_interp_spline
from scipy.optimize import brentq, minimize_scalar

import config
from core.curve_catalog import LineExpr, ScalarExpr, as_profile
from core.dual_algebra import DualScalar, sin_cos, sqrt
from core.dual_curve import ArcLengthCurve, DualCurve, ExprCurve, HermiteCurve, classify_straight_line, frenet
from core.dual_linear import DualVec3, cross, dot, norm
from core.errors import (
    DegeneratePartner,
    InvalidCurveDefinition,
    NoCorrespondence,
    NonPositiveRealPart,
    PairValidationFailed,
    PureDualLambda,
    VanishingCurvature,
)
from core.frenet_synthesis import SynthesizedCurve, integrate_frenet
from models.geometry import (
    CheckResult,
    FrenetData,
    FrenetProfile,
    MannheimPair,
    OsculatingReport,
    PairSample,
    TheoremReport,
)
from models.tolerances import Tolerances, resolve
from utils.helpers import gradient4, ordered_map, relative_spread

logger = logging.getLogger(__name__)


def _require_lambda(lam: Any, tol: Tolerances) -> DualScalar:
    lam = DualScalar.coerce(lam)
    if abs(lam.re) <= tol.zero:
        raise PureDualLambda(
            f"Offset constant {lam!r} is pure dual; a Mannheim offset needs a real part",
            {"lambda": lam.to_dict()},
        )
    return lam


def _parts(values: Sequence[DualScalar]) -> Tuple[np.ndarray, np.ndarray]:
    return np.array([v.re for v in values]), np.array([v.du for v in values])


# ═══════════════════════════════════════════════════════════════════════════
# Constructors
# ═══════════════════════════════════════════════════════════════════════════

def _offset_nodes(c: DualCurve) -> np.ndarray:
    if isinstance(c, HermiteCurve):
        return c.nodes
    return c.grid(config.OFFSET_NODES)


def _third_jet(nodes: np.ndarray, second: np.ndarray) -> np.ndarray:
    degree = 5 if nodes.size >= 6 else (3 if nodes.size >= 4 else 1)
    return make_interp_spline(nodes, second, k=degree, axis=0).derivative()(nodes)


def _offset_curve(nodes: np.ndarray, jets: List[np.ndarray], tol: Tolerances, what: str) -> ArcLengthCurve:
    speed = np.linalg.norm(jets[1][:, :3], axis=1)
    if np.any(speed < tol.zero):
        k = int(np.argmin(speed))
        raise DegeneratePartner(
            f"{what} collapses: real speed {speed[k]:.3e} at parameter {nodes[k]:.12g}",
            {"parameter": float(nodes[k]), "speed": float(speed[k])},
        )
    jets.append(_third_jet(nodes, jets[2]))
    return ArcLengthCurve(HermiteCurve(nodes, jets), tol=tol)


DualArray = Tuple[np.ndarray, np.ndarray]


def _dmul(a: DualArray, b: DualArray) -> DualArray:
    return a[0] * b[0], a[0] * b[1] + a[1] * b[0]


def _dsum(*terms: DualArray) -> DualArray:
    return sum(t[0] for t in terms), sum(t[1] for t in terms)


def _vscale(k: DualArray, v: DualArray) -> DualArray:
    return k[0][:, None] * v[0], k[0][:, None] * v[1] + k[1][:, None] * v[0]


class MannheimOffsetCurve(DualCurve):
    """
    α̃₁ + λ̃b̃₁ over a synthesized (unit dual speed) partner. Jets up to the
    third order follow from the partner frame and its profile derivatives, so
    the offset stays exact between integration nodes and through inflections.
    """

    def __init__(self, partner: SynthesizedCurve, lam: DualScalar):
        self.partner = partner
        self.lam = lam
        self.domain = partner.domain

    def _profile(self, ts: np.ndarray) -> Dict[str, DualArray]:
        kappa, tau = self.partner.profile.kappa_fn, self.partner.profile.tau_fn
        series = {
            "k": [kappa.value(t) for t in ts],
            "dk": [kappa.derivative(t, 1) for t in ts],
            "tau": [tau.value(t) for t in ts],
            "dtau": [tau.derivative(t, 1) for t in ts],
            "ddtau": [tau.derivative(t, 2) for t in ts],
        }
        return {name: _parts(values) for name, values in series.items()}

    def derivative_array(self, ts: Sequence[float], order: int) -> np.ndarray:
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        p = self._profile(ts)
        lam: DualArray = (np.full(ts.size, self.lam.re), np.full(ts.size, self.lam.du))
        k, dk, tau, dtau, ddtau = p["k"], p["dk"], p["tau"], p["dtau"], p["ddtau"]

        d1 = self.partner.derivative_array(ts, 1)
        d2 = self.partner.derivative_array(ts, 2)
        t_vec = (d1[:, :3], d1[:, 3:])
        n_re = d2[:, :3] / k[0][:, None]
        n_vec = (n_re, (d2[:, 3:] - k[1][:, None] * n_re) / k[0][:, None])
        b_vec = (np.cross(t_vec[0], n_vec[0]),
                 np.cross(t_vec[0], n_vec[1]) + np.cross(t_vec[1], n_vec[0]))

        lt = _dmul(lam, tau)
        if order == 0:
            a = self.partner.eval_array(ts)
            off = _vscale(lam, b_vec)
            return np.hstack([a[:, :3] + off[0], a[:, 3:] + off[1]])
        if order == 1:
            coeffs = ((np.ones(ts.size), np.zeros(ts.size)), (-lt[0], -lt[1]), None)
        elif order == 2:
            k_minus = (k[0] - _dmul(lam, dtau)[0], k[1] - _dmul(lam, dtau)[1])
            lt2 = _dmul(lt, tau)
            coeffs = (_dmul(lt, k), k_minus, (-lt2[0], -lt2[1]))
        elif order == 3:
            ldt = _dmul(lam, dtau)
            kk = _dmul(k, k)
            t_part = _dsum(_dmul((2.0 * ldt[0], 2.0 * ldt[1]), k), _dmul(lt, dk), (-kk[0], -kk[1]))
            lddt = _dmul(lam, ddtau)
            n_part = _dsum(_dmul(lt, kk), dk, (-lddt[0], -lddt[1]), _dmul(lt, _dmul(tau, tau)))
            ltdt = _dmul(lt, dtau)
            b_part = _dsum(_dmul(tau, k), (-3.0 * ltdt[0], -3.0 * ltdt[1]))
            coeffs = (t_part, n_part, b_part)
        else:
            raise ValueError(f"Unsupported derivative order {order}")

        terms = [_vscale(c, v) for c, v in zip(coeffs, (t_vec, n_vec, b_vec)) if c is not None]
        re = sum(t[0] for t in terms)
        du = sum(t[1] for t in terms)
        return np.hstack([re, du])

    def eval(self, t: float) -> DualVec3:
        return DualVec3.from_array(self.derivative_array([t], 0)[0])

    def eval_array(self, ts: Sequence[float]) -> np.ndarray:
        return self.derivative_array(ts, 0)

    def derivative(self, t: float, order: int) -> DualVec3:
        return DualVec3.from_array(self.derivative_array([t], order)[0])


def mannheim_from_partner(c1: DualCurve, lam: Any, tol: Optional[Tolerances] = None) -> ArcLengthCurve:
    """Offset curve α̃₁ + λ̃b̃₁, reparameterized by its own real arc length."""
    tol = resolve(tol)
    lam = _require_lambda(lam, tol)
    if isinstance(c1, SynthesizedCurve):
        offset = MannheimOffsetCurve(c1, lam)
        nodes = c1.nodes
        speed = np.linalg.norm(offset.derivative_array(nodes, 1)[:, :3], axis=1)
        if np.any(speed < tol.zero):
            k = int(np.argmin(speed))
            raise DegeneratePartner(
                f"Mannheim offset collapses: real speed {speed[k]:.3e} at parameter {nodes[k]:.12g}",
                {"parameter": float(nodes[k]), "speed": float(speed[k])},
            )
        curve = ArcLengthCurve(offset, tol=tol)
        logger.info(f"Built Mannheim curve from synthesized partner: λ̃={lam!r}, L={curve.length:.12g}")
        return curve

    nodes = _offset_nodes(c1)
    f0, f1, f2 = (np.empty((nodes.size, 6)) for _ in range(3))

    for i, u in enumerate(nodes):
        d1, d2 = c1.derivative(u, 1), c1.derivative(u, 2)
        fr = frenet(c1, u, tol)
        _, dtau = c1.curvature_rates(u, tol)
        sigma = fr.speed
        sigma_rate = dot(d1, d2) / sigma
        lt = lam * fr.tau
        along = fr.t_vec - fr.n_vec * lt
        turn = (fr.n_vec * (sigma * fr.kappa)
                - fr.n_vec * (lam * dtau)
                - (fr.t_vec * (-fr.kappa) + fr.b_vec * fr.tau) * (lt * sigma))
        f0[i] = (c1.eval(u) + fr.b_vec * lam).as_array()
        f1[i] = (along * sigma).as_array()
        f2[i] = (along * sigma_rate + turn * sigma).as_array()

    curve = _offset_curve(nodes, [f0, f1, f2], tol, "Mannheim offset")
    logger.info(f"Built Mannheim curve from partner: λ̃={lam!r}, {nodes.size} nodes, L={curve.length:.12g}")
    return curve


def partner_from_mannheim(c: DualCurve, lam: Any, tol: Optional[Tolerances] = None) -> ArcLengthCurve:
    """Partner α̃ + λ̃ñ (binormal-aligned normal), reparameterized by its own real arc length."""
    tol = resolve(tol)
    lam = _require_lambda(lam, tol)
    nodes = _offset_nodes(c)
    f0, f1, f2 = (np.empty((nodes.size, 6)) for _ in range(3))

    for i, u in enumerate(nodes):
        d1, d2 = c.derivative(u, 1), c.derivative(u, 2)
        fr = frenet(c, u, tol)
        dkappa, dtau = c.curvature_rates(u, tol)
        sigma = fr.speed
        sigma_rate = dot(d1, d2) / sigma
        lk = 1.0 - lam * fr.kappa
        lt = lam * fr.tau
        along = fr.t_vec * lk + fr.b_vec * lt
        turn = (fr.t_vec * (-(lam * dkappa))
                + fr.n_vec * (sigma * (lk * fr.kappa - lt * fr.tau))
                + fr.b_vec * (lam * dtau))
        f0[i] = (c.eval(u) + fr.n_vec * lam).as_array()
        f1[i] = (along * sigma).as_array()
        f2[i] = (along * sigma_rate + turn * sigma).as_array()

    curve = _offset_curve(nodes, [f0, f1, f2], tol, "Mannheim partner")
    logger.info(f"Built Mannheim partner: λ̃={lam!r}, {nodes.size} nodes, L={curve.length:.12g}")
    return curve


class MannheimCurvature(ScalarExpr):
    """κ̃₁ = λ̃τ̃₁′ / (1 + λ̃²τ̃₁²): the partner curvature forced by a torsion profile."""
    kind = "mannheim_curvature"

    def __init__(self, lam: DualScalar, tau: ScalarExpr):
        self.lam = lam
        self.tau = tau

    def value(self, s: float) -> DualScalar:
        tau = self.tau.value(s)
        return self.lam * self.tau.derivative(s, 1) / (1.0 + self.lam * self.lam * tau * tau)

    def derivative(self, s: float, order: int = 1) -> DualScalar:
        if order == 0:
            return self.value(s)
        if order != 1:
            raise ValueError("Mannheim curvature profiles expose the first derivative only")
        lam2 = self.lam * self.lam
        tau = self.tau.value(s)
        d1 = self.tau.derivative(s, 1)
        d2 = self.tau.derivative(s, 2)
        denom = 1.0 + lam2 * tau * tau
        return self.lam * d2 / denom - self.lam * d1 * (2.0 * lam2 * tau * d1) / (denom * denom)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "lambda": self.lam.to_dict(), "tau": self.tau.to_dict()}


# ═══════════════════════════════════════════════════════════════════════════
# Pair validation
# ═══════════════════════════════════════════════════════════════════════════

class _Projector:
    """Nearest-point projection onto a curve, refined by ⟨P - α₁(u), α₁′(u)⟩ = 0."""

    def __init__(self, c1: DualCurve):
        self.c1 = c1
        self.grid = c1.grid(config.PROJECTION_GRID)
        self.positions = c1.eval_array(self.grid)[:, :3]

    def _foot_gap(self, u: float, point: np.ndarray) -> float:
        return float(np.dot(point - self.c1.eval(u).re, self.c1.derivative(u, 1).re))

    def __call__(self, point: np.ndarray) -> float:
        k = int(np.argmin(np.sum((self.positions - point) ** 2, axis=1)))
        lo = self.grid[max(k - 1, 0)]
        hi = self.grid[min(k + 1, self.grid.size - 1)]
        g_lo, g_hi = self._foot_gap(lo, point), self._foot_gap(hi, point)
        if g_lo == 0.0:
            return float(lo)
        if g_hi == 0.0:
            return float(hi)
        if g_lo * g_hi < 0.0:
            return float(brentq(self._foot_gap, lo, hi, args=(point,), xtol=1e-14, rtol=4 * np.finfo(float).eps))
        res = minimize_scalar(
            lambda u: float(np.sum((point - self.c1.eval(u).re) ** 2)),
            bounds=(lo, hi),
            method="bounded",
            options={"xatol": 1e-12},
        )
        return float(res.x)


def _mu(lam: DualScalar, theta: DualScalar, tol: Tolerances) -> Optional[DualScalar]:
    s, c = sin_cos(theta)
    if abs(s.re) < tol.parallel:
        return None
    return lam * c / s


def _signed_angle(f: FrenetData, f1: FrenetData) -> DualScalar:
    cos_part = dot(f.t_vec, f1.t_vec)
    sin_part = dot(f.t_vec, f1.n_vec)
    theta = math.atan2(sin_part.re, cos_part.re)
    return DualScalar(theta, sin_part.du * math.cos(theta) - cos_part.du * math.sin(theta))


def pair_check(
    c: DualCurve,
    c1: DualCurve,
    tol: Optional[Tolerances] = None,
    samples: int = config.PAIR_SAMPLES,
    margin: float = config.PAIR_MARGIN,
    parallel: bool = False,
) -> Tuple[Optional[MannheimPair], TheoremReport]:
    """
    Build the correspondence from C̃ onto C̃₁ and test that the principal normal
    lines of C̃ are the binormal lines of C̃₁ at every sample.
    """
    tol = resolve(tol)
    ts = c.grid(samples, margin)
    values = c.eval_array(ts)
    project = _Projector(c1)

    # ── Correspondence ───────────────────────────────────────────────────────
    us = np.array(ordered_map(project, list(values[:, :3]), parallel))
    u0, u1 = c1.domain
    edge = 1e-9 * (u1 - u0)
    if np.any(us <= u0 + edge) or np.any(us >= u1 - edge):
        raise NoCorrespondence("Projection reached the end of the partner curve", {"t1_range": [u0, u1]})
    if not np.all(np.diff(us) > 0):
        k = int(np.argmin(np.diff(us)))
        raise NoCorrespondence(
            f"Correspondence is not strictly increasing near t={ts[k]:.12g}",
            {"t": float(ts[k]), "t1": [float(us[k]), float(us[k + 1])]},
        )

    report = TheoremReport()
    points = [DualVec3.from_array(v) for v in values]
    points1 = [DualVec3.from_array(v) for v in c1.eval_array(us)]
    gaps = [abs(project._foot_gap(u, p.re)) for u, p in zip(us, points)]
    report.add(CheckResult.from_residuals("correspondence", gaps, np.zeros(len(gaps)), tol.pair))

    # ── Frames ───────────────────────────────────────────────────────────────
    try:
        frames = ordered_map(lambda t: frenet(c, t, tol), list(ts), parallel)
    except VanishingCurvature as e:
        report.add(CheckResult(
            name="curve_frame", max_residual_re=math.inf, max_residual_du=math.inf,
            tolerance=tol.pair, samples=len(ts),
            note=f"a sample falls on an inflection of the curve ({e}); change the sample count",
        ))
        report.pair = {"samples": len(ts)}
        logger.warning("pair_check: curve has vanishing curvature at a sample, normal undefined")
        return None, report
    try:
        frames1 = ordered_map(lambda u: frenet(c1, u, tol), list(us), parallel)
    except VanishingCurvature as e:
        report.add(CheckResult(
            name="partner_frame", max_residual_re=math.inf, max_residual_du=math.inf,
            tolerance=tol.pair, samples=len(us),
            note=f"partner is a straight line; its binormal is not unique ({e})",
        ))
        report.pair = {"samples": len(ts), "degenerate_partner": True}
        logger.warning("pair_check: partner curve has vanishing curvature, binormal undefined")
        return None, report

    orientation = 1 if dot(frames[0].n_vec, frames1[0].b_vec).re >= 0 else -1

    # ── Normal / binormal coincidence ────────────────────────────────────────
    par_re, par_du = [], []
    lambdas: List[DualScalar] = []
    pair_samples: List[PairSample] = []
    for t, u, p, p1, f, f1 in zip(ts, us, points, points1, frames, frames1):
        wedge = cross(f.n_vec, f1.b_vec)
        par_re.append(float(np.linalg.norm(wedge.re)))
        par_du.append(float(np.linalg.norm(wedge.du)))
        lam_i = dot(p - p1, f1.b_vec)
        lambdas.append(lam_i)
        pair_samples.append(PairSample(
            t=float(t), t1=float(u), point=p, point1=p1, frenet=f, frenet1=f1,
            theta=_signed_angle(f, f1), lam=lam_i,
        ))
    report.add(CheckResult.from_residuals("normal_binormal", par_re, par_du, tol.pair))

    lam_re, lam_du = _parts(lambdas)
    lam = DualScalar(float(lam_re.mean()), float(lam_du.mean()))
    for sample in pair_samples:
        sample.mu = _mu(lam, sample.theta, tol)
    report.add(CheckResult.from_residuals(
        "lambda_constant", lam_re - lam.re, lam_du - lam.du, tol.pair,
        note=f"λ̃ = ({lam.re:.12g}, {lam.du:.12g})",
    ))

    pair = MannheimPair(curve_c=c, curve_c1=c1, lam=lam, orientation=orientation, samples=pair_samples)
    report.pair = pair.to_dict()
    logger.info(
        f"pair_check: {len(ts)} samples, ñ×b̃₁ max=({max(par_re):.3e}, {max(par_du):.3e}), "
        f"λ̃=({lam.re:.9g}, {lam.du:.9g}), ν={orientation}, pass={report.passed}"
    )
    return (pair if report.passed else None), report


# ═══════════════════════════════════════════════════════════════════════════
# Single-curve conditions
# ═══════════════════════════════════════════════════════════════════════════

def check_mannheim_condition(
    c: DualCurve,
    lam: Any,
    tol: Optional[Tolerances] = None,
    samples: int = config.CHECK_SAMPLES,
) -> TheoremReport:
    """Residual κ̃ - λ̃(κ̃² + τ̃²) over the curve."""
    tol = resolve(tol)
    lam = _require_lambda(lam, tol)
    residuals = []
    for t in c.grid(samples):
        f = frenet(c, t, tol)
        residuals.append(f.kappa - lam * (f.kappa * f.kappa + f.tau * f.tau))
    re, du = _parts(residuals)
    report = TheoremReport(pair={"lambda": lam.to_dict()})
    check = report.add(CheckResult.from_residuals("thm1_condition", re, du, tol.thm))
    logger.info(f"Mannheim condition: λ̃={lam!r} max residual=({check.max_residual_re:.3e}, {check.max_residual_du:.3e})")
    return report


def check_partner_ode(
    c1: DualCurve,
    lam: Any,
    tol: Optional[Tolerances] = None,
    samples: int = config.CHECK_SAMPLES,
) -> TheoremReport:
    """Residual dτ̃₁/ds̃₁ - (κ̃₁/λ̃)(1 + λ̃²τ̃₁²) over the partner curve."""
    tol = resolve(tol)
    lam = _require_lambda(lam, tol)
    residuals = []
    for t in c1.grid(samples):
        f = frenet(c1, t, tol)
        _, dtau = c1.curvature_rates(t, tol)
        tau_rate = dtau / f.speed
        residuals.append(tau_rate - (f.kappa / lam) * (1.0 + lam * lam * f.tau * f.tau))
    re, du = _parts(residuals)
    report = TheoremReport(pair={"lambda": lam.to_dict()})
    check = report.add(CheckResult.from_residuals("partner_ode", re, du, tol.ode))
    logger.info(f"Partner ODE: λ̃={lam!r} max residual=({check.max_residual_re:.3e}, {check.max_residual_du:.3e})")
    return report


def check_line_partner(
    direction: DualVec3,
    offset: DualVec3,
    normal: DualVec3,
    lam: Any,
    s_range: Tuple[float, float] = (0.0, 1.0),
    tol: Optional[Tolerances] = None,
    samples: int = config.CLASSIFY_SAMPLES,
) -> TheoremReport:
    """
    Straight-line side of a Mannheim pair: the offset α̃ + λ̃ñ of the line
    x̃s + ỹ along a constant normal ñ lies in the plane through ỹ spanned by
    x̃ and ñ.
    """
    tol = resolve(tol)
    lam = _require_lambda(lam, tol)
    if abs(dot(direction, normal).re) > tol.unit or abs(dot(direction, normal).du) > tol.unit:
        raise InvalidCurveDefinition("The normal of a straight line must be perpendicular to its direction")
    shifted = offset + normal * lam
    partner = ExprCurve(
        LineExpr(shifted.re, direction.re), LineExpr(shifted.du, direction.du), s_range
    )
    plane_normal = cross(direction, normal)
    residuals = [dot(partner.eval(s) - offset, plane_normal) for s in partner.grid(samples)]
    re, du = _parts(residuals)
    straight = classify_straight_line(partner, samples, tol)

    report = TheoremReport(pair={"lambda": lam.to_dict(), "partner": partner.to_dict()})
    report.add(CheckResult.from_residuals("cor1_plane", re, du, tol.classify))
    report.add(CheckResult(
        name="cor1_partner_straight",
        max_residual_re=straight.max_kappa_re, max_residual_du=straight.max_kappa_du,
        tolerance=tol.classify, samples=straight.samples,
        note="partner along a constant normal is a line inside that plane",
    ))
    return report


# ═══════════════════════════════════════════════════════════════════════════
# Generation
# ═══════════════════════════════════════════════════════════════════════════

def generate_pair(
    lam: Any,
    tau1_profile: Any,
    s_range: Tuple[float, float],
    step: float = config.DEFAULT_STEP,
    tol: Optional[Tolerances] = None,
    parallel: bool = False,
    samples: int = config.PAIR_SAMPLES,
) -> MannheimPair:
    """
    Synthesize C̃₁ from τ̃₁ and κ̃₁ = λ̃τ̃₁′/(1 + λ̃²τ̃₁²), offset it by λ̃b̃₁ and
    validate the result with pair_check.
    """
    tol = resolve(tol)
    lam = _require_lambda(lam, tol)
    tau1 = as_profile(tau1_profile)
    profile = FrenetProfile(MannheimCurvature(lam, tau1), tau1, s_range)

    c1 = integrate_frenet(profile, step, tol)
    c = mannheim_from_partner(c1, lam, tol)
    pair, report = pair_check(c, c1, tol, samples=samples, parallel=parallel)

    recovered = DualScalar.from_dict(report.pair["lambda"]) if "lambda" in report.pair else None
    if recovered is not None:
        report.add(CheckResult.from_residuals(
            "lambda_recovered", [recovered.re - lam.re], [recovered.du - lam.du], tol.pair
        ))
    if pair is None or not report.passed:
        raise PairValidationFailed(
            f"Generated pair failed validation: {', '.join(ch.name for ch in report.failures())}",
            report,
        )

    pair.metadata = {
        "lambda_input": lam.to_dict(),
        "tau1": tau1.to_dict(),
        "s_range": [float(s_range[0]), float(s_range[1])],
        "step": float(step),
    }
    logger.info(f"Generated Mannheim pair: λ̃={lam!r}, s∈[{s_range[0]:.6g}, {s_range[1]:.6g}], step={step:.3e}")
    return pair


# ═══════════════════════════════════════════════════════════════════════════
# Theorem verification
# ═══════════════════════════════════════════════════════════════════════════

class PairVerifier:
    """Evaluates every pair relation over the sampled correspondence."""

    def __init__(self, pair: MannheimPair, tol: Optional[Tolerances] = None):
        self.pair = pair
        self.tol = resolve(tol)
        self.nu = pair.orientation
        self.lam = pair.lam
        ps = pair.samples
        if len(ps) < 5:
            raise ValueError("Theorem verification needs at least 5 correspondence samples")
        ts = np.array([p.t for p in ps])
        us = np.array([p.t1 for p in ps])
        h = float(ts[1] - ts[0])

        self.kappa = [p.frenet.kappa for p in ps]
        self.tau = [p.frenet.tau for p in ps]
        self.kappa1 = [p.frenet1.kappa for p in ps]
        self.tau1 = [p.frenet1.tau for p in ps]
        self.theta = [p.theta for p in ps]
        self.sin_cos = [sin_cos(th) for th in self.theta]

        # ds̃₁/ds̃ = σ̃₁ (du/dt) / σ̃ along the correspondence
        du_dt = gradient4(us, h)
        self.ds1_dt = [p.frenet1.speed * float(r) for p, r in zip(ps, du_dt)]
        self.ratio = [d / p.frenet.speed for d, p in zip(self.ds1_dt, ps)]

        theta_re = np.unwrap(np.array([th.re for th in self.theta]))
        theta_du = np.array([th.du for th in self.theta])
        dtheta_dt = [DualScalar(float(a), float(b)) for a, b in zip(gradient4(theta_re, h), gradient4(theta_du, h))]
        self.dtheta_ds1 = [d / s for d, s in zip(dtheta_dt, self.ds1_dt)]

    def _check(self, name: str, consistent: List[DualScalar], printed: Optional[List[DualScalar]] = None,
               tolerance: Optional[float] = None, **kwargs: Any) -> CheckResult:
        re, du = _parts(consistent)
        extra: Dict[str, Any] = {}
        if printed is not None:
            pre, pdu = _parts(printed)
            extra = {"printed_residual_re": float(np.max(np.abs(pre))),
                     "printed_residual_du": float(np.max(np.abs(pdu)))}
        return CheckResult.from_residuals(name, re, du, tolerance or self.tol.thm, **extra, **kwargs)

    # ── Individual relations ─────────────────────────────────────────────────
    def thm1_condition(self) -> CheckResult:
        lam_nat = self.lam * float(-self.nu)
        consistent = [k - lam_nat * (k * k + t * t) for k, t in zip(self.kappa, self.tau)]
        printed = [k - self.lam * (k * k + t * t) for k, t in zip(self.kappa, self.tau)]
        return self._check("thm1_condition", consistent, printed,
                           note=f"offset constant in the κ ≥ 0 frame: {lam_nat!r}")

    def thm2_distance(self) -> CheckResult:
        dist = [norm(p.point - p.point1, self.tol) for p in self.pair.samples]
        d_re, d_du = _parts(dist)
        sign = 1.0 if self.lam.re > 0 else -1.0
        expected = DualScalar(abs(self.lam.re), self.lam.du * sign)
        re = np.maximum(np.abs(d_re - d_re.mean()), np.abs(d_re - expected.re))
        du = np.maximum(np.abs(d_du - d_du.mean()), np.abs(d_du - expected.du))
        return CheckResult.from_residuals(
            "thm2_distance", re, du, self.tol.thm,
            note=f"dual distance = ({d_re.mean():.12g}, {d_du.mean():.12g})",
        )

    def thm4_torsion(self) -> CheckResult:
        nu = float(self.nu)
        consistent = [t1 * self.lam * t + k * nu for t1, t, k in zip(self.tau1, self.tau, self.kappa)]
        printed = [t1 * self.lam * t - k for t1, t, k in zip(self.tau1, self.tau, self.kappa)]
        return self._check("thm4_torsion", consistent, printed)

    def eq9_eq10_angle(self) -> CheckResult:
        nu = float(self.nu)
        consistent, printed = [], []
        for (s, c), r, k, t, t1 in zip(self.sin_cos, self.ratio, self.kappa, self.tau, self.tau1):
            consistent += [c - r, s + self.lam * t1 * r,
                           c - (1.0 + nu * self.lam * k) / r, s + self.lam * t / r]
            printed += [c - r, s + self.lam * t1 * r,
                        c - (1.0 + self.lam * k) / r, s - self.lam * t / r]
        check = self._check("eq9_eq10_angle", consistent, printed)
        check.samples = len(self.ratio)
        return check

    def frame_relations(self) -> CheckResult:
        nu = float(self.nu)
        re, du, pre, pdu = [], [], [], []
        for p, (s, c) in zip(self.pair.samples, self.sin_cos):
            f, f1 = p.frenet, p.frenet1
            tangent = f.t_vec - (f1.t_vec * c + f1.n_vec * s)
            rotated = f1.t_vec * (-s) + f1.n_vec * c
            binormal = f.b_vec + rotated * nu
            binormal_printed = f.b_vec - rotated
            re.append(max(np.linalg.norm(tangent.re), np.linalg.norm(binormal.re)))
            du.append(max(np.linalg.norm(tangent.du), np.linalg.norm(binormal.du)))
            pre.append(max(np.linalg.norm(tangent.re), np.linalg.norm(binormal_printed.re)))
            pdu.append(max(np.linalg.norm(tangent.du), np.linalg.norm(binormal_printed.du)))
        return CheckResult.from_residuals(
            "frame_relations", re, du, self.tol.thm,
            printed_residual_re=float(max(pre)), printed_residual_du=float(max(pdu)),
        )

    def thm7(self) -> Tuple[CheckResult, CheckResult]:
        nu = float(self.nu)
        consistent, printed, mus = [], [], []
        skipped = 0
        floor = max(self.tol.parallel, config.MU_MIN_SIN)
        for mu, (s, _), k, t in zip(self.pair.mu, self.sin_cos, self.kappa, self.tau):
            if mu is None or abs(s.re) < floor:
                skipped += 1
                continue
            mus.append(mu)
            consistent.append(mu * t + nu * self.lam * k + 1.0)
            printed.append(mu * t - self.lam * k - 1.0)
        note = f"{skipped} samples with |sin θ| < {floor:g} skipped" if skipped else ""
        if not consistent:
            linear = CheckResult(name="thm7_linear", max_residual_re=math.inf, max_residual_du=math.inf,
                                 tolerance=self.tol.thm, samples=0, skipped=skipped,
                                 note="sin θ̃ vanishes at every sample")
            return linear, CheckResult(name="thm7_mu_constant", max_residual_re=math.inf,
                                       max_residual_du=math.inf, tolerance=self.tol.thm,
                                       samples=0, skipped=skipped, diagnostic=True)
        linear = self._check("thm7_linear", consistent, printed, skipped=skipped, note=note)
        mu_re, mu_du = _parts(mus)
        constant = CheckResult(
            name="thm7_mu_constant",
            max_residual_re=float(mu_re.max() - mu_re.min()),
            max_residual_du=float(mu_du.max() - mu_du.min()),
            tolerance=self.tol.thm, samples=len(mus), skipped=skipped, diagnostic=True,
            note="μ̃ = λ̃ cot θ̃ varies along the pair; the linear relation holds pointwise only",
        )
        if not constant.passed:
            logger.warning(
                f"μ̃ is not constant along the pair (spread {constant.max_residual_re:.3e}); "
                f"the linear relation holds with a pointwise μ̃"
            )
        return linear, constant

    def thm8(self) -> List[CheckResult]:
        nu = float(self.nu)
        k1_res = [k1 + d for k1, d in zip(self.kappa1, self.dtheta_ds1)]
        ii, ii_p, iii, iii_p, iv, iv_p = [], [], [], [], [], []
        for (s, c), r, k, t, t1 in zip(self.sin_cos, self.ratio, self.kappa, self.tau, self.tau1):
            ii.append(t1 - (nu * k * s + t * c) / r)
            ii_p.append(t1 - (s * k - c * t) / r)
            iii.append(nu * k - s * t1 * r)
            iii_p.append(k - s * t1 * r)
            iv.append(t - c * t1 * r)
            iv_p.append(t + c * t1 * r)
        return [
            self._check("thm8_i", k1_res),
            self._check("thm8_ii", ii, ii_p),
            self._check("thm8_iii", iii, iii_p),
            self._check("thm8_iv", iv, iv_p),
        ]

    def cor2_schell(self) -> CheckResult:
        product = np.array([(t * t1).re for t, t1 in zip(self.tau, self.tau1)])
        return CheckResult(
            name="cor2_schell", max_residual_re=relative_spread(product), max_residual_du=0.0,
            tolerance=config.NONCONSTANT_SPREAD, samples=product.size, expect_nonconstant=True,
            note="relative spread of (τ̃τ̃₁).re; the product is not constant",
        )

    def cor3_linear(self) -> CheckResult:
        k_re, k_du = _parts(self.kappa)
        t_re, t_du = _parts(self.tau)
        basis = np.column_stack([k_re, t_re])
        (p, q), *_ = np.linalg.lstsq(basis, np.ones_like(k_re), rcond=None)
        (p_du, q_du), *_ = np.linalg.lstsq(basis, -(k_du * p + t_du * q), rcond=None)
        res_re = k_re * p + t_re * q - 1.0
        res_du = k_re * p_du + k_du * p + t_re * q_du + t_du * q
        return CheckResult.from_residuals(
            "cor3_linear", res_re, res_du, self.tol.thm, diagnostic=True,
            note=f"best fit κ̃·({p:.6g}, {p_du:.6g}) + τ̃·({q:.6g}, {q_du:.6g}) = 1",
        )

    def cor4(self) -> CheckResult:
        squared = [k * k + t * t - r * r * t1 * t1 for k, t, r, t1 in zip(self.kappa, self.tau, self.ratio, self.tau1)]
        first = [k * k + t * t - r * t1 * t1 for k, t, r, t1 in zip(self.kappa, self.tau, self.ratio, self.tau1)]
        r_re, _ = _parts(self.ratio)
        return self._check(
            "cor4", squared, first,
            note=f"first-power form off by the factor ds̃₁/ds̃ ∈ [{r_re.min():.6g}, {r_re.max():.6g}]",
        )

    def lambda_constant(self) -> CheckResult:
        re, du = _parts([p.lam - self.lam for p in self.pair.samples])
        return CheckResult.from_residuals("lambda_constant", re, du, self.tol.pair)

    def run(self) -> TheoremReport:
        report = TheoremReport(pair=self.pair.to_dict())
        report.add(self.lambda_constant())
        report.add(self.thm1_condition())
        report.add(self.thm2_distance())
        report.add(self.thm4_torsion())
        report.add(self.eq9_eq10_angle())
        report.add(self.frame_relations())
        for check in self.thm7():
            report.add(check)
        for check in self.thm8():
            report.add(check)
        report.add(self.cor2_schell())
        report.add(self.cor3_linear())
        report.add(self.cor4())
        return report


def verify_theorems(pair: MannheimPair, tol: Optional[Tolerances] = None) -> TheoremReport:
    """Every pair relation as one report; see PairVerifier for the individual checks."""
    report = PairVerifier(pair, tol).run()
    failed = [c.name for c in report.failures()]
    logger.info(
        f"Verified {len(report.checks)} relations on {len(pair.samples)} samples: "
        f"{'all pass' if not failed else 'failed ' + ', '.join(failed)}"
    )
    return report


def osculating_ratio(pair: MannheimPair, tol: Optional[Tolerances] = None) -> OsculatingReport:
    """
    Dual osculating centres M̃ = α̃ + ñ/κ̃, M̃₁ = α̃₁ + ñ₁/κ̃₁ and the ratio
    (‖α̃₁M̃‖/‖α̃M̃‖)(‖α̃₁M̃₁‖/‖α̃M̃₁‖) from positions.
    """
    tol = resolve(tol)
    nu = float(pair.orientation)
    lam = pair.lam
    centers, ratios = [], []
    radius_dev, consistent_dev, printed_dev = 0.0, 0.0, 0.0
    printed_ok = True
    for p in pair.samples:
        f, f1 = p.frenet, p.frenet1
        if f.kappa.re <= tol.kappa or f1.kappa.re <= tol.kappa:
            raise VanishingCurvature(f"Osculating centre undefined at t={p.t:.12g}")
        m = p.point + f.n_vec * (1.0 / f.kappa)
        m1 = p.point1 + f1.n_vec * (1.0 / f1.kappa)
        a1_m, a_m = norm(m - p.point1, tol), norm(m - p.point, tol)
        a1_m1, a_m1 = norm(m1 - p.point1, tol), norm(m1 - p.point, tol)
        ratio = (a1_m / a_m) * (a1_m1 / a_m1)
        centers.append((m, m1))
        ratios.append(ratio)

        radius_dev = max(radius_dev, abs(a_m.re - 1.0 / f.kappa.re))
        closed = (1.0 + nu * lam * f.kappa) / sqrt(1.0 + f1.kappa * f1.kappa * lam * lam)
        consistent_dev = max(consistent_dev, abs(closed.re - ratio.re), abs(closed.du - ratio.du))
        try:
            printed = (1.0 + lam * f.kappa) * sqrt(1.0 + f1.kappa * lam * lam)
            printed_dev = max(printed_dev, abs(printed.re - ratio.re), abs(printed.du - ratio.du))
        except NonPositiveRealPart:
            printed_ok = False

    r_re = np.array([r.re for r in ratios])
    spread = relative_spread(r_re)
    result = OsculatingReport(
        centers=centers,
        ratio=ratios,
        is_constant=bool(spread < tol.thm),
        spread=spread,
        radius_deviation=radius_dev,
        consistent_form_deviation=consistent_dev,
        printed_form_deviation=printed_dev if printed_ok else None,
    )
    logger.info(
        f"Osculating ratio over {len(ratios)} samples: spread={spread:.3e}, "
        f"constant={result.is_constant}, closed-form deviation={consistent_dev:.3e}"
    )
    return result
