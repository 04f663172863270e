"""
DUALFRENET Dual Curves
Dual space curves α̃(t) = α(t) + εα*(t): derivative access, dual arc length,
the dual Frenet apparatus, arc-length reparameterization and the
straight-line / plane-curve classifiers.
"""

import logging
from abc import ABC, abstractmethod
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.integrate import quad
from scipy.interpolate import CubicHermiteSpline, CubicSpline

import config
from core.curve_catalog import (
    FunctionExpr,
    VectorExpr,
    ZeroExpr,
    default_domain,
    parse_vector_expr,
)
from core.dual_algebra import DualScalar
from core.dual_linear import DualVec3, UnitDualVec3, cross, dot, norm, normalize
from core.errors import InvalidCurveDefinition, IrregularCurve, VanishingCurvature, ZeroRealPart
from core.line_geometry import Line3
from models.geometry import FrenetData, PlanarResult, StraightLineResult
from models.tolerances import Tolerances, resolve
from utils.helpers import fd_derivative

logger = logging.getLogger(__name__)

ANALYTIC = "analytic"
FINITE_DIFFERENCE = "finite_difference"

_GAUSS_X, _GAUSS_W = leggauss(8)


# ═══════════════════════════════════════════════════════════════════════════
# Curve types
# ═══════════════════════════════════════════════════════════════════════════

class DualCurve(ABC):
    """Dual space curve over a real parameter interval."""

    domain: Tuple[float, float]
    derivative_mode: str = ANALYTIC

    @abstractmethod
    def eval(self, t: float) -> DualVec3:
        ...

    @abstractmethod
    def derivative(self, t: float, order: int) -> DualVec3:
        ...

    def eval_array(self, ts: Sequence[float]) -> np.ndarray:
        """Stacked [re, du] rows, shape (n, 6)."""
        return np.array([self.eval(float(t)).as_array() for t in ts])

    def derivative_array(self, ts: Sequence[float], order: int) -> np.ndarray:
        return np.array([self.derivative(float(t), order).as_array() for t in ts])

    def curvature_rates(self, t: float, tol: Optional[Tolerances] = None) -> Tuple[DualScalar, DualScalar]:
        """(dκ̃/dt, dτ̃/dt) by 5-point differences of the Frenet apparatus."""
        h = config.RATE_STEP * max(1.0, abs(t))

        def invariants(x: float) -> np.ndarray:
            f = frenet(self, x, tol)
            return np.array([f.kappa.re, f.kappa.du, f.tau.re, f.tau.du])

        d = fd_derivative(invariants, t, 1, h)
        return DualScalar(d[0], d[1]), DualScalar(d[2], d[3])

    def grid(self, n: int, margin: float = 0.0) -> np.ndarray:
        t0, t1 = self.domain
        pad = margin * (t1 - t0)
        return np.linspace(t0 + pad, t1 - pad, n)

    @staticmethod
    def from_functions(
        real_fn: Callable[[float], Any],
        dual_fn: Optional[Callable[[float], Any]] = None,
        domain: Tuple[float, float] = (0.0, 1.0),
        derivatives: Optional[Dict[str, List[Callable[[float], Any]]]] = None,
    ) -> "ExprCurve":
        """
        Curve from plain callables. `derivatives` may map "real" and "dual" to
        lists of derivative callables for orders 1..3; otherwise finite
        differences are used.
        """
        derivatives = derivatives or {}
        real = FunctionExpr(real_fn, derivatives.get("real"))
        dual = ZeroExpr() if dual_fn is None else FunctionExpr(dual_fn, derivatives.get("dual"))
        return ExprCurve(real, dual, domain)


class ExprCurve(DualCurve):
    """Curve defined by catalog expressions for its real and dual parts."""

    def __init__(
        self,
        real: VectorExpr,
        dual: Optional[VectorExpr] = None,
        domain: Optional[Tuple[float, float]] = None,
        force_finite_difference: bool = False,
    ):
        self.real = real
        self.dual = dual if dual is not None else ZeroExpr()
        self.domain = tuple(float(x) for x in (domain or default_domain(self.real, self.dual)))
        if not self.domain[1] > self.domain[0]:
            raise InvalidCurveDefinition(f"Empty curve domain {self.domain}")
        analytic = self.real.analytic and self.dual.analytic and not force_finite_difference
        self.derivative_mode = ANALYTIC if analytic else FINITE_DIFFERENCE

    def _stacked(self, t: float) -> np.ndarray:
        return np.concatenate([self.real.value(t), self.dual.value(t)])

    def eval(self, t: float) -> DualVec3:
        return DualVec3(self.real.value(t), self.dual.value(t))

    def derivative(self, t: float, order: int) -> DualVec3:
        if self.derivative_mode == ANALYTIC:
            return DualVec3(self.real.derivative(t, order), self.dual.derivative(t, order))
        h = config.FD_STEPS[order] * max(1.0, abs(t))
        return DualVec3.from_array(fd_derivative(self._stacked, t, order, h))

    def to_dict(self) -> Dict[str, Any]:
        data = {"real": self.real.to_dict(), "dual": self.dual.to_dict(), "domain": list(self.domain)}
        if self.derivative_mode == FINITE_DIFFERENCE and self.real.analytic and self.dual.analytic:
            data["derivatives"] = FINITE_DIFFERENCE
        return data


class HermiteCurve(DualCurve):
    """
    Curve stored as jets (α̃, α̃′, α̃″[, α̃‴]) at nodes. Orders 0-2 are piecewise
    cubic Hermite interpolants of consecutive jet pairs; order 3 is the
    derivative of the order-2 interpolant.
    """

    def __init__(self, nodes: Sequence[float], jets: Sequence[np.ndarray]):
        x = np.asarray(nodes, dtype=float)
        jets = [np.asarray(j, dtype=float) for j in jets]
        if len(jets) not in (3, 4) or any(j.shape != (x.size, 6) for j in jets):
            raise InvalidCurveDefinition("HermiteCurve needs 3 or 4 jets of shape (n, 6)")
        if x.size < 2 or np.any(np.diff(x) <= 0):
            raise InvalidCurveDefinition("HermiteCurve nodes must be strictly increasing")
        if len(jets) == 3:
            jets.append(CubicSpline(x, jets[2], axis=0).derivative()(x))
        self.nodes = x
        self.jets = jets
        self.domain = (float(x[0]), float(x[-1]))
        self.derivative_mode = ANALYTIC
        self._splines = [CubicHermiteSpline(x, jets[k], jets[k + 1], axis=0) for k in range(3)]
        self._third = self._splines[2].derivative()

    def _spline(self, order: int):
        if order == 3:
            return self._third
        return self._splines[order]

    def eval(self, t: float) -> DualVec3:
        return DualVec3.from_array(self._splines[0](t))

    def derivative(self, t: float, order: int) -> DualVec3:
        return DualVec3.from_array(self._spline(order)(t))

    def eval_array(self, ts: Sequence[float]) -> np.ndarray:
        return np.asarray(self._splines[0](np.asarray(ts, dtype=float)))

    def derivative_array(self, ts: Sequence[float], order: int) -> np.ndarray:
        return np.asarray(self._spline(order)(np.asarray(ts, dtype=float)))


class ArcLengthCurve(DualCurve):
    """
    A curve reparameterized by the real arc length s of its indicatrix.

    t(s) is a cubic Hermite inverse of a Gauss-Legendre arc-length table with
    slopes 1/v; derivatives follow from the chain rule with the exact speed of
    the base curve at t(s).
    """

    def __init__(
        self,
        base: DualCurve,
        table_size: int = config.ARC_TABLE_SIZE,
        tol: Optional[Tolerances] = None,
    ):
        tol = resolve(tol)
        self.base = base
        self.derivative_mode = base.derivative_mode
        t0, t1 = base.domain
        t_nodes = np.linspace(t0, t1, max(int(table_size), 2))
        half = 0.5 * np.diff(t_nodes)
        mid = 0.5 * (t_nodes[:-1] + t_nodes[1:])
        quad_t = (mid[:, None] + half[:, None] * _GAUSS_X[None, :]).ravel()

        v_quad, sdu_quad = self._speeds(base.derivative_array(quad_t, 1), tol)
        v_nodes, sdu_nodes = self._speeds(base.derivative_array(t_nodes, 1), tol)
        weights = half[:, None] * _GAUSS_W[None, :]
        s_nodes = np.concatenate([[0.0], np.cumsum((v_quad.reshape(weights.shape) * weights).sum(axis=1))])
        sdu_cum = np.concatenate([[0.0], np.cumsum((sdu_quad.reshape(weights.shape) * weights).sum(axis=1))])

        self.t_nodes = t_nodes
        self.s_nodes = s_nodes
        self.length = float(s_nodes[-1])
        self.domain = (0.0, self.length)
        self._t_of_s = CubicHermiteSpline(s_nodes, t_nodes, 1.0 / v_nodes)
        self._sdu_of_t = CubicHermiteSpline(t_nodes, sdu_cum, sdu_nodes)
        logger.debug(f"Arc-length table: {t_nodes.size} nodes, length={self.length:.12g}")

    @staticmethod
    def _speeds(d1: np.ndarray, tol: Tolerances) -> Tuple[np.ndarray, np.ndarray]:
        re, du = d1[:, :3], d1[:, 3:]
        v = np.linalg.norm(re, axis=1)
        if np.any(v <= tol.zero):
            raise IrregularCurve(
                f"Real speed vanishes (min {v.min():.3e}) on the arc-length table",
                {"min_speed": float(v.min())},
            )
        return v, np.einsum("ij,ij->i", re, du) / v

    def t_of(self, s: Any) -> Any:
        t = self._t_of_s(s)
        return float(t) if np.ndim(t) == 0 else np.asarray(t)

    def dual_arc_length_at(self, s: float) -> DualScalar:
        """s̃(s) = s + εs*(s), measured from the start of the curve."""
        return DualScalar(float(s), float(self._sdu_of_t(self.t_of(s))))

    def eval(self, s: float) -> DualVec3:
        return self.base.eval(self.t_of(s))

    def eval_array(self, ss: Sequence[float]) -> np.ndarray:
        return self.base.eval_array(self.t_of(np.asarray(ss, dtype=float)))

    def derivative(self, s: float, order: int) -> DualVec3:
        return DualVec3.from_array(self.derivative_array([s], order)[0])

    def derivative_array(self, ss: Sequence[float], order: int) -> np.ndarray:
        ts = np.atleast_1d(self.t_of(np.asarray(ss, dtype=float)))
        d1 = self.base.derivative_array(ts, 1)
        v = np.linalg.norm(d1[:, :3], axis=1)
        t1 = (1.0 / v)[:, None]
        if order == 1:
            return d1 * t1
        d2 = self.base.derivative_array(ts, 2)
        v1 = np.einsum("ij,ij->i", d1[:, :3], d2[:, :3]) / v
        t2 = (-v1 / v ** 3)[:, None]
        if order == 2:
            return d2 * t1 ** 2 + d1 * t2
        d3 = self.base.derivative_array(ts, 3)
        v2 = (np.einsum("ij,ij->i", d2[:, :3], d2[:, :3])
              + np.einsum("ij,ij->i", d1[:, :3], d3[:, :3]) - v1 ** 2) / v
        t3 = (-v2 / v ** 4 + 3.0 * v1 ** 2 / v ** 5)[:, None]
        return d3 * t1 ** 3 + 3.0 * d2 * t1 * t2 + d1 * t3

    def curvature_rates(self, s: float, tol: Optional[Tolerances] = None) -> Tuple[DualScalar, DualScalar]:
        t = self.t_of(s)
        dk, dt = self.base.curvature_rates(t, tol)
        scale = 1.0 / float(np.linalg.norm(self.base.derivative(t, 1).re))
        return dk * scale, dt * scale


# ═══════════════════════════════════════════════════════════════════════════
# JSON definitions
# ═══════════════════════════════════════════════════════════════════════════

def curve_from_dict(data: Any) -> ExprCurve:
    """{"real": <expr>, "dual": <expr>, "domain": [t0, t1], "derivatives": "finite_difference"}"""
    if not isinstance(data, dict) or "real" not in data:
        raise InvalidCurveDefinition("Curve definition must be an object with a 'real' expression")
    real = parse_vector_expr(data["real"])
    dual = parse_vector_expr(data.get("dual"))
    domain = data.get("domain")
    if domain is not None:
        try:
            domain = (float(domain[0]), float(domain[1]))
        except (TypeError, ValueError, IndexError):
            raise InvalidCurveDefinition(f"'domain' must be [t0, t1], got {domain!r}")
    mode = data.get("derivatives", ANALYTIC)
    if mode not in (ANALYTIC, FINITE_DIFFERENCE):
        raise InvalidCurveDefinition(f"Unknown derivative mode '{mode}'")
    return ExprCurve(real, dual, domain, force_finite_difference=(mode == FINITE_DIFFERENCE))


def sampled_definition(c: DualCurve, ts: Sequence[float]) -> Dict[str, Any]:
    """Curve definition JSON of `c` sampled at `ts` (kind "samples" for both parts)."""
    ts = np.asarray(ts, dtype=float)
    values = c.eval_array(ts)
    return {
        "real": {"kind": "samples", "t": ts.tolist(), "points": values[:, :3].tolist()},
        "dual": {"kind": "samples", "t": ts.tolist(), "points": values[:, 3:].tolist()},
        "domain": [float(ts[0]), float(ts[-1])],
    }


# ═══════════════════════════════════════════════════════════════════════════
# Operations
# ═══════════════════════════════════════════════════════════════════════════

def frenet_from_jet(d1: DualVec3, d2: DualVec3, d3: DualVec3, tol: Optional[Tolerances] = None) -> FrenetData:
    """Frenet apparatus from the first three derivatives at one point."""
    tol = resolve(tol)
    speed_re = float(np.linalg.norm(d1.re))
    if speed_re <= tol.zero:
        raise IrregularCurve(f"Real speed vanishes ({speed_re:.3e})", {"speed": speed_re})
    speed = norm(d1, tol)
    binormal_dir = cross(d1, d2)
    if float(np.linalg.norm(binormal_dir.re)) / speed_re ** 3 <= tol.kappa:
        raise VanishingCurvature(
            f"Real curvature vanishes ({np.linalg.norm(binormal_dir.re) / speed_re ** 3:.3e})"
        )
    try:
        kappa = norm(binormal_dir, tol) / (speed * speed * speed)
        tau = dot(binormal_dir, d3) / dot(binormal_dir, binormal_dir)
        t_vec = normalize(d1, tol)
        n_vec = normalize(cross(binormal_dir, d1), tol)
    except ZeroRealPart as e:
        raise VanishingCurvature(f"Frame undefined: {e}")
    b_raw = cross(t_vec, n_vec)
    b_vec = UnitDualVec3(b_raw.re, b_raw.du, tol.unit)
    return FrenetData(t_vec=t_vec, n_vec=n_vec, b_vec=b_vec, kappa=kappa, tau=tau, speed=speed)


def frenet(c: DualCurve, t: float, tol: Optional[Tolerances] = None) -> FrenetData:
    """Dual Frenet apparatus of `c` at parameter `t` (non-unit-speed formulas)."""
    return frenet_from_jet(c.derivative(t, 1), c.derivative(t, 2), c.derivative(t, 3), tol)


def dual_arc_length(c: DualCurve, t_start: float, t_end: float, tol: Optional[Tolerances] = None) -> DualScalar:
    """s̃ = ∫‖α′‖dt + ε∫⟨t̄, α*′⟩dt by adaptive quadrature."""
    tol = resolve(tol)
    if t_start == t_end:
        return DualScalar(0.0, 0.0)

    def speed(t: float) -> np.ndarray:
        d1 = c.derivative(t, 1)
        v = float(np.linalg.norm(d1.re))
        if v < tol.zero:
            raise IrregularCurve(f"Real speed vanishes at t={t:.12g}", {"t": t})
        return np.array([v, float(np.dot(d1.re, d1.du)) / v])

    s_re, _ = quad(lambda t: speed(t)[0], t_start, t_end, epsabs=1e-12, epsrel=1e-12, limit=200)
    s_du, _ = quad(lambda t: speed(t)[1], t_start, t_end, epsabs=1e-12, epsrel=1e-12, limit=200)
    return DualScalar(float(s_re), float(s_du))


def reparameterize_by_arclength(c: DualCurve, tol: Optional[Tolerances] = None) -> ArcLengthCurve:
    curve = ArcLengthCurve(c, tol=tol)
    logger.info(f"Reparameterized curve by arc length: L={curve.length:.12g}")
    return curve


def frenet_equation_residual(c: DualCurve, t: float, tol: Optional[Tolerances] = None) -> Tuple[float, float]:
    """
    Max residuals (real, dual) of dt̃/ds̃ = κ̃ñ, dñ/ds̃ = -κ̃t̃ + τ̃b̃, db̃/ds̃ = -τ̃ñ,
    with frame derivatives from 5-point differences in t divided by ds̃/dt.
    """
    h = config.RATE_STEP * max(1.0, abs(t))

    def frame(x: float) -> np.ndarray:
        f = frenet(c, x, tol)
        return np.concatenate([f.t_vec.as_array(), f.n_vec.as_array(), f.b_vec.as_array()])

    f = frenet(c, t, tol)
    d = fd_derivative(frame, t, 1, h)
    inv_speed = DualScalar(1.0) / f.speed
    dt_ds, dn_ds, db_ds = (DualVec3.from_array(d[6 * k: 6 * k + 6]) * inv_speed for k in range(3))
    residuals = [
        dt_ds - f.n_vec * f.kappa,
        dn_ds + f.t_vec * f.kappa - f.b_vec * f.tau,
        db_ds + f.n_vec * f.tau,
    ]
    return (
        max(float(np.linalg.norm(r.re)) for r in residuals),
        max(float(np.linalg.norm(r.du)) for r in residuals),
    )


def classify_straight_line(
    c: DualCurve,
    samples: int = config.CLASSIFY_SAMPLES,
    tol: Optional[Tolerances] = None,
) -> StraightLineResult:
    """
    A dual curve is a straight line iff κ̃ = 0 (both parts) at every sample.

    On success the fit is α̃ = x̃ s̃ + ỹ with s̃ the dual arc length from the
    start of the domain, so ỹ = α̃(t0) is the point at s̃ = 0.
    """
    tol = resolve(tol)
    ts = c.grid(samples)
    kappa_re, kappa_du = [], []
    for t in ts:
        d1, d2 = c.derivative(t, 1), c.derivative(t, 2)
        v = float(np.linalg.norm(d1.re))
        if v <= tol.zero:
            raise IrregularCurve(f"Real speed vanishes at t={t:.12g}", {"t": float(t)})
        wedge = cross(d1, d2)
        kappa_re.append(float(np.linalg.norm(wedge.re)) / v ** 3)
        kappa_du.append(float(np.linalg.norm(wedge.du)) / v ** 3)

    max_re, max_du = max(kappa_re), max(kappa_du)
    is_line = max_re < tol.classify and max_du < tol.classify
    result = StraightLineResult(is_line=is_line, max_kappa_re=max_re, max_kappa_du=max_du, samples=len(ts))
    if is_line:
        t0 = c.domain[0]
        direction = normalize(c.derivative(t0, 1), tol)
        offset = c.eval(t0)
        result.direction = direction
        result.offset = offset
        result.line = Line3(offset.re, direction.re)
    logger.info(f"Straight-line classifier: is_line={is_line} max|κ̃|=({max_re:.3e}, {max_du:.3e})")
    return result


def classify_planar(
    c: DualCurve,
    samples: int = config.CLASSIFY_SAMPLES,
    tol: Optional[Tolerances] = None,
) -> PlanarResult:
    """A dual curve with κ̃.re > 0 is a plane curve iff τ̃ = 0 (both parts)."""
    tol = resolve(tol)
    ts = c.grid(samples)
    frames = [frenet(c, t, tol) for t in ts]
    tau_re = max(abs(f.tau.re) for f in frames)
    tau_du = max(abs(f.tau.du) for f in frames)
    result = PlanarResult(is_planar=False, max_tau_re=tau_re, max_tau_du=tau_du, samples=len(ts))

    if tau_re < tol.classify and tau_du < tol.classify:
        origin = c.eval(ts[0])
        normal = frames[0].b_vec
        offsets = [dot(c.eval(t) - origin, normal) for t in ts]
        result.max_plane_re = max(abs(o.re) for o in offsets)
        result.max_plane_du = max(abs(o.du) for o in offsets)
        result.is_planar = result.max_plane_re < tol.classify and result.max_plane_du < tol.classify
        if result.is_planar:
            result.plane_point = origin
            result.plane_normal = normal
    logger.info(
        f"Planarity classifier: is_planar={result.is_planar} "
        f"max|τ̃|=({tau_re:.3e}, {tau_du:.3e})"
    )
    return result
