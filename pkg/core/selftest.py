"""
DUALFRENET Acceptance Suite
Property- and oracle-based checks of the whole library, runnable at desk scale.
Each criterion returns a CriterionResult; a library error inside a criterion
fails that criterion and the suite continues.
"""

import logging
import math
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

import config
from core.curve_catalog import (
    CircleExpr,
    ConstProfile,
    HelixExpr,
    LineExpr,
    PolynomialExpr,
    ScaledExpr,
    TanProfile,
)
from core.dual_algebra import EPSILON, ZERO, DualScalar, acos, sin_cos, sqrt
from core.dual_curve import (
    ExprCurve,
    classify_planar,
    classify_straight_line,
    curve_from_dict,
    frenet,
    frenet_equation_residual,
)
from core.dual_linear import cross, dual_angle, sphere_membership
from core.errors import DualFrenetError
from core.frenet_synthesis import integrate_frenet
from core.line_geometry import Line3, dual_to_line, line_pair_geometry, line_to_dual
from core.mannheim import check_mannheim_condition, generate_pair, osculating_ratio, verify_theorems
from core.ruled_surface import (
    dual_curve_to_ruled,
    export_mesh,
    helicoid_definition,
    helicoid_residual,
    ruled_to_dual_curve,
)
from models.geometry import CheckResult, FrenetProfile, MannheimPair
from models.tolerances import Tolerances, resolve
from utils.helpers import fd_derivative

logger = logging.getLogger(__name__)

HELIX_RADIUS = 3.0
HELIX_PITCH = 4.0
HELIX_DUAL_SCALE = 0.1
HELICOID_PITCH = 0.5


@dataclass
class CriterionResult:
    """Outcome of one acceptance criterion."""
    number: int
    title: str
    passed: bool
    details: Dict[str, Any] = field(default_factory=dict)
    error: Optional[str] = None
    elapsed_s: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        data = {
            "number": self.number,
            "title": self.title,
            "pass": self.passed,
            "details": self.details,
            "elapsed_s": round(self.elapsed_s, 3),
        }
        if self.error:
            data["error"] = self.error
        return data


def _random_line(rng: np.random.Generator) -> Line3:
    direction = rng.normal(size=3)
    direction /= np.linalg.norm(direction)
    return Line3(rng.uniform(-10.0, 10.0, size=3), direction)


def _mag(x: DualScalar) -> float:
    return abs(x.re) + abs(x.du)


def _helix(dual_scale: float = 0.0, finite_difference: bool = False) -> ExprCurve:
    real = HelixExpr(HELIX_RADIUS, HELIX_PITCH)
    dual = ScaledExpr(dual_scale, HelixExpr(HELIX_RADIUS, HELIX_PITCH)) if dual_scale else None
    # FD steps scale with max(1, |t|)
    domain = (0.0, 1.0) if finite_difference else (0.0, 2.0 * math.pi)
    return ExprCurve(real, dual, domain, force_finite_difference=finite_difference)


class AcceptanceSuite:
    """Runs the eleven acceptance criteria in order."""

    def __init__(self, seed: int = 0, tol: Optional[Tolerances] = None, parallel: bool = False):
        self.seed = seed
        self.tol = resolve(tol)
        self.parallel = parallel
        self._pairs: Dict[Tuple[float, float], MannheimPair] = {}

    def _pair(self, lam: DualScalar) -> MannheimPair:
        key = (lam.re, lam.du)
        if key not in self._pairs:
            self._pairs[key] = generate_pair(
                lam, TanProfile(), (-1.0, 1.0), config.DEFAULT_STEP, self.tol, parallel=self.parallel
            )
        return self._pairs[key]

    @property
    def criteria(self) -> List[Tuple[int, str, Callable[[], Tuple[bool, Dict[str, Any]]]]]:
        return [
            (1, "Dual-algebra axioms", self.dual_algebra_axioms),
            (2, "E. Study round trip", self.study_round_trip),
            (3, "Dual angle vs line-pair oracle", self.dual_angle_oracle),
            (4, "Frenet apparatus of the dual helix", self.frenet_correctness),
            (5, "Frenet synthesis round trip", self.synthesis_round_trip),
            (6, "Mannheim pair end to end", self.mannheim_end_to_end),
            (7, "Mannheim condition and sensitivity", self.mannheim_condition),
            (8, "Squared vs first-power curvature relation", self.curvature_relation_forms),
            (9, "Non-constant products and ratios", self.nonconstancy),
            (10, "Straight-line and planarity classifiers", self.classifiers),
            (11, "Ruled surface export and round trip", self.ruled_surface),
        ]

    def run(self, only: Optional[List[int]] = None) -> List[CriterionResult]:
        results = []
        for number, title, fn in self.criteria:
            if only and number not in only:
                continue
            start = time.time()
            try:
                passed, details = fn()
                result = CriterionResult(number, title, bool(passed), details)
            except DualFrenetError as e:
                result = CriterionResult(number, title, False, e.details, error=f"{e.name}: {e}")
            result.elapsed_s = time.time() - start
            level = logging.INFO if result.passed else logging.WARNING
            logger.log(level, f"Criterion {number} ({title}): {'pass' if result.passed else 'FAIL'} "
                              f"in {result.elapsed_s:.2f}s")
            results.append(result)
        return results

    # ── 1 ────────────────────────────────────────────────────────────────────
    def dual_algebra_axioms(self) -> Tuple[bool, Dict[str, Any]]:
        rng = np.random.default_rng(self.seed)
        values = rng.uniform(-10.0, 10.0, size=(10_000, 6))
        worst = 0.0
        for row in values:
            x, y, z = DualScalar(row[0], row[1]), DualScalar(row[2], row[3]), DualScalar(row[4], row[5])
            add_scale = 1.0 + _mag(x) + _mag(y) + _mag(z)
            mul_scale = 1.0 + 4.0 * _mag(x) * _mag(y) * _mag(z) + _mag(x) * (_mag(y) + _mag(z))
            pairs = [
                ((x + y) + z, x + (y + z), add_scale),
                (x + y, y + x, add_scale),
                ((x * y) * z, x * (y * z), mul_scale),
                (x * y, y * x, mul_scale),
                (x * (y + z), x * y + x * z, mul_scale),
                (x * DualScalar(1.0), x, add_scale),
                (x + ZERO, x, add_scale),
            ]
            for a, b, scale in pairs:
                worst = max(worst, (abs(a.re - b.re) + abs(a.du - b.du)) / scale)
        eps_sq = EPSILON * EPSILON
        nilpotent = eps_sq.re == 0.0 and eps_sq.du == 0.0

        lifts = {
            "sin": (lambda d: sin_cos(d)[0], math.sin, 0.7),
            "cos": (lambda d: sin_cos(d)[1], math.cos, 0.7),
            "sqrt": (sqrt, math.sqrt, 2.3),
            "acos": (acos, math.acos, 0.4),
        }
        taylor = {}
        for name, (lifted, real_fn, a) in lifts.items():
            du = lifted(DualScalar(a, 1.0)).du
            fd = float(fd_derivative(real_fn, a, 1, 1e-4))
            taylor[name] = abs(du - fd)
        passed = worst <= 1e-14 and nilpotent and max(taylor.values()) < 1e-8
        return passed, {"triples": len(values), "max_relative_error": worst,
                        "epsilon_squared_zero": nilpotent, "taylor_lift_error": taylor}

    # ── 2 ────────────────────────────────────────────────────────────────────
    def study_round_trip(self) -> Tuple[bool, Dict[str, Any]]:
        rng = np.random.default_rng(self.seed + 1)
        direction_exact = True
        foot_dev, membership = 0.0, 0.0
        for _ in range(1_000):
            line = _random_line(rng)
            v = line_to_dual(line, self.tol)
            back = dual_to_line(v, self.tol)
            direction_exact &= bool(np.array_equal(back.direction, line.direction))
            foot_dev = max(foot_dev, line.distance_to(back.point))
            membership = max(membership, *sphere_membership(v))
        passed = direction_exact and foot_dev < 1e-10 and membership < 1e-12
        return passed, {"lines": 1000, "direction_exact": direction_exact,
                        "max_foot_distance": foot_dev, "max_membership_residual": membership}

    # ── 3 ────────────────────────────────────────────────────────────────────
    def dual_angle_oracle(self) -> Tuple[bool, Dict[str, Any]]:
        rng = np.random.default_rng(self.seed + 2)
        angle_err, dist_err = 0.0, 0.0
        count = 0
        while count < 1_000:
            l1, l2 = _random_line(rng), _random_line(rng)
            if abs(float(np.dot(l1.direction, l2.direction))) >= 0.99:
                continue
            theta = dual_angle(line_to_dual(l1, self.tol), line_to_dual(l2, self.tol), self.tol)
            angle, distance = line_pair_geometry(l1, l2)
            angle_err = max(angle_err, abs(abs(theta.re) - angle))
            dist_err = max(dist_err, abs(abs(theta.du) - distance))
            count += 1
        passed = angle_err < 1e-9 and dist_err < 1e-9
        return passed, {"pairs": count, "max_angle_error": angle_err, "max_distance_error": dist_err}

    # ── 4 ────────────────────────────────────────────────────────────────────
    def frenet_correctness(self) -> Tuple[bool, Dict[str, Any]]:
        kappa_exp = DualScalar(0.12, -0.012)
        tau_exp = DualScalar(0.16, -0.016)

        def worst(curve: ExprCurve) -> float:
            err = 0.0
            for t in curve.grid(9, 0.05):
                f = frenet(curve, t, self.tol)
                err = max(err, abs(f.kappa.re - kappa_exp.re), abs(f.kappa.du - kappa_exp.du),
                          abs(f.tau.re - tau_exp.re), abs(f.tau.du - tau_exp.du))
            return err

        analytic = worst(_helix(HELIX_DUAL_SCALE))
        finite = worst(_helix(HELIX_DUAL_SCALE, finite_difference=True))

        catalog = {
            "helix": _helix(),
            "dual_helix": _helix(HELIX_DUAL_SCALE),
            "dual_helix_fd": _helix(HELIX_DUAL_SCALE, finite_difference=True),
            "dual_circle": ExprCurve(CircleExpr(2.0), ScaledExpr(0.5, CircleExpr(2.0))),
            "twisted_cubic": ExprCurve(
                PolynomialExpr([[0.0, 1.0], [0.0, 0.0, 1.0], [0.0, 0.0, 0.0, 1.0]]),
                PolynomialExpr([[0.0], [0.0, 0.2], [0.1, 0.0, 0.3]]),
                (-1.0, 1.0),
            ),
        }
        eq1 = {}
        for name, curve in catalog.items():
            res = [frenet_equation_residual(curve, t, self.tol) for t in curve.grid(9, 0.05)]
            eq1[name] = max(max(r) for r in res)
        passed = analytic < 1e-9 and finite < 1e-5 and max(eq1.values()) < 1e-6
        return passed, {"analytic_error": analytic, "finite_difference_error": finite, "eq1_residuals": eq1}

    # ── 5 ────────────────────────────────────────────────────────────────────
    def synthesis_round_trip(self) -> Tuple[bool, Dict[str, Any]]:
        kappa = DualScalar(0.12, -0.012)
        tau = DualScalar(0.16, -0.016)
        profile = FrenetProfile(ConstProfile(kappa), ConstProfile(tau), (0.0, 2.0 * math.pi))
        curve = integrate_frenet(profile, 1e-3, self.tol)
        err = 0.0
        for s in np.linspace(0.05, 2.0 * math.pi - 0.05, 41):
            f = frenet(curve, s, self.tol)
            err = max(err, abs(f.kappa.re - kappa.re), abs(f.kappa.du - kappa.du),
                      abs(f.tau.re - tau.re), abs(f.tau.du - tau.du))

        circle = FrenetProfile(ConstProfile(DualScalar(1.0)), ConstProfile(ZERO), (0.0, math.pi))
        target = np.array([0.0, 2.0, 0.0])
        errors = []
        for step in (0.1, 0.05):
            end = integrate_frenet(circle, step, self.tol).eval(math.pi).re
            errors.append(float(np.linalg.norm(end - target)))
        ratio = errors[0] / errors[1] if errors[1] > 0 else math.inf
        passed = err < 1e-6 and ratio >= 8.0
        return passed, {"max_profile_error": err, "endpoint_errors": errors, "convergence_ratio": ratio}

    # ── 6 ────────────────────────────────────────────────────────────────────
    def mannheim_end_to_end(self) -> Tuple[bool, Dict[str, Any]]:
        required = ["normal_binormal", "thm4_torsion", "thm7_linear", "thm8_i", "thm8_ii",
                    "thm8_iii", "thm8_iv", "eq9_eq10_angle"]
        details, passed = {}, True
        for lam in (DualScalar(1.0, 0.0), DualScalar(1.0, 0.25)):
            pair = self._pair(lam)
            report = verify_theorems(pair, self.tol)
            report.checks.insert(0, self._pair_check_entry(pair))
            distance = report.get("thm2_distance")
            ok = (all(report.get(name).passed for name in required)
                  and distance.max_residual_re < 1e-7 and distance.max_residual_du < 1e-7
                  and abs(abs(pair.lam.re) - 1.0) < 1e-7)
            details[f"lambda=({lam.re:g},{lam.du:g})"] = {
                name: max(report.get(name).max_residual_re, report.get(name).max_residual_du)
                for name in required + ["thm2_distance"]
            }
            passed &= ok
        return passed, details

    def _pair_check_entry(self, pair: MannheimPair) -> CheckResult:
        re, du = [], []
        for p in pair.samples:
            w = cross(p.frenet.n_vec, p.frenet1.b_vec)
            re.append(float(np.linalg.norm(w.re)))
            du.append(float(np.linalg.norm(w.du)))
        return CheckResult.from_residuals("normal_binormal", re, du, self.tol.pair)

    # ── 7 ────────────────────────────────────────────────────────────────────
    def mannheim_condition(self) -> Tuple[bool, Dict[str, Any]]:
        helix = _helix()
        exact = check_mannheim_condition(helix, DualScalar(3.0), self.tol).get("thm1_condition")
        perturbed = check_mannheim_condition(helix, DualScalar(3.03), self.tol).get("thm1_condition")
        passed = exact.max_residual_re < 1e-12 and exact.max_residual_du < 1e-12 and perturbed.max_residual_re > 1e-3
        return passed, {"residual": exact.max_residual_re, "perturbed_residual": perturbed.max_residual_re,
                        "perturbation": "relative 1%"}

    # ── 8 ────────────────────────────────────────────────────────────────────
    def curvature_relation_forms(self) -> Tuple[bool, Dict[str, Any]]:
        check = verify_theorems(self._pair(DualScalar(1.0)), self.tol).get("cor4")
        printed = max(check.printed_residual_re or 0.0, check.printed_residual_du or 0.0)
        passed = check.passed and printed > self.tol.thm
        return passed, {"squared_form": max(check.max_residual_re, check.max_residual_du),
                        "first_power_form": printed, "note": check.note}

    # ── 9 ────────────────────────────────────────────────────────────────────
    def nonconstancy(self) -> Tuple[bool, Dict[str, Any]]:
        pair = self._pair(DualScalar(1.0))
        schell = verify_theorems(pair, self.tol).get("cor2_schell")
        osc = osculating_ratio(pair, self.tol)
        passed = schell.max_residual_re > config.NONCONSTANT_SPREAD and osc.spread > config.NONCONSTANT_SPREAD
        return passed, {"tau_product_spread": schell.max_residual_re, "osculating_ratio_spread": osc.spread}

    # ── 10 ───────────────────────────────────────────────────────────────────
    def classifiers(self) -> Tuple[bool, Dict[str, Any]]:
        line = ExprCurve(LineExpr([1.0, 2.0, 3.0], [1.0, 1.0, 0.0]), LineExpr([0.0, 1.0, 0.0], [0.5, 0.0, 1.0]))
        circle = ExprCurve(CircleExpr(2.0), ScaledExpr(0.5, CircleExpr(2.0)))
        helix = _helix(HELIX_DUAL_SCALE)

        straight = classify_straight_line(line, tol=self.tol)
        planar = classify_planar(circle, tol=self.tol)
        helix_line = classify_straight_line(helix, tol=self.tol)
        helix_plane = classify_planar(helix, tol=self.tol)
        passed = (straight.is_line and max(straight.max_kappa_re, straight.max_kappa_du) < 1e-10
                  and planar.is_planar and max(planar.max_plane_re, planar.max_plane_du) < 1e-8
                  and not helix_line.is_line and not helix_plane.is_planar)
        return passed, {
            "line_kappa": max(straight.max_kappa_re, straight.max_kappa_du),
            "circle_plane": max(planar.max_plane_re or 0.0, planar.max_plane_du or 0.0),
            "helix_straight": helix_line.is_line,
            "helix_planar": helix_plane.is_planar,
        }

    # ── 11 ───────────────────────────────────────────────────────────────────
    def ruled_surface(self) -> Tuple[bool, Dict[str, Any]]:
        curve = curve_from_dict(helicoid_definition(HELICOID_PITCH))
        s_grid = np.linspace(0.0, 2.0 * math.pi, 100)
        patch = dual_curve_to_ruled(curve, s_grid, (-1.0, 1.0), self.tol, self.parallel)
        mesh = export_mesh(patch, 20, self.tol).decode("ascii").splitlines()
        vertices = np.array([[float(x) for x in ln.split()[1:]] for ln in mesh if ln.startswith("v ")])
        faces = sum(1 for ln in mesh if ln.startswith("f "))
        surface_err = helicoid_residual(vertices, HELICOID_PITCH)

        back = dual_curve_to_ruled(ruled_to_dual_curve(patch, self.tol), s_grid, patch.u_range, self.tol)
        direction_err = float(np.max(np.abs(back.rulings - patch.rulings)))
        foot_err = max(
            Line3(p, d).distance_to(q) for p, d, q in zip(patch.base_points, patch.rulings, back.base_points)
        )
        passed = (vertices.shape[0] == 2000 and faces == 2 * 99 * 19 and surface_err < 1e-9
                  and direction_err < 1e-12 and foot_err < 1e-10)
        return passed, {"vertices": int(vertices.shape[0]), "triangles": faces,
                        "max_surface_residual": surface_err, "max_direction_error": direction_err,
                        "max_foot_distance": foot_err}
