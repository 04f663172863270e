"""
DUALFRENET Data Models
Dataclass records produced and consumed by the engines.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from core.dual_algebra import DualScalar
from core.curve_catalog import as_profile
from core.dual_linear import DualVec3, UnitDualVec3
from core.errors import InvalidCurveDefinition


@dataclass
class FrenetData:
    """Dual Frenet apparatus at one parameter value."""
    t_vec: UnitDualVec3
    n_vec: UnitDualVec3
    b_vec: UnitDualVec3
    kappa: DualScalar
    tau: DualScalar
    speed: DualScalar  # ds̃/dt

    def frame(self) -> Tuple[UnitDualVec3, UnitDualVec3, UnitDualVec3]:
        return self.t_vec, self.n_vec, self.b_vec

    def to_dict(self) -> Dict[str, Any]:
        return {
            "t": self.t_vec.to_dict(),
            "n": self.n_vec.to_dict(),
            "b": self.b_vec.to_dict(),
            "kappa": self.kappa.to_dict(),
            "tau": self.tau.to_dict(),
            "speed": self.speed.to_dict(),
        }


@dataclass
class StraightLineResult:
    """Outcome of the straight-line classifier."""
    is_line: bool
    max_kappa_re: float
    max_kappa_du: float
    samples: int
    direction: Optional[UnitDualVec3] = None   # x̃
    offset: Optional[DualVec3] = None          # ỹ
    line: Optional[Any] = None                 # Line3 of the real part

    def to_dict(self) -> Dict[str, Any]:
        return {
            "is_line": self.is_line,
            "max_kappa_re": self.max_kappa_re,
            "max_kappa_du": self.max_kappa_du,
            "samples": self.samples,
            "direction": self.direction.to_dict() if self.direction is not None else None,
            "offset": self.offset.to_dict() if self.offset is not None else None,
            "line": self.line.to_dict() if self.line is not None else None,
        }


@dataclass
class PlanarResult:
    """Outcome of the planarity classifier."""
    is_planar: bool
    max_tau_re: float
    max_tau_du: float
    samples: int
    max_plane_re: Optional[float] = None
    max_plane_du: Optional[float] = None
    plane_point: Optional[DualVec3] = None
    plane_normal: Optional[UnitDualVec3] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "is_planar": self.is_planar,
            "max_tau_re": self.max_tau_re,
            "max_tau_du": self.max_tau_du,
            "samples": self.samples,
            "max_plane_re": self.max_plane_re,
            "max_plane_du": self.max_plane_du,
            "plane_point": self.plane_point.to_dict() if self.plane_point is not None else None,
            "plane_normal": self.plane_normal.to_dict() if self.plane_normal is not None else None,
        }


@dataclass
class CheckResult:
    """
    One numerical check. A regular check passes when both residual maxima are
    below `tolerance`; an `expect_nonconstant` check passes when the relative
    spread in `max_residual_re` exceeds it. Diagnostic checks are reported but
    do not decide the overall verdict.
    """
    name: str
    max_residual_re: float
    max_residual_du: float
    tolerance: float
    samples: int
    skipped: int = 0
    printed_residual_re: Optional[float] = None
    printed_residual_du: Optional[float] = None
    note: str = ""
    expect_nonconstant: bool = False
    diagnostic: bool = False
    passed: bool = field(init=False)

    def __post_init__(self):
        if self.expect_nonconstant:
            self.passed = bool(self.max_residual_re > self.tolerance)
        else:
            self.passed = bool(
                self.max_residual_re < self.tolerance and self.max_residual_du < self.tolerance
            )

    @classmethod
    def from_residuals(
        cls,
        name: str,
        re: Any,
        du: Any,
        tolerance: float,
        **kwargs: Any,
    ) -> "CheckResult":
        re_arr = np.abs(np.asarray(re, dtype=float))
        du_arr = np.abs(np.asarray(du, dtype=float))
        return cls(
            name=name,
            max_residual_re=float(re_arr.max()) if re_arr.size else 0.0,
            max_residual_du=float(du_arr.max()) if du_arr.size else 0.0,
            tolerance=tolerance,
            samples=int(re_arr.size),
            **kwargs,
        )

    def to_dict(self) -> Dict[str, Any]:
        data = {
            "name": self.name,
            "max_residual_re": self.max_residual_re,
            "max_residual_du": self.max_residual_du,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "samples": self.samples,
        }
        if self.skipped:
            data["skipped"] = self.skipped
        if self.printed_residual_re is not None:
            data["printed_residual_re"] = self.printed_residual_re
            data["printed_residual_du"] = self.printed_residual_du
        if self.note:
            data["note"] = self.note
        if self.expect_nonconstant:
            data["expect_nonconstant"] = True
        if self.diagnostic:
            data["diagnostic"] = True
        return data


@dataclass
class TheoremReport:
    """Ordered collection of checks with an overall verdict."""
    checks: List[CheckResult] = field(default_factory=list)
    pair: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if not c.diagnostic)

    def add(self, check: CheckResult) -> CheckResult:
        self.checks.append(check)
        return check

    def extend(self, other: "TheoremReport") -> None:
        self.checks.extend(other.checks)

    def get(self, name: str) -> CheckResult:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def names(self) -> List[str]:
        return [c.name for c in self.checks]

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed and not c.diagnostic]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "pair": self.pair,
            "pass": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }


@dataclass
class PairSample:
    """Corresponding points of a Mannheim pair and their frames."""
    t: float                 # parameter on C̃
    t1: float                # parameter on C̃₁
    point: DualVec3          # α̃(t)
    point1: DualVec3         # α̃₁(t₁)
    frenet: FrenetData
    frenet1: FrenetData
    theta: DualScalar        # signed θ̃ with t̃ = cos θ̃ t̃₁ + sin θ̃ ñ₁
    lam: DualScalar          # ⟨α̃ - α̃₁, b̃₁⟩
    mu: Optional[DualScalar] = None   # λ̃ cot θ̃; None where sin θ̃ vanishes


@dataclass
class MannheimPair:
    """Validated dual Mannheim pair with its sampled correspondence."""
    curve_c: Any
    curve_c1: Any
    lam: DualScalar
    orientation: int               # ν = sign⟨ñ, b̃₁⟩
    samples: List[PairSample]
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def correspondence(self) -> Tuple[np.ndarray, np.ndarray]:
        return (
            np.array([p.t for p in self.samples]),
            np.array([p.t1 for p in self.samples]),
        )

    @property
    def theta(self) -> List[DualScalar]:
        return [p.theta for p in self.samples]

    @property
    def mu(self) -> List[Optional[DualScalar]]:
        """Cached μ̃ = λ̃ cot θ̃ per sample."""
        return [p.mu for p in self.samples]

    def to_dict(self) -> Dict[str, Any]:
        t, t1 = self.correspondence
        return {
            "lambda": self.lam.to_dict(),
            "orientation": self.orientation,
            "samples": len(self.samples),
            "t_range": [float(t[0]), float(t[-1])] if len(t) else [],
            "t1_range": [float(t1[0]), float(t1[-1])] if len(t1) else [],
            **self.metadata,
        }


@dataclass
class OsculatingReport:
    """Dual osculating centres and the four-distance ratio along a pair."""
    centers: List[Tuple[DualVec3, DualVec3]]
    ratio: List[DualScalar]
    is_constant: bool
    spread: float
    radius_deviation: float              # max | ‖α̃M̃‖.re - 1/κ |
    consistent_form_deviation: float
    printed_form_deviation: Optional[float]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "is_constant": self.is_constant,
            "spread": self.spread,
            "radius_deviation": self.radius_deviation,
            "consistent_form_deviation": self.consistent_form_deviation,
            "printed_form_deviation": self.printed_form_deviation,
            "ratio": [r.to_dict() for r in self.ratio],
        }


@dataclass
class FrenetProfile:
    """Prescribed dual curvature and torsion over a range of real arc length."""
    kappa_fn: Any                      # ScalarExpr or callable s → DualScalar
    tau_fn: Any
    s_range: Tuple[float, float]
    initial_point: DualVec3 = field(default_factory=DualVec3.zero)
    initial_frame: Optional[Tuple[DualVec3, DualVec3, DualVec3]] = None

    def __post_init__(self):
        self.kappa_fn = as_profile(self.kappa_fn)
        self.tau_fn = as_profile(self.tau_fn)
        a, b = (float(x) for x in self.s_range)
        if not b > a:
            raise InvalidCurveDefinition(f"s_range must be increasing, got {self.s_range!r}")
        self.s_range = (a, b)
        if self.initial_frame is None:
            eye = np.eye(3)
            self.initial_frame = tuple(DualVec3(eye[k], np.zeros(3)) for k in range(3))
        self._check_frame()

    def _check_frame(self, limit: float = 1e-12) -> None:
        frame_re = np.array([v.re for v in self.initial_frame])
        frame_du = np.array([v.du for v in self.initial_frame])
        gram_re = frame_re @ frame_re.T - np.eye(3)
        gram_du = frame_re @ frame_du.T + frame_du @ frame_re.T
        if np.max(np.abs(gram_re)) > limit or np.max(np.abs(gram_du)) > limit:
            raise InvalidCurveDefinition("initial_frame must be dual-orthonormal")
        if np.linalg.det(frame_re) < 0:
            raise InvalidCurveDefinition("initial_frame must be right-handed")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kappa": self.kappa_fn.to_dict(),
            "tau": self.tau_fn.to_dict(),
            "s_range": list(self.s_range),
            "initial_point": self.initial_point.to_dict(),
            "initial_frame": [v.to_dict() for v in self.initial_frame],
        }
