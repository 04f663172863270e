"""
DUALFRENET Dual Linear Algebra
Dual 3-vectors ā + εā*: scalar and vector products, norm, normalization,
dual angle, and dual sphere membership.
"""

from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence, Union

import numpy as np

from core.dual_algebra import DualScalar, acos, div
from core.errors import NotOnDualSphere, NumericBreakdown, ZeroRealPart
from models.tolerances import Tolerances, resolve


def _vec(value: Any) -> np.ndarray:
    arr = np.array(value, dtype=float).reshape(-1)
    if arr.shape != (3,):
        raise ValueError(f"Expected a 3-vector, got shape {arr.shape}")
    return arr


@dataclass(frozen=True, eq=False)
class DualVec3:
    """Dual vector re + ε·du with real 3-vector parts."""
    re: np.ndarray
    du: np.ndarray

    def __post_init__(self):
        re, du = _vec(self.re), _vec(self.du)
        if not (np.all(np.isfinite(re)) and np.all(np.isfinite(du))):
            raise NumericBreakdown(f"Non-finite dual vector component: {re}, {du}")
        re.setflags(write=False)
        du.setflags(write=False)
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "du", du)

    @classmethod
    def zero(cls) -> "DualVec3":
        return cls(np.zeros(3), np.zeros(3))

    # ── Arithmetic ──────────────────────────────────────────────────────────
    def __add__(self, other: "DualVec3") -> "DualVec3":
        return DualVec3(self.re + other.re, self.du + other.du)

    def __sub__(self, other: "DualVec3") -> "DualVec3":
        return DualVec3(self.re - other.re, self.du - other.du)

    def __neg__(self) -> "DualVec3":
        return DualVec3(-self.re, -self.du)

    def __mul__(self, k: Union[DualScalar, float, int]) -> "DualVec3":
        if isinstance(k, DualScalar):
            return DualVec3(k.re * self.re, k.re * self.du + k.du * self.re)
        if isinstance(k, (int, float, np.floating)):
            return DualVec3(float(k) * self.re, float(k) * self.du)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, k: Union[DualScalar, float, int]) -> "DualVec3":
        return self * div(DualScalar.coerce(1.0), DualScalar.coerce(k))

    # ── Comparison and IO ───────────────────────────────────────────────────
    def approx_eq(self, other: "DualVec3", tol_re: float = 1e-12, tol_du: float = 1e-12) -> bool:
        return (
            float(np.max(np.abs(self.re - other.re))) <= tol_re
            and float(np.max(np.abs(self.du - other.du))) <= tol_du
        )

    def as_array(self) -> np.ndarray:
        """Stacked [re, du] of length 6."""
        return np.concatenate([self.re, self.du])

    @classmethod
    def from_array(cls, arr: Sequence[float]) -> "DualVec3":
        arr = np.asarray(arr, dtype=float)
        return cls(arr[:3], arr[3:6])

    def to_dict(self) -> Dict[str, Any]:
        return {"re": [float(x) + 0.0 for x in self.re], "du": [float(x) + 0.0 for x in self.du]}  # no negative zeros

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "DualVec3":
        return cls(data["re"], data.get("du", [0.0, 0.0, 0.0]))

    def __repr__(self) -> str:
        return f"DualVec3(re={self.re.tolist()}, du={self.du.tolist()})"


class UnitDualVec3(DualVec3):
    """Point of the dual unit sphere: ⟨re, re⟩ = 1 and ⟨re, du⟩ = 0 (validated once)."""

    def __init__(self, re: Any, du: Any, tol: Optional[float] = None):
        super().__init__(re, du)
        limit = tol if tol is not None else resolve(None).unit
        res_norm, res_orth = sphere_membership(self)
        if res_norm > limit or res_orth > limit:
            raise NotOnDualSphere(
                f"Not a unit dual vector: |⟨a,a⟩-1|={res_norm:.3e}, |⟨a,a*⟩|={res_orth:.3e}",
                {"vector": self.to_dict()},
            )


# ── Products ────────────────────────────────────────────────────────────────

def dot(a: DualVec3, b: DualVec3) -> DualScalar:
    return DualScalar(
        float(np.dot(a.re, b.re)),
        float(np.dot(a.re, b.du) + np.dot(a.du, b.re)),
    )


def cross(a: DualVec3, b: DualVec3) -> DualVec3:
    return DualVec3(
        np.cross(a.re, b.re),
        np.cross(a.re, b.du) + np.cross(a.du, b.re),
    )


def norm(a: DualVec3, tol: Optional[Tolerances] = None) -> DualScalar:
    """‖ā‖ + ε⟨ā, ā*⟩/‖ā‖; undefined for a vanishing real part."""
    tol = resolve(tol)
    length = float(np.linalg.norm(a.re))
    if length <= tol.zero:
        raise ZeroRealPart(
            f"Norm undefined: real part has length {length:.3e}", {"vector": a.to_dict()}
        )
    return DualScalar(length, float(np.dot(a.re, a.du)) / length)


def normalize(a: DualVec3, tol: Optional[Tolerances] = None) -> UnitDualVec3:
    tol = resolve(tol)
    scaled = a / norm(a, tol)
    return UnitDualVec3(scaled.re, scaled.du, tol.unit)


def unit(a: DualVec3, tol: Optional[Tolerances] = None) -> UnitDualVec3:
    """Validate `a` as a point of the dual unit sphere."""
    if isinstance(a, UnitDualVec3):
        return a
    return UnitDualVec3(a.re, a.du, resolve(tol).unit)


def dual_angle(a: DualVec3, b: DualVec3, tol: Optional[Tolerances] = None) -> DualScalar:
    """
    Dual angle θ + εθ* between two unit dual vectors.

    θ* is the signed shortest distance between the lines: positive when the
    common perpendicular from a to b, the direction of a and the direction
    of b form a right-handed triple.
    """
    tol = resolve(tol)
    a, b = unit(a, tol), unit(b, tol)
    return acos(dot(a, b), tol.parallel)


# ── Dual spheres ────────────────────────────────────────────────────────────

def sphere_membership(a: DualVec3) -> "tuple[float, float]":
    """Residuals (|⟨a,a⟩ - 1|, |⟨a,a*⟩|) of dual unit sphere membership."""
    return abs(float(np.dot(a.re, a.re)) - 1.0), abs(float(np.dot(a.re, a.du)))


def sphere_residual(
    a: DualVec3,
    centre: Optional[DualVec3] = None,
    radius: Union[DualScalar, float] = 1.0,
) -> DualScalar:
    """⟨a - c̃, a - c̃⟩ - r̃² for the dual sphere with centre c̃ and radius r̃."""
    offset = a if centre is None else a - centre
    r = DualScalar.coerce(radius)
    return dot(offset, offset) - r * r


def on_dual_sphere(
    a: DualVec3,
    centre: Optional[DualVec3] = None,
    radius: Union[DualScalar, float] = 1.0,
    tol: Optional[float] = None,
) -> bool:
    limit = tol if tol is not None else resolve(None).sphere
    residual = sphere_residual(a, centre, radius)
    return abs(residual.re) <= limit and abs(residual.du) <= limit


def require_on_unit_sphere(a: DualVec3, tol: Optional[Tolerances] = None, **context: Any) -> None:
    tol = resolve(tol)
    if not on_dual_sphere(a, tol=tol.sphere):
        res_norm, res_orth = sphere_membership(a)
        raise NotOnDualSphere(
            f"Dual vector off the unit sphere: |⟨a,a⟩-1|={res_norm:.3e}, "
            f"|⟨a,a*⟩|={res_orth:.3e}",
            {"vector": a.to_dict(), **context},
        )
