"""
DUALFRENET Curve Catalog
Vector expressions for the real and dual parts of a curve and scalar
expressions for curvature/torsion profiles, with their JSON forms.
"""

import math
from abc import ABC, abstractmethod
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.interpolate import make_interp_spline

from core.dual_algebra import DualScalar, div, sin_cos
from core.errors import InvalidCurveDefinition
from utils.helpers import fd_derivative

MAX_ORDER = 3


# ═══════════════════════════════════════════════════════════════════════════
# Vector expressions t → R³
# ═══════════════════════════════════════════════════════════════════════════

class VectorExpr(ABC):
    """Real 3-vector valued function of the curve parameter."""

    kind: str = ""
    analytic: bool = True

    @abstractmethod
    def value(self, t: float) -> np.ndarray:
        ...

    def derivative(self, t: float, order: int) -> Optional[np.ndarray]:
        """Analytic derivative of the given order, or None when unavailable."""
        return None

    @abstractmethod
    def to_dict(self) -> Dict[str, Any]:
        ...

    def periodic_hint(self) -> bool:
        return False


class ZeroExpr(VectorExpr):
    kind = "zero"

    def value(self, t: float) -> np.ndarray:
        return np.zeros(3)

    def derivative(self, t: float, order: int) -> np.ndarray:
        return np.zeros(3)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "zero"}


class ConstantExpr(VectorExpr):
    kind = "constant"

    def __init__(self, value: Sequence[float]):
        self.vector = _vector(value, "constant.value")

    def value(self, t: float) -> np.ndarray:
        return self.vector.copy()

    def derivative(self, t: float, order: int) -> np.ndarray:
        return np.zeros(3)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "constant", "value": self.vector.tolist()}


class HelixExpr(VectorExpr):
    """(R cos t, R sin t, H t)."""
    kind = "helix"

    def __init__(self, radius: float, pitch: float):
        self.radius = float(radius)
        self.pitch = float(pitch)

    def value(self, t: float) -> np.ndarray:
        return np.array([self.radius * math.cos(t), self.radius * math.sin(t), self.pitch * t])

    def derivative(self, t: float, order: int) -> np.ndarray:
        phase = t + order * math.pi / 2.0
        z = self.pitch if order == 1 else 0.0
        return np.array([self.radius * math.cos(phase), self.radius * math.sin(phase), z])

    def periodic_hint(self) -> bool:
        return True

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "helix", "radius": self.radius, "pitch": self.pitch}


class CircleExpr(HelixExpr):
    """(R cos t, R sin t, 0)."""
    kind = "circle"

    def __init__(self, radius: float):
        super().__init__(radius, 0.0)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "circle", "radius": self.radius}


class LineExpr(VectorExpr):
    """point + t·direction (direction need not be unit)."""
    kind = "line"

    def __init__(self, point: Sequence[float], direction: Sequence[float]):
        self.point = _vector(point, "line.point")
        self.direction = _vector(direction, "line.direction")

    def value(self, t: float) -> np.ndarray:
        return self.point + t * self.direction

    def derivative(self, t: float, order: int) -> np.ndarray:
        return self.direction.copy() if order == 1 else np.zeros(3)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "line", "point": self.point.tolist(), "direction": self.direction.tolist()}


class PolynomialExpr(VectorExpr):
    """Componentwise polynomials, coefficients in ascending powers."""
    kind = "polynomial"

    def __init__(self, coeffs: Sequence[Sequence[float]]):
        if len(coeffs) != 3:
            raise InvalidCurveDefinition("polynomial.coeffs must hold three coefficient lists")
        self.coeffs = [np.array(c if len(c) else [0.0], dtype=float) for c in coeffs]
        self._derivs = {
            k: [P.polyder(c, k) if len(c) > k else np.zeros(1) for c in self.coeffs]
            for k in range(1, MAX_ORDER + 1)
        }

    def value(self, t: float) -> np.ndarray:
        return np.array([P.polyval(t, c) for c in self.coeffs])

    def derivative(self, t: float, order: int) -> np.ndarray:
        return np.array([P.polyval(t, c) for c in self._derivs[order]])

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "polynomial", "coeffs": [c.tolist() for c in self.coeffs]}


class ScaledExpr(VectorExpr):
    kind = "scaled"

    def __init__(self, factor: float, of: VectorExpr):
        self.factor = float(factor)
        self.of = of
        self.analytic = of.analytic

    def value(self, t: float) -> np.ndarray:
        return self.factor * self.of.value(t)

    def derivative(self, t: float, order: int) -> Optional[np.ndarray]:
        inner = self.of.derivative(t, order)
        return None if inner is None else self.factor * inner

    def periodic_hint(self) -> bool:
        return self.of.periodic_hint()

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "scaled", "factor": self.factor, "of": self.of.to_dict()}


class MomentExpr(VectorExpr):
    """point(t) × direction(t): the moment of a moving line."""
    kind = "moment"

    def __init__(self, point: VectorExpr, direction: VectorExpr):
        self.point = point
        self.direction = direction
        self.analytic = point.analytic and direction.analytic

    def value(self, t: float) -> np.ndarray:
        return np.cross(self.point.value(t), self.direction.value(t))

    def derivative(self, t: float, order: int) -> Optional[np.ndarray]:
        if not self.analytic:
            return None
        total = np.zeros(3)
        for i in range(order + 1):
            p = self.point.value(t) if i == 0 else self.point.derivative(t, i)
            d = (self.direction.value(t) if i == order
                 else self.direction.derivative(t, order - i))
            total += math.comb(order, i) * np.cross(p, d)
        return total

    def periodic_hint(self) -> bool:
        return self.point.periodic_hint() or self.direction.periodic_hint()

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "moment", "point": self.point.to_dict(), "direction": self.direction.to_dict()}


class SamplesExpr(VectorExpr):
    """Interpolating B-spline through sampled points (degree 5, or 3/1 for few samples)."""
    kind = "samples"
    analytic = False

    def __init__(self, t: Sequence[float], points: Sequence[Sequence[float]]):
        self.t = np.asarray(t, dtype=float)
        self.points = np.asarray(points, dtype=float)
        if self.t.ndim != 1 or self.points.shape != (self.t.size, 3):
            raise InvalidCurveDefinition(
                f"samples needs t of length n and points of shape (n, 3); "
                f"got {self.t.shape} and {self.points.shape}"
            )
        if self.t.size < 2 or np.any(np.diff(self.t) <= 0):
            raise InvalidCurveDefinition("samples.t must be strictly increasing with at least 2 entries")
        degree = 5 if self.t.size >= 6 else (3 if self.t.size >= 4 else 1)
        self._spline = make_interp_spline(self.t, self.points, k=degree, axis=0)

    def value(self, t: float) -> np.ndarray:
        return np.asarray(self._spline(t), dtype=float)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "samples", "t": self.t.tolist(), "points": self.points.tolist()}


class FunctionExpr(VectorExpr):
    """Library callables, optionally with derivative callables for orders 1..3."""
    kind = "callable"

    def __init__(self, fn: Callable[[float], Any], derivatives: Optional[List[Callable[[float], Any]]] = None):
        self.fn = fn
        self.derivatives = list(derivatives or [])
        self.analytic = len(self.derivatives) >= MAX_ORDER

    def value(self, t: float) -> np.ndarray:
        return np.asarray(self.fn(t), dtype=float).reshape(3)

    def derivative(self, t: float, order: int) -> Optional[np.ndarray]:
        if order > len(self.derivatives):
            return None
        return np.asarray(self.derivatives[order - 1](t), dtype=float).reshape(3)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "callable"}


def _vector(value: Any, where: str) -> np.ndarray:
    try:
        arr = np.asarray(value, dtype=float).reshape(-1)
    except (TypeError, ValueError) as e:
        raise InvalidCurveDefinition(f"{where}: {e}")
    if arr.shape != (3,) or not np.all(np.isfinite(arr)):
        raise InvalidCurveDefinition(f"{where} must be a finite 3-vector, got {value!r}")
    return arr


def _number(data: Dict[str, Any], key: str, default: Optional[float] = None) -> float:
    if key not in data:
        if default is None:
            raise InvalidCurveDefinition(f"Missing '{key}' in {data.get('kind')} expression")
        return default
    try:
        value = float(data[key])
    except (TypeError, ValueError):
        raise InvalidCurveDefinition(f"'{key}' must be a number, got {data[key]!r}")
    if not math.isfinite(value):
        raise InvalidCurveDefinition(f"'{key}' must be finite")
    return value


def parse_vector_expr(data: Any) -> VectorExpr:
    """Build a VectorExpr from its JSON form."""
    if data is None:
        return ZeroExpr()
    if not isinstance(data, dict) or "kind" not in data:
        raise InvalidCurveDefinition(f"Curve expression must be an object with 'kind', got {data!r}")
    kind = data["kind"]
    try:
        if kind == "zero":
            return ZeroExpr()
        if kind == "constant":
            return ConstantExpr(data["value"])
        if kind == "helix":
            return HelixExpr(_number(data, "radius"), _number(data, "pitch"))
        if kind == "circle":
            return CircleExpr(_number(data, "radius"))
        if kind == "line":
            return LineExpr(data["point"], data["direction"])
        if kind == "polynomial":
            return PolynomialExpr(data["coeffs"])
        if kind == "scaled":
            return ScaledExpr(_number(data, "factor"), parse_vector_expr(data["of"]))
        if kind == "moment":
            return MomentExpr(parse_vector_expr(data["point"]), parse_vector_expr(data["direction"]))
        if kind == "samples":
            return SamplesExpr(data["t"], data["points"])
    except KeyError as e:
        raise InvalidCurveDefinition(f"Missing {e} in '{kind}' expression")
    except (TypeError, ValueError) as e:
        raise InvalidCurveDefinition(f"Malformed '{kind}' expression: {e}")
    raise InvalidCurveDefinition(f"Unknown curve expression kind '{kind}'")


def default_domain(real: VectorExpr, dual: VectorExpr) -> "tuple[float, float]":
    for expr in (real, dual):
        if isinstance(expr, SamplesExpr):
            return float(expr.t[0]), float(expr.t[-1])
    if real.periodic_hint() or dual.periodic_hint():
        return 0.0, 2.0 * math.pi
    return 0.0, 1.0


# ═══════════════════════════════════════════════════════════════════════════
# Scalar profiles s → D
# ═══════════════════════════════════════════════════════════════════════════

class ScalarExpr(ABC):
    """Dual-valued function of real arc length, with derivatives."""

    kind: str = ""

    @abstractmethod
    def value(self, s: float) -> DualScalar:
        ...

    @abstractmethod
    def derivative(self, s: float, order: int = 1) -> DualScalar:
        ...

    def __call__(self, s: float) -> DualScalar:
        return self.value(s)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind}


class ConstProfile(ScalarExpr):
    kind = "const"

    def __init__(self, value: DualScalar):
        self.constant = DualScalar.coerce(value)

    def value(self, s: float) -> DualScalar:
        return self.constant

    def derivative(self, s: float, order: int = 1) -> DualScalar:
        return DualScalar(0.0, 0.0)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "const", "re": self.constant.re, "du": self.constant.du}


class PolyProfile(ScalarExpr):
    """Ascending-power polynomials for the real and dual parts."""
    kind = "poly"

    def __init__(self, re_coeffs: Sequence[float], du_coeffs: Sequence[float] = ()):
        self.re_coeffs = np.array(list(re_coeffs) or [0.0], dtype=float)
        self.du_coeffs = np.array(list(du_coeffs) or [0.0], dtype=float)

    def _eval(self, coeffs: np.ndarray, s: float, order: int) -> float:
        if order:
            coeffs = P.polyder(coeffs, order) if coeffs.size > order else np.zeros(1)
        return float(P.polyval(s, coeffs))

    def value(self, s: float) -> DualScalar:
        return DualScalar(self._eval(self.re_coeffs, s, 0), self._eval(self.du_coeffs, s, 0))

    def derivative(self, s: float, order: int = 1) -> DualScalar:
        return DualScalar(self._eval(self.re_coeffs, s, order), self._eval(self.du_coeffs, s, order))

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "poly", "re_coeffs": self.re_coeffs.tolist(), "du_coeffs": self.du_coeffs.tolist()}


class TanProfile(ScalarExpr):
    """scale·tan(rate·s + shift) in dual arithmetic."""
    kind = "tan"

    def __init__(
        self,
        scale: DualScalar = DualScalar(1.0),
        rate: DualScalar = DualScalar(1.0),
        shift: DualScalar = DualScalar(0.0),
    ):
        self.scale = DualScalar.coerce(scale)
        self.rate = DualScalar.coerce(rate)
        self.shift = DualScalar.coerce(shift)

    def _tan_sec2(self, s: float) -> "tuple[DualScalar, DualScalar]":
        sin_u, cos_u = sin_cos(self.rate * s + self.shift)
        tan_u = div(sin_u, cos_u)
        return tan_u, 1.0 + tan_u * tan_u

    def value(self, s: float) -> DualScalar:
        tan_u, _ = self._tan_sec2(s)
        return self.scale * tan_u

    def derivative(self, s: float, order: int = 1) -> DualScalar:
        tan_u, sec2 = self._tan_sec2(s)
        if order == 0:
            return self.scale * tan_u
        if order == 1:
            inner = sec2
        elif order == 2:
            inner = 2.0 * sec2 * tan_u
        elif order == 3:
            inner = 2.0 * sec2 * sec2 + 4.0 * sec2 * tan_u * tan_u
        else:
            raise ValueError(f"tan profile derivatives stop at order 3, got {order}")
        rate_pow = DualScalar(1.0)
        for _ in range(order):
            rate_pow = rate_pow * self.rate
        return self.scale * rate_pow * inner

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": "tan",
            "scale": self.scale.to_dict(),
            "rate": self.rate.to_dict(),
            "shift": self.shift.to_dict(),
        }


def _dual(data: Dict[str, Any], key: str, default: DualScalar) -> DualScalar:
    if key not in data:
        return default
    raw = data[key]
    try:
        if isinstance(raw, dict):
            return DualScalar.from_dict(raw)
        return DualScalar(float(raw))
    except (KeyError, TypeError, ValueError):
        raise InvalidCurveDefinition(f"'{key}' must be a number or a {{re, du}} object, got {raw!r}")


def parse_scalar_expr(data: Any) -> ScalarExpr:
    """Build a ScalarExpr from its JSON form (const, poly, tan)."""
    if isinstance(data, (int, float)) and not isinstance(data, bool):
        return ConstProfile(DualScalar(float(data)))
    if not isinstance(data, dict) or "kind" not in data:
        raise InvalidCurveDefinition(f"Profile expression must be an object with 'kind', got {data!r}")
    kind = data["kind"]
    if kind == "const":
        return ConstProfile(DualScalar(_number(data, "re", 0.0), _number(data, "du", 0.0)))
    if kind == "poly":
        try:
            return PolyProfile(
                [float(c) for c in data.get("re_coeffs", [])],
                [float(c) for c in data.get("du_coeffs", [])],
            )
        except (TypeError, ValueError) as e:
            raise InvalidCurveDefinition(f"Malformed poly profile: {e}")
    if kind == "tan":
        return TanProfile(
            _dual(data, "scale", DualScalar(1.0)),
            _dual(data, "rate", DualScalar(1.0)),
            _dual(data, "shift", DualScalar(0.0)),
        )
    raise InvalidCurveDefinition(f"Unknown profile kind '{kind}'")


class CallableProfile(ScalarExpr):
    """Wraps a plain callable s → DualScalar; derivatives by 5-point differences."""
    kind = "callable"

    def __init__(self, fn: Callable[[float], Any], step: float = 1e-3):
        self.fn = fn
        self.step = step

    def value(self, s: float) -> DualScalar:
        return DualScalar.coerce(self.fn(s))

    def derivative(self, s: float, order: int = 1) -> DualScalar:
        if order == 0:
            return self.value(s)

        def parts(x: float) -> np.ndarray:
            v = self.value(x)
            return np.array([v.re, v.du])

        d = fd_derivative(parts, s, order, self.step * max(1.0, abs(s)))
        return DualScalar(float(d[0]), float(d[1]))


class RealPartProfile(ScalarExpr):
    """Real part of another profile (dual part dropped)."""

    def __init__(self, of: ScalarExpr):
        self.of = of
        self.kind = of.kind

    def value(self, s: float) -> DualScalar:
        return DualScalar(self.of.value(s).re)

    def derivative(self, s: float, order: int = 1) -> DualScalar:
        return DualScalar(self.of.derivative(s, order).re)

    def to_dict(self) -> Dict[str, Any]:
        return self.of.to_dict()


def as_profile(fn: Any) -> ScalarExpr:
    if isinstance(fn, ScalarExpr):
        return fn
    if isinstance(fn, (DualScalar, int, float)):
        return ConstProfile(DualScalar.coerce(fn))
    if callable(fn):
        return CallableProfile(fn)
    raise InvalidCurveDefinition(f"Cannot use {type(fn).__name__} as a profile")
