"""
DUALFRENET Dual Algebra
Dual scalars a + εa* with ε² = 0 and the Taylor-lifted elementary functions.
"""

import math
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple, Union

import config
from core.errors import (
    AngleSingularity,
    NonPositiveRealPart,
    NumericBreakdown,
    PureDualDivisor,
)

Real = Union[int, float]


@dataclass(frozen=True)
class DualScalar:
    """Dual number re + ε·du."""
    re: float
    du: float = 0.0

    # ── Coercion ────────────────────────────────────────────────────────────
    @staticmethod
    def coerce(value: Union["DualScalar", Real]) -> "DualScalar":
        if isinstance(value, DualScalar):
            return value
        if isinstance(value, (int, float)):
            return DualScalar(float(value), 0.0)
        raise TypeError(f"Cannot interpret {type(value).__name__} as a dual scalar")

    # ── Operators ───────────────────────────────────────────────────────────
    def __add__(self, other):
        return add(self, DualScalar.coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        other = DualScalar.coerce(other)
        return add(self, DualScalar(-other.re, -other.du))

    def __rsub__(self, other):
        return DualScalar.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (DualScalar, int, float)):
            return mul(self, DualScalar.coerce(other))
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        return div(self, DualScalar.coerce(other))

    def __rtruediv__(self, other):
        return div(DualScalar.coerce(other), self)

    def __neg__(self):
        return DualScalar(-self.re, -self.du)

    def conj(self) -> "DualScalar":
        return DualScalar(self.re, -self.du)

    def is_finite(self) -> bool:
        return math.isfinite(self.re) and math.isfinite(self.du)

    def to_dict(self) -> Dict[str, float]:
        return {"re": self.re, "du": self.du}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "DualScalar":
        return cls(float(data["re"]), float(data.get("du", 0.0)))

    def __repr__(self) -> str:
        return f"({self.re!r} + ε{self.du!r})"


ZERO = DualScalar(0.0, 0.0)
ONE = DualScalar(1.0, 0.0)
EPSILON = DualScalar(0.0, 1.0)


def _checked(re: float, du: float, op: str) -> DualScalar:
    result = DualScalar(re, du)
    if not result.is_finite():
        raise NumericBreakdown(f"{op} produced a non-finite dual number ({re}, {du})")
    return result


def add(x: DualScalar, y: DualScalar) -> DualScalar:
    return _checked(x.re + y.re, x.du + y.du, "add")


def mul(x: DualScalar, y: DualScalar) -> DualScalar:
    return _checked(x.re * y.re, x.re * y.du + x.du * y.re, "mul")


def div(x: DualScalar, y: DualScalar) -> DualScalar:
    """Inverse of the product rule; pure dual divisors are zero divisors."""
    if y.re == 0.0:
        raise PureDualDivisor(
            f"Cannot divide {x!r} by pure dual number {y!r}",
            {"divisor": y.to_dict()},
        )
    return _checked(x.re / y.re, (x.du * y.re - x.re * y.du) / (y.re * y.re), "div")


def sqrt(x: DualScalar) -> DualScalar:
    if not x.re > 0.0:
        raise NonPositiveRealPart(
            f"sqrt needs a positive real part, got {x!r}", {"operand": x.to_dict()}
        )
    root = math.sqrt(x.re)
    return _checked(root, x.du / (2.0 * root), "sqrt")


def sin_cos(x: DualScalar) -> Tuple[DualScalar, DualScalar]:
    s, c = math.sin(x.re), math.cos(x.re)
    return _checked(s, x.du * c, "sin"), _checked(c, -x.du * s, "cos")


def acos(x: DualScalar, tol_parallel: Optional[float] = None) -> DualScalar:
    """
    Dual arc cosine θ̃ with cos θ̃ = x.
    The dual part is lost when |x.re| reaches 1 (real angle 0 or π).
    """
    if tol_parallel is None:
        tol_parallel = config.BASE_TOLERANCES["parallel"] * config.TOL_SCALE
    if abs(x.re) >= 1.0 - tol_parallel:
        raise AngleSingularity(
            f"acos undefined in the dual part for real part {x.re!r}",
            {"operand": x.to_dict()},
        )
    return _checked(math.acos(x.re), -x.du / math.sqrt(1.0 - x.re * x.re), "acos")


def approx_eq(x: DualScalar, y: DualScalar, tol_re: float = 1e-12, tol_du: float = 1e-12) -> bool:
    """Part-wise comparison; dual numbers carry no ordering."""
    return abs(x.re - y.re) <= tol_re and abs(x.du - y.du) <= tol_du
