"""
DUALFRENET Line Geometry
The E. Study map between oriented lines and the dual unit sphere, and a
classical real-space oracle for the angle and distance between two lines.
"""

import math
from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np

from core.dual_linear import DualVec3, UnitDualVec3, require_on_unit_sphere
from core.errors import InvalidLine
from models.tolerances import Tolerances, resolve


@dataclass(frozen=True, eq=False)
class Line3:
    """Oriented line through `point` with unit `direction`."""
    point: np.ndarray
    direction: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "point", np.array(self.point, dtype=float).reshape(3))
        object.__setattr__(self, "direction", np.array(self.direction, dtype=float).reshape(3))
        _check_direction(self, resolve(None).sphere)

    def at(self, u: float) -> np.ndarray:
        return self.point + u * self.direction

    def distance_to(self, x: Sequence[float]) -> float:
        """Euclidean distance from a point to this line."""
        return float(np.linalg.norm(np.cross(np.asarray(x, dtype=float) - self.point, self.direction)))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "point": [float(x) for x in self.point],
            "direction": [float(x) for x in self.direction],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Line3":
        return cls(data["point"], data["direction"])


def _check_direction(line: Line3, limit: float) -> None:
    length = float(np.linalg.norm(line.direction))
    if not abs(length - 1.0) <= limit:
        raise InvalidLine(
            f"Line direction must be a unit vector (|d| = {length:.12g})",
            {"line": line.to_dict()},
        )


def line_to_dual(line: Line3, tol: Optional[Tolerances] = None) -> UnitDualVec3:
    """E. Study map: (ā, p̄ × ā)."""
    tol = resolve(tol)
    _check_direction(line, tol.unit)
    return UnitDualVec3(line.direction, np.cross(line.point, line.direction), tol.unit)


def dual_to_line(v: DualVec3, tol: Optional[Tolerances] = None) -> Line3:
    """Inverse E. Study map; the foot of the perpendicular from the origin is ā × ā*."""
    tol = resolve(tol)
    require_on_unit_sphere(v, tol)
    return Line3(np.cross(v.re, v.du), v.re.copy())


def line_pair_geometry(l1: Line3, l2: Line3) -> Tuple[float, float]:
    """
    Angle in [0, π] between the directions and shortest distance between the
    lines, by the common-perpendicular formula (point-to-line for parallel lines).
    """
    d1 = l1.direction / np.linalg.norm(l1.direction)
    d2 = l2.direction / np.linalg.norm(l2.direction)
    normal = np.cross(d1, d2)
    sin_angle = float(np.linalg.norm(normal))
    angle = math.atan2(sin_angle, float(np.dot(d1, d2)))
    gap = l2.point - l1.point
    if sin_angle <= 1e-12:
        distance = float(np.linalg.norm(np.cross(gap, d1)))
    else:
        distance = abs(float(np.dot(gap, normal))) / sin_angle
    return angle, distance
