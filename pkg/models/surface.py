"""
DUALFRENET Surface Models
Sampled ruled surface r(s, u) = α(s) + u·I(s).
"""

from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np

from core.errors import InvalidPatch
from models.tolerances import Tolerances, resolve


@dataclass
class RuledSurfacePatch:
    """Base points α(s_i), unit rulings I(s_i) and the ruling parameter range."""
    base_points: np.ndarray      # (n, 3)
    rulings: np.ndarray          # (n, 3)
    u_range: Tuple[float, float]
    s_grid: np.ndarray           # (n,)

    def __post_init__(self):
        self.base_points = np.asarray(self.base_points, dtype=float)
        self.rulings = np.asarray(self.rulings, dtype=float)
        self.s_grid = np.asarray(self.s_grid, dtype=float).reshape(-1)
        self.u_range = (float(self.u_range[0]), float(self.u_range[1]))
        n = self.s_grid.size
        if self.base_points.shape != (n, 3) or self.rulings.shape != (n, 3):
            raise InvalidPatch(
                f"Patch arrays disagree: s_grid {self.s_grid.shape}, "
                f"base_points {self.base_points.shape}, rulings {self.rulings.shape}"
            )

    @property
    def size(self) -> int:
        return int(self.s_grid.size)

    def validate(self, tol: Optional[Tolerances] = None) -> None:
        tol = resolve(tol)
        if self.size < 2:
            raise InvalidPatch(f"A patch needs at least 2 rulings, got {self.size}")
        if not (np.all(np.isfinite(self.base_points)) and np.all(np.isfinite(self.rulings))):
            raise InvalidPatch("Patch contains non-finite coordinates")
        lengths = np.linalg.norm(self.rulings, axis=1)
        bad = np.flatnonzero(np.abs(lengths - 1.0) > tol.unit)
        if bad.size:
            i = int(bad[0])
            raise InvalidPatch(
                f"Ruling {i} is not a unit vector (|I| = {lengths[i]:.12g})",
                {"index": i, "s": float(self.s_grid[i]), "length": float(lengths[i])},
            )
        if not self.u_range[1] > self.u_range[0]:
            raise InvalidPatch(f"u_range must be increasing, got {self.u_range}")

    def is_degenerate(self, tol: Optional[Tolerances] = None) -> bool:
        """True when every sample carries the same line."""
        tol = resolve(tol)
        moments = np.cross(self.base_points, self.rulings)
        return bool(
            np.all(np.abs(self.rulings - self.rulings[0]) <= tol.zero)
            and np.all(np.abs(moments - moments[0]) <= tol.zero)
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "base_points": self.base_points.tolist(),
            "rulings": self.rulings.tolist(),
            "u_range": list(self.u_range),
            "s_grid": self.s_grid.tolist(),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RuledSurfacePatch":
        try:
            return cls(data["base_points"], data["rulings"], data["u_range"], data["s_grid"])
        except (KeyError, TypeError, ValueError, IndexError) as e:
            raise InvalidPatch(f"Malformed patch definition: {e}")
