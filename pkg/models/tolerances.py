"""
DUALFRENET Tolerance Context
One record carries the numeric policy through every engine call.
"""

from dataclasses import dataclass, fields, replace
from typing import Any, Dict

import config


@dataclass(frozen=True)
class Tolerances:
    """Tolerance context record; every engine op accepts one (None means default)."""
    zero: float
    parallel: float
    kappa: float
    classify: float
    sphere: float
    unit: float
    pair: float
    thm: float
    ode: float
    drift: float

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not value > 0:
                raise ValueError(f"Tolerance '{f.name}' must be positive, got {value!r}")

    @classmethod
    def default(cls) -> "Tolerances":
        scale = config.TOL_SCALE
        return cls(**{name: base * scale for name, base in config.BASE_TOLERANCES.items()})

    def with_overrides(self, **overrides: float) -> "Tolerances":
        unknown = set(overrides) - {f.name for f in fields(self)}
        if unknown:
            raise ValueError(f"Unknown tolerance(s): {', '.join(sorted(unknown))}")
        return replace(self, **{k: float(v) for k, v in overrides.items() if v is not None})

    def to_dict(self) -> Dict[str, Any]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def resolve(tol: "Tolerances | None") -> Tolerances:
    return tol if tol is not None else Tolerances.default()
