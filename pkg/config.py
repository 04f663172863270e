"""
DUALFRENET Configuration Module
Numeric policy, sampling defaults and runtime settings.
"""

import os
import logging
from dotenv import load_dotenv

load_dotenv()

logger = logging.getLogger(__name__)

# ─── Logging ──────────────────────────────────────────────────────────────────
LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")
LOG_LEVEL_INT: int = getattr(logging, LOG_LEVEL.upper(), logging.INFO)
LOG_FILE: str = os.getenv("DUALFRENET_LOG_FILE", "dualfrenet.log")


def _read_tol_scale() -> float:
    raw = os.getenv("DUALFRENET_TOL_SCALE", "1.0")
    try:
        value = float(raw)
    except ValueError:
        logger.warning(f"DUALFRENET_TOL_SCALE={raw!r} is not a number; using 1.0")
        return 1.0
    if not value > 0:
        logger.warning(f"DUALFRENET_TOL_SCALE={raw!r} must be positive; using 1.0")
        return 1.0
    return value


# ─── Tolerances ───────────────────────────────────────────────────────────────
# Every tolerance below is multiplied by TOL_SCALE when a Tolerances record
# is built (models.tolerances.Tolerances.default).
TOL_SCALE: float = _read_tol_scale()

BASE_TOLERANCES = {
    "zero":      1e-12,   # vanishing real parts (norm, speed)
    "parallel":  1e-9,    # |cos| distance from ±1 in dual angles
    "kappa":     1e-10,   # real curvature below which the frame is undefined
    "classify":  1e-8,    # straight-line and planar classifiers
    "sphere":    1e-8,    # dual unit sphere membership and Line3 direction on input
    "unit":      1e-10,   # UnitDualVec3, E. Study map input
    "pair":      1e-6,    # normal/binormal coincidence
    "thm":       1e-6,    # theorem residuals
    "ode":       1e-6,    # partner ODE residual
    "drift":     1e-6,    # per-step frame drift during synthesis
}

# ─── Sampling ─────────────────────────────────────────────────────────────────
CLASSIFY_SAMPLES: int = int(os.getenv("DUALFRENET_CLASSIFY_SAMPLES", "64"))
CHECK_SAMPLES: int = int(os.getenv("DUALFRENET_CHECK_SAMPLES", "201"))
# Even sample counts keep the grid off the midpoint of symmetric pairs.
PAIR_SAMPLES: int = int(os.getenv("DUALFRENET_PAIR_SAMPLES", "400"))
PAIR_MARGIN: float = 0.02          # fraction of arc length trimmed at each end
PROJECTION_GRID: int = 801
OFFSET_NODES: int = 1001
ARC_TABLE_SIZE: int = 1025
FRENET_SAMPLES: int = 101
MESH_U_SAMPLES: int = 20

# ─── Finite Differences ───────────────────────────────────────────────────────
# Base steps per derivative order, multiplied by max(1, |t|).
FD_STEPS = {
    1: 1e-4,
    2: 1e-3,
    3: 2e-3,
}
RATE_STEP: float = 1e-3

# ─── Integration ──────────────────────────────────────────────────────────────
DEFAULT_STEP: float = float(os.getenv("DUALFRENET_STEP", "1e-3"))

# ─── Theorem Checks ───────────────────────────────────────────────────────────
# |sin θ̃| floor for μ̃ = λ̃ cot θ̃ in the linear relation, applied above tol.parallel
MU_MIN_SIN: float = 0.05
NONCONSTANT_SPREAD: float = 0.01   # Schell product, osculating ratio

# ─── Mesh Export ──────────────────────────────────────────────────────────────
MESH_DIGITS: int = 12

# ─── App Info ─────────────────────────────────────────────────────────────────
APP_NAME = "DUALFRENET"
APP_VERSION = "1.0.0"
APP_DESCRIPTION = "Dual Frenet apparatus, Mannheim pairs and line geometry"
