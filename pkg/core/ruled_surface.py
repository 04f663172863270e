"""
DUALFRENET Ruled Surfaces
E. Study correspondence between curves on the dual unit sphere and ruled
surfaces, plus triangulated mesh export in Wavefront OBJ text.
"""

import logging
from typing import Any, Optional, Sequence, Tuple

import numpy as np

import config
from core.curve_catalog import SamplesExpr
from core.dual_curve import DualCurve, ExprCurve
from core.errors import InvalidPatch, NotOnDualSphere
from core.line_geometry import dual_to_line
from models.surface import RuledSurfacePatch
from models.tolerances import Tolerances, resolve
from utils.helpers import format_sig, ordered_map

logger = logging.getLogger(__name__)


def dual_curve_to_ruled(
    c: DualCurve,
    s_grid: Optional[Sequence[float]] = None,
    u_range: Tuple[float, float] = (-1.0, 1.0),
    tol: Optional[Tolerances] = None,
    parallel: bool = False,
) -> RuledSurfacePatch:
    """Each sample of a curve on S̃² becomes one ruling through its foot point."""
    tol = resolve(tol)
    grid = c.grid(config.FRENET_SAMPLES) if s_grid is None else np.asarray(s_grid, dtype=float)

    def line_at(s: float):
        v = c.eval(float(s))
        try:
            return dual_to_line(v, tol)
        except NotOnDualSphere as e:
            raise NotOnDualSphere(f"{e} at s={s:.12g}", {**e.details, "s": float(s)})

    lines = ordered_map(line_at, list(grid), parallel)
    patch = RuledSurfacePatch(
        base_points=np.array([ln.point for ln in lines]),
        rulings=np.array([ln.direction for ln in lines]),
        u_range=u_range,
        s_grid=grid,
    )
    patch.validate(tol)
    if patch.is_degenerate(tol):
        logger.warning("Dual curve is constant: the ruled patch is a single repeated line")
    logger.info(f"Ruled patch from dual curve: {patch.size} rulings, u∈[{u_range[0]:.6g}, {u_range[1]:.6g}]")
    return patch


def ruled_to_dual_curve(patch: RuledSurfacePatch, tol: Optional[Tolerances] = None) -> ExprCurve:
    """
    Dual curve (I(s), α(s) × I(s)) through the patch samples; between samples
    both parts are spline interpolated.
    """
    patch.validate(tol)
    moments = np.cross(patch.base_points, patch.rulings)
    domain = (float(patch.s_grid[0]), float(patch.s_grid[-1]))
    return ExprCurve(SamplesExpr(patch.s_grid, patch.rulings), SamplesExpr(patch.s_grid, moments), domain)


def surface_point(patch: RuledSurfacePatch, i: int, u: float) -> np.ndarray:
    """r(s_i, u) = α(s_i) + u·I(s_i)."""
    return patch.base_points[i] + u * patch.rulings[i]


def mesh_vertices(patch: RuledSurfacePatch, n_u: int) -> np.ndarray:
    """Vertex grid, row-major in (s, u): shape (n_s·n_u, 3)."""
    us = np.linspace(patch.u_range[0], patch.u_range[1], n_u)
    grid = patch.base_points[:, None, :] + us[None, :, None] * patch.rulings[:, None, :]
    return grid.reshape(-1, 3)


def mesh_faces(n_s: int, n_u: int) -> np.ndarray:
    """Two 1-based triangles per grid quad."""
    faces = []
    for i in range(n_s - 1):
        for j in range(n_u - 1):
            a = i * n_u + j + 1
            b = (i + 1) * n_u + j + 1
            c = (i + 1) * n_u + j + 2
            d = i * n_u + j + 2
            faces.append((a, b, c))
            faces.append((a, c, d))
    return np.array(faces, dtype=int).reshape(-1, 3)


def export_mesh(
    patch: RuledSurfacePatch,
    n_u: int = config.MESH_U_SAMPLES,
    tol: Optional[Tolerances] = None,
    digits: int = config.MESH_DIGITS,
) -> bytes:
    """Triangulated strip over s_grid × n_u uniform u samples, as OBJ text."""
    if n_u < 2:
        raise InvalidPatch(f"Mesh needs at least 2 samples across the ruling, got {n_u}")
    patch.validate(tol)
    if patch.is_degenerate(tol):
        logger.warning("Exporting a degenerate ruled patch: the mesh has zero area")

    vertices = mesh_vertices(patch, n_u)
    faces = mesh_faces(patch.size, n_u)
    lines = [f"v {' '.join(format_sig(float(x), digits) for x in v)}" for v in vertices]
    lines += [f"f {a} {b} {c}" for a, b, c in faces]
    logger.info(f"Exported mesh: {len(vertices)} vertices, {len(faces)} triangles")
    return ("\n".join(lines) + "\n").encode("ascii")


def helicoid_definition(pitch: float) -> dict:
    """Dual curve JSON of the lines through (0, 0, h·s) along (cos s, sin s, 0)."""
    return {
        "real": {"kind": "circle", "radius": 1.0},
        "dual": {
            "kind": "moment",
            "point": {"kind": "line", "point": [0.0, 0.0, 0.0], "direction": [0.0, 0.0, float(pitch)]},
            "direction": {"kind": "circle", "radius": 1.0},
        },
        "domain": [0.0, 2.0 * np.pi],
    }


def helicoid_residual(points: Any, pitch: float) -> float:
    """Max deviation from y·cos(z/h) - x·sin(z/h) = 0 over a point cloud."""
    pts = np.asarray(points, dtype=float).reshape(-1, 3)
    s = pts[:, 2] / pitch
    return float(np.max(np.abs(pts[:, 1] * np.cos(s) - pts[:, 0] * np.sin(s))))
