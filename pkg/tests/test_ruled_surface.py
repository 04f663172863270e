import numpy as np
import pytest

from core.curve_catalog import CircleExpr, ConstantExpr
from core.dual_curve import ExprCurve, curve_from_dict
from core.dual_linear import sphere_membership
from core.errors import InvalidPatch, NotOnDualSphere
from core.line_geometry import Line3, dual_to_line
from core.ruled_surface import (
    dual_curve_to_ruled,
    export_mesh,
    helicoid_definition,
    helicoid_residual,
    mesh_faces,
    ruled_to_dual_curve,
    surface_point,
)
from models.surface import RuledSurfacePatch

PITCH = 0.5


@pytest.fixture
def helicoid_patch():
    curve = curve_from_dict(helicoid_definition(PITCH))
    return dual_curve_to_ruled(curve, curve.grid(100), (-1.0, 1.0))


def _parse_obj(data: bytes):
    vertices, faces = [], []
    for line in data.decode("ascii").splitlines():
        tag, *values = line.split()
        if tag == "v":
            vertices.append([float(x) for x in values])
        elif tag == "f":
            faces.append([int(x) for x in values])
    return np.array(vertices), np.array(faces)


class TestDualCurveToRuled:
    def test_helicoid(self, helicoid_patch):
        np.testing.assert_allclose(helicoid_patch.base_points[:, :2], 0.0, atol=1e-12)
        np.testing.assert_allclose(helicoid_patch.base_points[:, 2], PITCH * helicoid_patch.s_grid, atol=1e-12)
        points = [surface_point(helicoid_patch, i, 0.7) for i in range(helicoid_patch.size)]
        assert helicoid_residual(points, PITCH) < 1e-10

    def test_planar_pencil(self):
        curve = ExprCurve(CircleExpr(1.0), None)
        patch = dual_curve_to_ruled(curve, curve.grid(12))
        np.testing.assert_allclose(patch.base_points, 0.0, atol=1e-15)
        np.testing.assert_allclose(patch.rulings[:, 2], 0.0, atol=1e-15)

    def test_constant_curve_is_degenerate(self):
        curve = ExprCurve(ConstantExpr([0, 0, 1]), None, (0.0, 1.0))
        patch = dual_curve_to_ruled(curve, curve.grid(5))
        assert patch.is_degenerate()
        vertices, faces = _parse_obj(export_mesh(patch, 2))
        assert len(vertices) == 10 and len(faces) == 8

    def test_off_sphere_sample_names_parameter(self):
        curve = ExprCurve(CircleExpr(2.0), None)
        with pytest.raises(NotOnDualSphere) as info:
            dual_curve_to_ruled(curve, curve.grid(4))
        assert "s" in info.value.details


class TestRuledToDualCurve:
    def test_round_trip(self, helicoid_patch):
        curve = ruled_to_dual_curve(helicoid_patch)
        for i, s in enumerate(helicoid_patch.s_grid):
            v = curve.eval(s)
            assert max(sphere_membership(v)) < 1e-10
            line = dual_to_line(v)
            np.testing.assert_allclose(line.direction, helicoid_patch.rulings[i], atol=1e-12)
            original = Line3(helicoid_patch.base_points[i], helicoid_patch.rulings[i])
            assert original.distance_to(line.point) < 1e-10

    def test_cylinder(self):
        s = np.linspace(0.0, 2.0 * np.pi, 40)
        base = np.column_stack([np.cos(s), np.sin(s), np.zeros_like(s)])
        rulings = np.tile([0.0, 0.0, 1.0], (s.size, 1))
        curve = ruled_to_dual_curve(RuledSurfacePatch(base, rulings, (0.0, 1.0), s))
        v = curve.eval(s[5])
        np.testing.assert_allclose(v.re, [0.0, 0.0, 1.0], atol=1e-12)
        np.testing.assert_allclose(v.du, np.cross(base[5], [0.0, 0.0, 1.0]), atol=1e-12)

    def test_non_unit_ruling(self):
        s = np.array([0.0, 1.0])
        patch = RuledSurfacePatch(np.zeros((2, 3)), [[0, 0, 1], [0, 0, 2]], (0.0, 1.0), s)
        with pytest.raises(InvalidPatch):
            ruled_to_dual_curve(patch)


class TestMeshExport:
    def test_minimal_strip(self):
        patch = RuledSurfacePatch([[0, 0, 0], [1, 0, 0]], [[0, 0, 1], [0, 0, 1]], (0.0, 1.0), [0.0, 1.0])
        data = export_mesh(patch, 2)
        vertices, faces = _parse_obj(data)
        assert len(vertices) == 4 and len(faces) == 2
        assert data.endswith(b"\n") and b"\r" not in data
        np.testing.assert_allclose(vertices, [[0, 0, 0], [0, 0, 1], [1, 0, 0], [1, 0, 1]])

    def test_helicoid_counts_and_relation(self, helicoid_patch):
        data = export_mesh(helicoid_patch, 20)
        vertices, faces = _parse_obj(data)
        assert len(vertices) == 2000
        assert len(faces) == 2 * 99 * 19
        assert faces.min() == 1 and faces.max() == 2000
        assert helicoid_residual(vertices, PITCH) < 1e-9

    def test_deterministic(self, helicoid_patch):
        assert export_mesh(helicoid_patch, 7) == export_mesh(helicoid_patch, 7)

    def test_face_indices(self):
        np.testing.assert_array_equal(mesh_faces(2, 3), [[1, 4, 5], [1, 5, 2], [2, 5, 6], [2, 6, 3]])

    def test_needs_two_ruling_samples(self, helicoid_patch):
        with pytest.raises(InvalidPatch):
            export_mesh(helicoid_patch, 1)


class TestPatchModel:
    def test_shape_mismatch(self):
        with pytest.raises(InvalidPatch):
            RuledSurfacePatch(np.zeros((3, 3)), np.zeros((2, 3)), (0.0, 1.0), [0.0, 1.0])

    def test_dict_round_trip(self, helicoid_patch):
        again = RuledSurfacePatch.from_dict(helicoid_patch.to_dict())
        np.testing.assert_array_equal(again.rulings, helicoid_patch.rulings)
        assert again.u_range == (-1.0, 1.0)

    def test_malformed_dict(self):
        with pytest.raises(InvalidPatch):
            RuledSurfacePatch.from_dict({"rulings": []})
