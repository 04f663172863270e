import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from core.dual_linear import DualVec3, dual_angle, sphere_membership
from core.errors import InvalidLine, NotOnDualSphere
from core.line_geometry import Line3, dual_to_line, line_pair_geometry, line_to_dual


class TestStudyMap:
    def test_moment_formula(self):
        v = line_to_dual(Line3([1.0, 0.0, 0.0], [0.0, 0.0, 1.0]))
        np.testing.assert_allclose(v.re, [0.0, 0.0, 1.0])
        np.testing.assert_allclose(v.du, [0.0, -1.0, 0.0])

    def test_inverse_gives_foot_point(self):
        line = dual_to_line(DualVec3([0.0, 0.0, 1.0], [0.0, -1.0, 0.0]))
        np.testing.assert_allclose(line.point, [1.0, 0.0, 0.0])
        np.testing.assert_allclose(line.direction, [0.0, 0.0, 1.0])

    @pytest.mark.parametrize("direction", [[0.0, 0.0, 2.0], [0.0, 0.0, 0.0], [0.6, 0.8, 0.1]])
    def test_line_rejects_non_unit_direction(self, direction):
        with pytest.raises(InvalidLine):
            Line3([0.0, 0.0, 0.0], direction)
        with pytest.raises(InvalidLine):
            Line3.from_dict({"point": [1, 2, 3], "direction": direction})

    def test_study_map_checks_direction_tighter_than_input(self):
        line = Line3([0.0, 0.0, 0.0], [0.0, 0.0, 1.0 + 1e-9])
        with pytest.raises(InvalidLine):
            line_to_dual(line)

    def test_off_sphere_vector(self):
        with pytest.raises(NotOnDualSphere):
            dual_to_line(DualVec3([0.0, 0.0, 1.0], [0.0, 0.0, 1.0]))

    def test_random_round_trip(self):
        rng = np.random.default_rng(3)
        for _ in range(500):
            d = rng.normal(size=3)
            line = Line3(rng.uniform(-10, 10, size=3), d / np.linalg.norm(d))
            v = line_to_dual(line)
            back = dual_to_line(v)
            assert max(sphere_membership(v)) < 1e-12
            np.testing.assert_array_equal(back.direction, line.direction)
            assert line.distance_to(back.point) < 1e-10
            # the foot point is the closest point to the origin
            assert abs(np.dot(back.point, back.direction)) < 1e-10


@st.composite
def lines(draw):
    coord = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False)
    point = [draw(coord) for _ in range(3)]
    d = np.array([draw(st.floats(min_value=-1.0, max_value=1.0)) for _ in range(3)])
    assume(np.linalg.norm(d) > 0.1)
    return Line3(point, d / np.linalg.norm(d))


@settings(max_examples=300, deadline=None)
@given(lines())
def test_study_round_trip_property(line):
    v = line_to_dual(line)
    back = dual_to_line(v)
    assert max(sphere_membership(v)) < 1e-12
    assert line.distance_to(back.point) < 1e-10
    assert abs(np.dot(back.point, back.direction)) < 1e-10


class TestLinePairGeometry:
    def test_skew_lines(self):
        angle, distance = line_pair_geometry(
            Line3([0.0, 0.0, 0.0], [1.0, 0.0, 0.0]),
            Line3([0.0, 0.0, 2.0], [0.0, 1.0, 0.0]),
        )
        assert angle == pytest.approx(math.pi / 2)
        assert distance == pytest.approx(2.0)

    def test_parallel_lines(self):
        angle, distance = line_pair_geometry(
            Line3([0.0, 0.0, 0.0], [0.0, 0.0, 1.0]),
            Line3([3.0, 4.0, 7.0], [0.0, 0.0, 1.0]),
        )
        assert angle == pytest.approx(0.0)
        assert distance == pytest.approx(5.0)

    def test_matches_dual_angle_on_random_pairs(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            lines = []
            for _ in range(2):
                d = rng.normal(size=3)
                lines.append(Line3(rng.uniform(-5, 5, size=3), d / np.linalg.norm(d)))
            theta = dual_angle(line_to_dual(lines[0]), line_to_dual(lines[1]))
            angle, distance = line_pair_geometry(*lines)
            assert theta.re == pytest.approx(angle, abs=1e-9)
            assert abs(theta.du) == pytest.approx(distance, abs=1e-9)
            normal = np.cross(lines[0].direction, lines[1].direction)
            signed = np.dot(lines[1].point - lines[0].point, normal) / np.linalg.norm(normal)
            assert theta.du == pytest.approx(signed, abs=1e-9)

    def test_line_dict(self):
        line = Line3.from_dict({"point": [1, 2, 3], "direction": [0, 1, 0]})
        assert line.to_dict() == {"point": [1.0, 2.0, 3.0], "direction": [0.0, 1.0, 0.0]}
        np.testing.assert_allclose(line.at(2.0), [1.0, 4.0, 3.0])
