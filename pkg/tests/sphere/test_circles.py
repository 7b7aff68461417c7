import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from toruslab.errors import DomainError
from toruslab.sphere import (
    GeodesicCircle,
    SpherePoint,
    circle_curvature,
    coordinate_great_circle,
    rotation_about_geodesic,
)
from toruslab.intersection import osculating_curvature


def make_circle(radius: float) -> GeodesicCircle:
    eye = np.eye(4)
    return GeodesicCircle(center=SpherePoint(x=eye[0]), e1=eye[1], e2=eye[2], radius=radius)


class TestCircleCurvature:
    def test_great_circle_is_geodesic(self):
        assert circle_curvature(math.pi / 2) == 0.0

    def test_clifford_radius(self):
        assert circle_curvature(math.pi / 4) == pytest.approx(1.0)

    def test_matches_sampled_circle(self):
        points = make_circle(math.pi / 6).point(np.linspace(0.0, 2.0 * math.pi, 2000, endpoint=False))
        estimate = osculating_curvature(points)
        np.testing.assert_allclose(estimate, math.sqrt(3.0), rtol=1e-5)
        assert circle_curvature(math.pi / 6) == pytest.approx(1.7320508075688772)

    @pytest.mark.parametrize("r", [0.0, -0.1, math.pi / 2 + 1e-6])
    def test_rejects_out_of_range(self, r):
        with pytest.raises(DomainError):
            circle_curvature(r)

    def test_strictly_decreasing(self):
        r = np.linspace(0.01, math.pi / 2, 200)
        values = [circle_curvature(float(x)) for x in r]
        assert all(a > b for a, b in zip(values, values[1:]))


class TestGeodesicCircle:
    def test_centers_are_antipodal(self):
        c1, c2 = make_circle(0.3).centers
        np.testing.assert_array_equal(c1.x, -c2.x)

    def test_points_lie_at_radius_from_center(self):
        circle = make_circle(0.7)
        points = circle.point(np.linspace(0.0, 6.0, 17))
        np.testing.assert_allclose(points @ circle.center.x, math.cos(0.7), atol=1e-15)
        assert circle.equator.contains(points)

    def test_great_circle_through_points(self):
        p = SpherePoint(x=np.array([1.0, 0.0, 0.0, 0.0]))
        q = SpherePoint.from_direction([1.0, 1.0, 0.0, 0.0])
        g = GeodesicCircle.great_circle(p, q)
        assert g.is_geodesic
        assert g.curvature == 0.0


class TestRotationAboutGeodesic:
    def test_zero_angle_is_identity(self):
        Q = rotation_about_geodesic(coordinate_great_circle(0, 1), 0.0)
        np.testing.assert_allclose(Q.Q, np.eye(4), atol=1e-15)

    def test_full_turn_is_identity(self):
        Q = rotation_about_geodesic(coordinate_great_circle(0, 1), 2.0 * math.pi)
        np.testing.assert_allclose(Q.Q, np.eye(4), atol=1e-12)

    def test_quarter_turn_about_x1x2_circle(self):
        g = coordinate_great_circle(0, 1)
        Q = rotation_about_geodesic(g, math.pi / 2)
        np.testing.assert_allclose(Q.apply([0.0, 0.0, 1.0, 0.0]), [0.0, 0.0, 0.0, 1.0], atol=1e-15)
        assert Q.determinant == 1

    def test_fixes_geodesic_pointwise(self):
        g = coordinate_great_circle(1, 3)
        Q = rotation_about_geodesic(g, 1.1)
        points = g.point(np.linspace(0.0, 2.0 * math.pi, 9))
        np.testing.assert_allclose(Q.apply(points), points, atol=1e-15)

    @given(
        st.floats(min_value=-10.0, max_value=10.0),
        st.floats(min_value=-10.0, max_value=10.0),
    )
    def test_composition_adds_angles(self, a, b):
        g = coordinate_great_circle(0, 2)
        composed = rotation_about_geodesic(g, a) @ rotation_about_geodesic(g, b)
        np.testing.assert_allclose(composed.Q, rotation_about_geodesic(g, a + b).Q, atol=1e-10)

    def test_rejects_small_circle(self):
        with pytest.raises(DomainError):
            rotation_about_geodesic(make_circle(0.5), 1.0)
