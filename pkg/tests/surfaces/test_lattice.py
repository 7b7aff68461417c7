import math

import numpy as np
import pytest

from toruslab import models
from toruslab.errors import DomainError
from toruslab.intersection import osculating_curvature
from toruslab.sphere import Equator, intrinsic_distance
from toruslab.surfaces import lattice_points, line_of_curvature

SQ = math.sqrt(2.0) / 2.0


class TestLatticePoints:
    def test_order_one(self):
        points = lattice_points(1)
        assert len(points) == 4
        assert any(np.allclose(p.x, [SQ, 0.0, SQ, 0.0]) for p in points)

    def test_points_lie_on_clifford_torus(self):
        for p in lattice_points(3):
            assert np.linalg.norm(p.x[:2]) == pytest.approx(SQ)
            assert np.linalg.norm(p.x[2:]) == pytest.approx(SQ)

    def test_order_two_points_are_distinct(self):
        points = lattice_points(2)
        assert len(points) == 16
        for i, p in enumerate(points):
            for q in points[i + 1 :]:
                assert intrinsic_distance(p, q) > 0.1

    def test_rejects_order_zero(self):
        with pytest.raises(DomainError):
            lattice_points(0)


class TestLineOfCurvature:
    def test_start_point(self):
        phi = line_of_curvature(4, 0, models.CurveFamily.PHI)
        np.testing.assert_allclose(phi.point(0.0), [SQ, 0.0, SQ, 0.0])

    def test_phi_zero_lies_in_v0_equator(self):
        phi = line_of_curvature(3, 0, models.CurveFamily.PHI)
        eq = Equator(v=np.array([0.0, 1.0, 0.0, 0.0]))
        assert eq.contains(phi.point(np.linspace(0.0, 2.0 * math.pi, 50)))

    @pytest.mark.parametrize("family", list(models.CurveFamily))
    def test_unit_curvature(self, family):
        curve = line_of_curvature(2, 1, family)
        points = curve.point(np.linspace(0.0, 2.0 * math.pi, 4000, endpoint=False))
        np.testing.assert_allclose(osculating_curvature(points), 1.0, atol=1e-6)
        assert curve.circle.curvature == pytest.approx(1.0)

    def test_rejects_index_out_of_range(self):
        with pytest.raises(DomainError):
            line_of_curvature(2, 4, models.CurveFamily.PSI)
