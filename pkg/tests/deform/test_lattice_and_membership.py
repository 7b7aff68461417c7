import math

import numpy as np
import pytest

from toruslab.deform import (
    IdentityMap,
    MobiusBoost,
    TwistMap,
    deformed_clifford,
    deformed_line_of_curvature,
    equator_samples,
    minimality_residual_at_lattice,
    omega_membership,
)
from toruslab.errors import DomainError


class TestLatticeResidual:
    @pytest.mark.parametrize("n", [1, 2, 4, 8])
    def test_identity_is_minimal(self, n):
        assert minimality_residual_at_lattice(IdentityMap(), n) < 1e-12

    def test_twist_keeps_clifford_minimal(self):
        assert minimality_residual_at_lattice(TwistMap(0.7), 3) < 1e-9

    def test_boost_breaks_minimality(self):
        assert minimality_residual_at_lattice(MobiusBoost([1.0, 0.0, 0.0, 0.0], 0.3), 2) > 1e-3

    def test_deformed_clifford_evaluates_through_map(self):
        xi = TwistMap(0.5)
        M = deformed_clifford(xi)
        x = math.sqrt(0.5) * np.array([math.cos(0.3), math.sin(0.3), math.cos(1.1), math.sin(1.1)])
        np.testing.assert_allclose(M.eval(0.3, 1.1), xi.value(x), atol=1e-14)

    def test_rejects_order_zero(self):
        with pytest.raises(DomainError):
            minimality_residual_at_lattice(IdentityMap(), 0)


class TestMembership:
    def test_equator_samples_lie_in_v0(self):
        points = equator_samples(12)
        assert points.shape == (12 * 24, 4)
        np.testing.assert_array_equal(points[:, 1], 0.0)
        np.testing.assert_allclose(np.linalg.norm(points, axis=-1), 1.0)

    def test_line_of_curvature_image_under_identity(self):
        curve = deformed_line_of_curvature(IdentityMap(), 2)
        assert curve.length == pytest.approx(math.pi * math.sqrt(2.0), rel=1e-9)
        np.testing.assert_allclose(np.abs(curve.curvature), 1.0, atol=1e-9)

    def test_identity_is_a_member(self):
        reference = deformed_line_of_curvature(IdentityMap(), 2).signature()
        report = omega_membership(IdentityMap(), 2, reference, alpha=0.5, bound=1.0)
        assert report.equator_residual == 0.0
        assert report.congruence_residual < 1e-9
        assert report.lattice_residual < 1e-12
        assert report.tau == 0.0
        assert report.member

    def test_tau_bound_is_strict(self):
        reference = deformed_line_of_curvature(IdentityMap(), 1).signature()
        report = omega_membership(IdentityMap(), 1, reference, bound=0.0)
        assert not report.member

    def test_map_leaving_equator_is_rejected(self):
        reference = deformed_line_of_curvature(IdentityMap(), 1).signature()
        with pytest.raises(DomainError):
            omega_membership(TwistMap(0.3), 1, reference)
