import logging
import math

import pytest

from toruslab import models
from toruslab.errors import DomainError, NotMinimalError
from toruslab.spectral import coordinate_eigenresidual, estimate_margin, first_eigenpairs, montiel_ros_test
from toruslab.surfaces import CliffordTorus, HomogeneousTorus, PerturbedTorus, TrigBump, sample_mesh


def test_coordinate_residual_vanishes_with_refinement():
    residuals = [coordinate_eigenresidual(sample_mesh(CliffordTorus(), n)) for n in (16, 32, 64)]
    assert residuals[2] < 1e-2
    assert residuals[0] > residuals[1] > residuals[2]


def test_homogeneous_residual_stays_large():
    assert coordinate_eigenresidual(sample_mesh(HomogeneousTorus(r=math.pi / 6), 64)) > 0.1


def test_margin_estimate():
    assert estimate_margin(2.0064, 2.0016) == pytest.approx(3.0 * (0.0048 / 3.0) / 2.0016)


def test_margin_rejects_non_positive_eigenvalue():
    with pytest.raises(DomainError):
        estimate_margin(1.0, 0.0)


def test_margin_shrinks_under_refinement():
    lam = [first_eigenpairs(sample_mesh(CliffordTorus(), n), 2).lambda1 for n in (16, 32, 64)]
    assert estimate_margin(lam[1], lam[2]) < estimate_margin(lam[0], lam[1])


class TestVerdicts:
    def test_clifford_is_consistent(self, caplog):
        with caplog.at_level(logging.WARNING, logger="toruslab"):
            report = montiel_ros_test(sample_mesh(CliffordTorus(), 64))
        assert report.verdict is models.MontielRosVerdict.CLIFFORD_CONSISTENT
        assert not report.lower_bound_violated
        assert report.margin > 0.0
        assert not caplog.records

    def test_zero_margin_is_inconclusive_from_above(self):
        report = montiel_ros_test(sample_mesh(CliffordTorus(), 64), margin=0.0)
        assert report.verdict is models.MontielRosVerdict.INCONCLUSIVE

    def test_explicit_margin_is_kept(self):
        report = montiel_ros_test(sample_mesh(CliffordTorus(), 64), margin=0.02)
        assert report.margin == 0.02
        assert report.verdict is models.MontielRosVerdict.CLIFFORD_CONSISTENT

    def test_rejects_negative_margin(self):
        with pytest.raises(DomainError):
            montiel_ros_test(sample_mesh(CliffordTorus(), 64), margin=-0.1)

    def test_homogeneous_tube_is_not_minimal(self):
        with pytest.raises(NotMinimalError, match="HomogeneousTorus"):
            montiel_ros_test(sample_mesh(HomogeneousTorus(r=math.pi / 6), 64))

    def test_perturbed_clifford_is_not_minimal(self):
        M = PerturbedTorus(CliffordTorus(), TrigBump(terms=((2, 2, 1e-2, 0.0),)))
        with pytest.raises(NotMinimalError):
            montiel_ros_test(sample_mesh(M, 64))
