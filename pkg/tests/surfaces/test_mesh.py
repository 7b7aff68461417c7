import math

import numpy as np
import pytest

from toruslab.errors import DomainError
from toruslab.surfaces import CliffordTorus, Cyclide, HomogeneousTorus, sample_mesh


def test_clifford_area():
    mesh = sample_mesh(CliffordTorus(), 64)
    assert mesh.total_area == pytest.approx(2.0 * math.pi**2, rel=1e-3)


@pytest.mark.parametrize("r", [math.pi / 6, 0.3, 1.2])
def test_homogeneous_area(r):
    mesh = sample_mesh(HomogeneousTorus(r=r), 32, 48)
    assert mesh.total_area == pytest.approx(4.0 * math.pi**2 * math.cos(r) * math.sin(r), rel=1e-3)


def test_refinement_reduces_area_error():
    M = Cyclide.from_tube(1.2, 0.5)
    a8, a16, a32 = (sample_mesh(M, n).total_area for n in (8, 16, 32))
    assert abs(a16 - a32) <= abs(a8 - a16) / 2.0


def test_mesh_layout():
    mesh = sample_mesh(CliffordTorus(), 16, 8)
    assert mesh.resolution == (16, 8)
    assert mesh.vertex_count == 128
    assert mesh.points.shape == (16, 8, 4)
    assert mesh.metric.shape == (16, 8, 2, 2)
    # row-major: vertex (i, j) is row i·n_v + j
    np.testing.assert_array_equal(mesh.coordinates[3 * 8 + 5], mesh.points[3, 5])
    np.testing.assert_allclose(mesh.area_density, 0.5)


def test_rejects_coarse_grid():
    with pytest.raises(DomainError):
        sample_mesh(CliffordTorus(), 4)
