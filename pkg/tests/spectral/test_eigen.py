import math

import numpy as np
import pytest

from toruslab.errors import DomainError
from toruslab.spectral import (
    SpectralResult,
    assemble_operators,
    first_eigenpairs,
    multiplicity_groups,
    read_eigenfunctions,
    write_eigenfunctions,
)
from toruslab.surfaces import CliffordTorus, HomogeneousTorus, sample_mesh


@pytest.fixture(scope="module")
def clifford_mesh():
    return sample_mesh(CliffordTorus(), 64)


@pytest.fixture(scope="module")
def clifford_result(clifford_mesh):
    return first_eigenpairs(clifford_mesh, 6)


class TestMultiplicityGroups:
    def test_groups_close_values(self):
        assert multiplicity_groups([0.0, 2.0, 2.01, 4.0]) == [[0], [1, 2], [3]]

    def test_zero_uses_absolute_floor(self):
        assert multiplicity_groups([0.0, 1e-10, 1.0]) == [[0, 1], [2]]

    def test_relative_tolerance(self):
        assert multiplicity_groups([1.0, 1.05], rel=0.1) == [[0, 1]]
        assert multiplicity_groups([1.0, 1.05], rel=0.01) == [[0], [1]]


class TestClifford:
    def test_first_eigenvalue(self, clifford_result):
        assert clifford_result.eigenvalues[0] == pytest.approx(0.0, abs=1e-10)
        assert clifford_result.lambda1 == pytest.approx(2.0, rel=5e-3)

    def test_first_eigenvalue_is_approached_from_above(self, clifford_result):
        assert clifford_result.lambda1 > 2.0

    def test_multiplicity_four(self, clifford_result):
        assert [len(g) for g in clifford_result.multiplicity_groups][:2] == [1, 4]

    def test_eigenfunctions_are_mass_orthonormal(self, clifford_mesh, clifford_result):
        _, mass = assemble_operators(clifford_mesh)
        F = clifford_result.eigenfunctions
        np.testing.assert_allclose(F @ (mass @ F.T), np.eye(6), atol=1e-8)

    def test_residuals_are_small(self, clifford_result):
        assert np.all(clifford_result.residuals < 1e-6)

    def test_grid_view(self, clifford_result):
        grid = clifford_result.eigenfunction_grid(1)
        assert grid.shape == (64, 64)
        np.testing.assert_array_equal(grid.ravel(), clifford_result.eigenfunctions[1])

    def test_deterministic(self, clifford_mesh, clifford_result):
        again = first_eigenpairs(clifford_mesh, 6)
        np.testing.assert_array_equal(again.eigenvalues, clifford_result.eigenvalues)

    def test_acceptance_resolution(self):
        result = first_eigenpairs(sample_mesh(CliffordTorus(), 128), 6)
        assert result.lambda1 == pytest.approx(2.0, rel=5e-3)
        assert len(result.multiplicity_groups[1]) == 4


def test_homogeneous_tube():
    result = first_eigenpairs(sample_mesh(HomogeneousTorus(r=math.pi / 6), 64), 6)
    assert result.lambda1 == pytest.approx(4.0 / 3.0, rel=5e-3)
    assert [len(g) for g in result.multiplicity_groups][:3] == [1, 2, 2]
    assert result.eigenvalues[3] == pytest.approx(4.0, rel=5e-3)


@pytest.mark.parametrize("count", [1, 64])
def test_rejects_count(count):
    with pytest.raises(DomainError):
        first_eigenpairs(sample_mesh(CliffordTorus(), 8), count)


class TestExport:
    def test_round_trip(self, tmp_path, clifford_result):
        path = write_eigenfunctions(tmp_path / "modes.bin", clifford_result)
        grids = read_eigenfunctions(path)
        assert grids.shape == (6, 64, 64)
        np.testing.assert_array_equal(grids[2], clifford_result.eigenfunction_grid(2))
        assert path.stat().st_size == 16 + 8 * 6 * 64 * 64

    def test_rejects_bad_magic(self, tmp_path):
        path = tmp_path / "modes.bin"
        path.write_bytes(b"XXXX" + bytes(12))
        with pytest.raises(DomainError):
            read_eigenfunctions(path)

    def test_rejects_truncated_payload(self, tmp_path):
        result = SpectralResult(
            eigenvalues=np.array([0.0, 1.0]),
            eigenfunctions=np.ones((2, 64)),
            residuals=np.zeros(2),
            resolution=(8, 8),
        )
        path = write_eigenfunctions(tmp_path / "modes.bin", result)
        path.write_bytes(path.read_bytes()[:-8])
        with pytest.raises(DomainError):
            read_eigenfunctions(path)
