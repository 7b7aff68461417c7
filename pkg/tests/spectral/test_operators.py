import math

import numpy as np
import pytest

from toruslab.errors import DomainError
from toruslab.spectral import assemble_operators, cell_vertices, project_mean_zero, rayleigh_quotient
from toruslab.surfaces import CliffordTorus, sample_mesh


@pytest.fixture(scope="module")
def mesh():
    return sample_mesh(CliffordTorus(), 64)


@pytest.fixture(scope="module")
def operators(mesh):
    return assemble_operators(mesh)


def test_operators_are_symmetric(operators):
    stiffness, mass = operators
    assert abs(stiffness - stiffness.T).max() < 1e-14
    assert abs(mass - mass.T).max() < 1e-14


def test_constants_have_zero_energy(mesh, operators):
    stiffness, _ = operators
    ones = np.ones(mesh.vertex_count)
    assert np.max(np.abs(stiffness @ ones)) < 1e-12


def test_mass_of_constants_is_area(mesh, operators):
    _, mass = operators
    ones = np.ones(mesh.vertex_count)
    assert ones @ (mass @ ones) == pytest.approx(2.0 * math.pi**2, rel=1e-12)
    assert ones @ (mass @ ones) == pytest.approx(mesh.total_area, rel=1e-12)


def test_mass_is_positive_on_checkerboard_mode(mesh, operators):
    _, mass = operators
    i, j = np.meshgrid(np.arange(mesh.n_u), np.arange(mesh.n_v), indexing="ij")
    checkerboard = ((-1.0) ** (i + j)).ravel()
    assert checkerboard @ (mass @ checkerboard) == pytest.approx(mesh.total_area / 9.0, rel=1e-9)


def test_cell_vertices_wrap_around():
    cells = cell_vertices(8, 8)
    assert cells.shape == (64, 4)
    # the last cell joins vertex (7, 7) to its periodic neighbours
    assert sorted(cells[-1].tolist()) == sorted([63, 56, 7, 0])


def test_project_mean_zero(mesh, operators):
    _, mass = operators
    f = 3.0 + mesh.coordinates[:, 0]
    g = project_mean_zero(f, mass)
    assert abs(np.ones(mesh.vertex_count) @ (mass @ g)) < 1e-12


class TestRayleighQuotient:
    def test_coordinate_function(self, mesh, operators):
        assert rayleigh_quotient(mesh, mesh.coordinates[:, 0], operators) == pytest.approx(2.0, rel=5e-3)

    def test_second_harmonic(self, mesh, operators):
        U, _ = mesh.parameters()
        assert rayleigh_quotient(mesh, np.cos(2.0 * U), operators) == pytest.approx(8.0, rel=2e-2)

    def test_accepts_flat_and_grid_values(self, mesh, operators):
        U, V = mesh.parameters()
        f = np.sin(U) * np.cos(V)
        assert rayleigh_quotient(mesh, f, operators) == rayleigh_quotient(mesh, f.ravel(), operators)

    def test_quotient_is_an_upper_bound(self, mesh, operators):
        U, V = mesh.parameters()
        f = np.cos(U) + 0.3 * np.sin(2.0 * V)
        assert rayleigh_quotient(mesh, f, operators) > 2.0

    def test_rejects_constant(self, mesh, operators):
        with pytest.raises(DomainError):
            rayleigh_quotient(mesh, np.ones(mesh.vertex_count), operators)

    def test_rejects_wrong_size(self, mesh, operators):
        with pytest.raises(DomainError):
            rayleigh_quotient(mesh, np.ones(10), operators)
