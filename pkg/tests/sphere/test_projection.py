import numpy as np
import pytest

from toruslab.errors import DomainError, SingularityError
from toruslab.sphere import (
    Congruence,
    Equator,
    InverseStereographic,
    SpherePoint,
    project_points,
    stereographic_frame,
    stereographic_project,
)

E4 = np.array([0.0, 0.0, 0.0, 1.0])


def sample_equator(eq: Equator, count: int, rng: np.random.Generator) -> np.ndarray:
    x = rng.standard_normal((count, 4))
    x -= np.outer(x @ eq.v, eq.v)
    return x / np.linalg.norm(x, axis=-1, keepdims=True)


def test_antipode_maps_to_origin():
    np.testing.assert_allclose(stereographic_project(E4, -E4), [0.0, 0.0, 0.0], atol=1e-15)


def test_equatorial_point_is_fixed():
    np.testing.assert_allclose(stereographic_project(E4, [1.0, 0.0, 0.0, 0.0]), [1.0, 0.0, 0.0])


def test_pole_is_singular():
    with pytest.raises(SingularityError):
        stereographic_project(E4, E4)


def test_equator_through_pole_projects_to_plane(rng):
    eq = Equator.from_pole([0.3, -0.2, 0.9, 0.1])
    pole = sample_equator(eq, 1, rng)[0]
    images = project_points(pole, sample_equator(eq, 500, rng), up=eq.v)
    assert np.max(np.abs(images[:, 2])) < 1e-8


def test_frame_with_up_axis_is_positively_oriented():
    pole = SpherePoint.from_direction([1.0, 0.0, 0.0, 0.0])
    F = stereographic_frame(pole, up=[0.0, 1.0, 0.0, 0.0])
    np.testing.assert_allclose(F.T @ F, np.eye(3), atol=1e-14)
    np.testing.assert_allclose(F[:, 2], [0.0, 1.0, 0.0, 0.0])
    assert np.linalg.det(np.column_stack([F, pole.x])) > 0


def test_frame_rejects_non_orthogonal_up():
    with pytest.raises(DomainError):
        stereographic_frame([1.0, 0.0, 0.0, 0.0], up=[1.0, 1.0, 0.0, 0.0])


class TestInverseStereographic:
    def test_inverts_projection(self, rng):
        y = rng.standard_normal((50, 3))
        x = InverseStereographic().value(y)
        np.testing.assert_allclose(np.linalg.norm(x, axis=-1), 1.0, atol=1e-14)
        np.testing.assert_allclose(stereographic_project(E4, x), y, atol=1e-12)

    def test_jacobian_matches_differences(self, rng):
        f = InverseStereographic()
        y = rng.standard_normal(3)
        h = 1e-6
        numeric = np.column_stack([(f.value(y + h * e) - f.value(y - h * e)) / (2 * h) for e in np.eye(3)])
        np.testing.assert_allclose(f.jacobian(y), numeric, atol=1e-8)

    def test_hessian_matches_differences(self, rng):
        f = InverseStereographic()
        y = rng.standard_normal(3)
        h = 1e-5
        numeric = np.stack([(f.jacobian(y + h * e) - f.jacobian(y - h * e)) / (2 * h) for e in np.eye(3)], axis=-1)
        np.testing.assert_allclose(f.hessian(y), numeric, atol=1e-7)


def test_congruence_maps_equators_and_inverts():
    Q = Congruence.random(7)
    eq = Equator.from_pole([1.0, 2.0, 0.0, -1.0])
    image = Q.map_equator(eq)
    np.testing.assert_allclose(image.v, Q.apply(eq.v))
    np.testing.assert_allclose((Q @ Q.inverse()).Q, np.eye(4), atol=1e-12)
    assert Q.determinant == 1
