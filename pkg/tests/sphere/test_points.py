import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toruslab.errors import DomainError, SingularityError
from toruslab.sphere import (
    Congruence,
    Equator,
    SpherePoint,
    antipodal,
    cross4,
    intrinsic_distance,
    signed_height,
)
from toruslab.surfaces import CliffordTorus

SQ = math.sqrt(2.0) / 2.0


def unit_vectors() -> st.SearchStrategy[np.ndarray]:
    coords = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False)
    return (
        st.lists(coords, min_size=4, max_size=4)
        .map(np.array)
        .filter(lambda x: np.linalg.norm(x) > 1e-3)
        .map(lambda x: x / np.linalg.norm(x))
    )


class TestSpherePoint:
    def test_renormalizes_drift(self):
        p = SpherePoint(x=np.array([1.0 + 1e-9, 0.0, 0.0, 0.0]))
        assert abs(np.linalg.norm(p.x) - 1.0) < 1e-12

    def test_rejects_non_unit_input(self):
        with pytest.raises(DomainError):
            SpherePoint(x=np.array([2.0, 0.0, 0.0, 0.0]))

    def test_from_direction_normalizes(self):
        p = SpherePoint.from_direction([3.0, 0.0, 4.0, 0.0])
        np.testing.assert_allclose(p.x, [0.6, 0.0, 0.8, 0.0])

    def test_from_direction_rejects_zero(self):
        with pytest.raises(SingularityError):
            SpherePoint.from_direction([0.0, 0.0, 0.0, 0.0])


class TestSignedHeight:
    def test_orthogonal_point_is_on_equator(self):
        eq = Equator(v=np.array([0.0, 1.0, 0.0, 0.0]))
        assert signed_height(eq, SpherePoint(x=np.array([SQ, 0.0, SQ, 0.0]))) == 0.0

    def test_inner_product(self):
        eq = Equator(v=np.array([0.0, 1.0, 0.0, 0.0]))
        h = signed_height(eq, SpherePoint(x=np.array([0.0, SQ, SQ, 0.0])))
        assert h == pytest.approx(SQ, abs=1e-15)

    def test_antipode_of_pole(self):
        eq = Equator(v=np.array([1.0, 0.0, 0.0, 0.0]))
        assert signed_height(eq, SpherePoint(x=np.array([-1.0, 0.0, 0.0, 0.0]))) == -1.0

    def test_half_sphere_labels_flip_with_pole(self):
        eq = Equator.from_pole([0.0, 1.0, 0.0, 0.0])
        p = SpherePoint(x=np.array([0.0, SQ, SQ, 0.0]))
        assert eq.half_sphere(p) == 1
        assert eq.flipped().half_sphere(p) == -1
        assert eq.contains(SpherePoint(x=np.array([1.0, 0.0, 0.0, 0.0])))

    @given(unit_vectors(), unit_vectors())
    def test_antipodal_flips_sign(self, v, x):
        eq = Equator(v=v)
        p = SpherePoint(x=x)
        assert signed_height(eq, antipodal(p)) == pytest.approx(-signed_height(eq, p), abs=1e-15)


class TestIntrinsicDistance:
    def test_same_point(self):
        p = SpherePoint(x=np.array([SQ, 0.0, SQ, 0.0]))
        assert intrinsic_distance(p, p) == 0.0

    @pytest.mark.parametrize("angle", [1e-12, 1e-9, 1e-6, 1.0, math.pi - 1e-9])
    def test_small_and_near_antipodal_angles(self, angle):
        p = np.array([1.0, 0.0, 0.0, 0.0])
        q = np.array([math.cos(angle), math.sin(angle), 0.0, 0.0])
        assert intrinsic_distance(p, q) == pytest.approx(angle, rel=1e-9)

    def test_broadcasts_over_arrays(self, rng):
        x = rng.standard_normal((5, 4))
        x /= np.linalg.norm(x, axis=-1, keepdims=True)
        d = intrinsic_distance(x, x[::-1])
        assert d.shape == (5,)
        np.testing.assert_allclose(d, np.arccos(np.clip(np.sum(x * x[::-1], axis=-1), -1.0, 1.0)), atol=1e-7)

    def test_antipodal_points(self):
        p = SpherePoint(x=np.array([SQ, 0.0, SQ, 0.0]))
        assert intrinsic_distance(p, -p) == pytest.approx(math.pi)

    def test_orthogonal_points(self):
        p = SpherePoint(x=np.array([1.0, 0.0, 0.0, 0.0]))
        q = SpherePoint(x=np.array([0.0, 1.0, 0.0, 0.0]))
        assert intrinsic_distance(p, q) == pytest.approx(math.pi / 2)

    @settings(max_examples=50)
    @given(unit_vectors(), unit_vectors(), st.integers(min_value=0, max_value=2**31 - 1))
    def test_congruences_preserve_distance(self, x, y, seed):
        Q = Congruence.random(seed)
        d = intrinsic_distance(x, y)
        assert intrinsic_distance(Q.apply(x), Q.apply(y)) == pytest.approx(d, abs=1e-10)


class TestAntipodal:
    def test_basis_vector(self):
        np.testing.assert_array_equal(antipodal(SpherePoint(x=np.array([1.0, 0.0, 0.0, 0.0]))).x, [-1.0, 0.0, 0.0, 0.0])

    def test_involution(self, rng):
        for x in rng.standard_normal((100, 4)):
            p = SpherePoint.from_direction(x)
            np.testing.assert_array_equal(antipodal(antipodal(p)).x, p.x)

    def test_result_is_read_only(self):
        q = antipodal(SpherePoint(x=np.array([0.0, 0.0, 1.0, 0.0])))
        with pytest.raises(ValueError):
            q.x[0] = 1.0

    def test_clifford_torus_is_antipodally_invariant(self, rng):
        X = CliffordTorus().eval
        a, b = rng.uniform(0.0, 2.0 * math.pi, size=(2, 100))
        # -X(α, β) = X(α + π, β + π)
        np.testing.assert_allclose(-X(a, b), X(a + math.pi, b + math.pi), atol=1e-14)


def test_cross4_is_orthogonal_and_matches_determinant(rng):
    a, b, c, w = rng.standard_normal((4, 4))
    n = cross4(a, b, c)
    for x in (a, b, c):
        assert abs(n @ x) < 1e-12
    assert n @ w == pytest.approx(np.linalg.det(np.vstack([a, b, c, w])))
