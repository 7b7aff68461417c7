import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toruslab.deform import IdentityMap, MobiusBoost, NormalBumpMap, NumericalInverse, OrthogonalMap, TwistMap
from toruslab.errors import DomainError
from toruslab.sphere import Congruence


def make_points(seed: int, n: int = 32) -> np.ndarray:
    x = np.random.default_rng(seed).standard_normal((n, 4))
    return x / np.linalg.norm(x, axis=-1, keepdims=True)


def numerical_jacobian(f, x: np.ndarray, h: float = 1e-6) -> np.ndarray:
    columns = []
    for j in range(4):
        e = np.zeros(4)
        e[j] = h
        columns.append((f(x + e) - f(x - e)) / (2.0 * h))
    return np.stack(columns, axis=-1)


MAPS = [
    TwistMap(0.4),
    MobiusBoost([1.0, 0.0, 0.0, 0.0], 0.3),
    NormalBumpMap(0.05),
    OrthogonalMap(Congruence.random(5)),
]


@pytest.mark.parametrize("xi", MAPS, ids=repr)
def test_images_stay_on_sphere(xi):
    np.testing.assert_allclose(np.linalg.norm(xi.value(make_points(1)), axis=-1), 1.0, atol=1e-12)


@pytest.mark.parametrize("xi", MAPS, ids=repr)
def test_jacobian_matches_differences(xi):
    x = make_points(2, 8)
    np.testing.assert_allclose(xi.jacobian(x), numerical_jacobian(xi.value, x), atol=1e-6)


@pytest.mark.parametrize("xi", MAPS, ids=repr)
def test_hessian_matches_differences(xi):
    x = make_points(3, 8)
    np.testing.assert_allclose(xi.hessian(x), numerical_jacobian(xi.jacobian, x), atol=1e-5)


@pytest.mark.parametrize("xi", [TwistMap(0.4), MobiusBoost([0.0, 1.0, 1.0, 0.0], -0.7), NormalBumpMap(0.05)], ids=repr)
def test_inverse_undoes_map(xi):
    x = make_points(4)
    np.testing.assert_allclose(xi.inverse().value(xi.value(x)), x, atol=1e-10)


def test_identity():
    x = make_points(5)
    xi = IdentityMap()
    np.testing.assert_array_equal(xi.value(x), x)
    assert xi.inverse() is xi
    assert not np.any(xi.hessian(x))


def test_twist_preserves_clifford_torus():
    theta = np.linspace(0.0, 2.0 * np.pi, 50)
    x = np.sqrt(0.5) * np.stack([np.cos(theta), np.sin(theta), np.cos(3 * theta), np.sin(3 * theta)], axis=-1)
    y = TwistMap(1.3).value(x)
    np.testing.assert_allclose(np.linalg.norm(y[:, :2], axis=-1), np.sqrt(0.5))


def test_numerical_inverse_jacobian_inverts_forward():
    xi = NormalBumpMap(0.05)
    eta = NumericalInverse(xi)
    x = make_points(6, 8)
    y = xi.value(x)
    # on tangent vectors w at x, Dη(ξ(x))·Dξ(x)·w = w
    w = np.random.default_rng(7).standard_normal((8, 4))
    w -= np.sum(w * x, axis=-1, keepdims=True) * x
    back = np.einsum("...ij,...j->...i", eta.jacobian(y), np.einsum("...ij,...j->...i", xi.jacobian(x), w))
    np.testing.assert_allclose(back, w, atol=1e-8)


def test_composition_with_inverse():
    xi = TwistMap(0.2) @ MobiusBoost([0.0, 0.0, 0.0, 1.0], 0.4)
    x = make_points(8)
    np.testing.assert_allclose(xi.inverse().value(xi.value(x)), x, atol=1e-10)


def test_boost_rejects_zero_axis():
    with pytest.raises(DomainError):
        MobiusBoost([0.0, 0.0, 0.0, 0.0], 1.0)


@settings(max_examples=25, deadline=None)
@given(s=st.floats(min_value=-2.0, max_value=2.0))
def test_boost_inverse_is_negated_rapidity(s):
    x = make_points(9, 8)
    boost = MobiusBoost([1.0, 1.0, 0.0, 0.0], s)
    np.testing.assert_allclose(boost.inverse().value(boost.value(x)), x, atol=1e-9)
