import math

import numpy as np
import pytest

from toruslab import models
from toruslab.errors import DomainError, PerturbationTooLargeError
from toruslab.sphere import Congruence
from toruslab.surfaces import (
    CliffordTorus,
    Cyclide,
    HomogeneousTorus,
    PerturbedTorus,
    PushforwardTorus,
    TrigBump,
    check_immersion,
    clifford_eval,
    curvature_grid,
    curvatures,
    get_registered_immersions,
    homogeneous_eval,
    normal,
    perturb_normal,
    principal_directions,
)

SQ = math.sqrt(2.0) / 2.0


def random_parameters(rng: np.random.Generator, count: int) -> tuple[np.ndarray, np.ndarray]:
    u, v = rng.uniform(0.0, 2.0 * math.pi, size=(2, count))
    return u, v


def assert_identities(sample) -> None:
    np.testing.assert_allclose(sample.k1 * sample.k2, sample.S, atol=1e-9)
    np.testing.assert_allclose((sample.k1 + sample.k2) / 2.0, sample.H, atol=1e-9)
    np.testing.assert_allclose(1.0 + sample.S, sample.K, atol=1e-9)


class TestEvaluation:
    def test_clifford_origin(self):
        np.testing.assert_allclose(clifford_eval(0.0, 0.0).x, [SQ, 0.0, SQ, 0.0])

    def test_clifford_antipodal_symmetry(self):
        np.testing.assert_allclose(clifford_eval(math.pi, math.pi).x, -clifford_eval(0.0, 0.0).x, atol=1e-15)

    def test_unit_norm(self, rng, clifford):
        u, v = random_parameters(rng, 1000)
        np.testing.assert_allclose(np.linalg.norm(clifford.eval(u, v), axis=-1), 1.0, atol=1e-12)

    def test_homogeneous_quarter_radius_is_clifford(self, rng):
        for u, v in zip(*random_parameters(rng, 20)):
            np.testing.assert_allclose(homogeneous_eval(math.pi / 4, u, v).x, clifford_eval(u, v).x, atol=1e-15)

    def test_homogeneous_sixth_radius(self):
        np.testing.assert_allclose(homogeneous_eval(math.pi / 6, 0.0, 0.0).x, [math.sqrt(3.0) / 2.0, 0.0, 0.5, 0.0])

    @pytest.mark.parametrize("r", [0.0, math.pi / 2, -1.0])
    def test_homogeneous_rejects_radius(self, r):
        with pytest.raises(DomainError):
            homogeneous_eval(r, 0.0, 0.0)

    def test_registry_knows_all_kinds(self):
        assert {"clifford", "homogeneous", "cyclide", "perturbed"} <= set(get_registered_immersions())


class TestCurvatures:
    def test_clifford_identities(self, rng, clifford):
        s = curvatures(clifford, *random_parameters(rng, 10_000))
        assert np.max(np.abs(s.H)) < 1e-9
        assert np.max(np.abs(s.K)) < 1e-9
        assert np.max(np.abs(s.k1 - 1.0)) < 1e-9
        assert np.max(np.abs(s.k2 + 1.0)) < 1e-9
        assert_identities(s)

    def test_homogeneous_tube(self, rng, tube):
        s = curvatures(tube, *random_parameters(rng, 1000))
        r = math.pi / 6
        # |H| = |tan r - cot r| / 2 = 0.57735...
        np.testing.assert_allclose(np.abs(s.H), abs(math.tan(r) - 1.0 / math.tan(r)) / 2.0, atol=1e-9)
        np.testing.assert_allclose(s.S, -1.0, atol=1e-9)
        np.testing.assert_allclose(s.K, 0.0, atol=1e-9)
        assert_identities(s)

    def test_no_umbilics_on_flat_tori(self, clifford, tube):
        for M in (clifford, tube):
            s = curvature_grid(M, 32)
            assert np.min((s.k1 - s.k2) ** 2) > 0.0

    def test_congruence_equivariance(self, rng, clifford):
        Q = Congruence.random(3)
        moved = PushforwardTorus(Q, HomogeneousTorus(r=0.4))
        u, v = random_parameters(rng, 200)
        a = curvatures(HomogeneousTorus(r=0.4), u, v)
        b = curvatures(moved, u, v)
        np.testing.assert_allclose(np.abs(b.H), np.abs(a.H), atol=1e-8)
        np.testing.assert_allclose(b.S, a.S, atol=1e-8)

    def test_cyclide_identities(self, rng):
        s = curvatures(Cyclide.from_tube(1.2, 0.5), *random_parameters(rng, 500))
        assert_identities(s)

    def test_normal_convention_points_to_first_axis(self, clifford, tube):
        for M in (clifford, tube):
            n = normal(M, 0.0, 0.0)
            assert n[0] > 0.0
            np.testing.assert_allclose(n @ M.eval(0.0, 0.0), 0.0, atol=1e-15)

    def test_principal_directions_are_orthonormal(self, tube):
        d1, d2 = principal_directions(tube, 0.3, 1.1)
        assert d1 @ d1 == pytest.approx(1.0)
        assert d2 @ d2 == pytest.approx(1.0)
        assert d1 @ d2 == pytest.approx(0.0, abs=1e-12)


class TestPerturbation:
    def test_zero_bump_is_identity(self, rng, clifford):
        M = perturb_normal(clifford, TrigBump())
        u, v = random_parameters(rng, 50)
        np.testing.assert_allclose(M.eval(u, v), clifford.eval(u, v))

    def test_zero_amplitude_keeps_curvatures(self, rng, clifford):
        M = PerturbedTorus(clifford, TrigBump.cosine(0.0))
        s = curvatures(M, *random_parameters(rng, 100))
        np.testing.assert_allclose(s.k1, 1.0, atol=1e-9)
        np.testing.assert_allclose(s.k2, -1.0, atol=1e-9)

    def test_small_bump_has_small_mean_curvature(self, clifford):
        eps = 1e-3
        M = perturb_normal(clifford, TrigBump.cosine(eps))
        assert np.max(np.abs(curvature_grid(M, 64).H)) <= 10.0 * eps

    def test_negative_curvature_survives_small_bump(self, clifford):
        M = perturb_normal(clifford, TrigBump.cosine(1e-2))
        assert np.max(curvature_grid(M, 256).S) < 0.0

    def test_stays_on_sphere(self, rng, clifford):
        M = perturb_normal(clifford, TrigBump(terms=((1, 2, 0.05, 0.3), (0, 1, 0.02, 0.0))))
        np.testing.assert_allclose(np.linalg.norm(M.eval(*random_parameters(rng, 100)), axis=-1), 1.0, atol=1e-12)
        assert M.kind is models.SurfaceKind.PERTURBED

    def test_huge_bump_is_rejected(self, clifford):
        # constant b = π/4: Y_v = (cos b - sin b)·X_v vanishes, since N_v = -X_v on Clifford
        with pytest.raises(PerturbationTooLargeError):
            PerturbedTorus(clifford, TrigBump.cosine(math.pi / 4, m=0, k=0))

    def test_base_without_normal_jet_is_rejected(self):
        with pytest.raises(DomainError):
            perturb_normal(Cyclide.from_tube(1.2, 0.5), TrigBump.cosine(1e-3))


def test_check_immersion_positive_on_clifford(clifford):
    # EG - F² = 1/4 for the Clifford torus
    assert check_immersion(clifford, 16) == pytest.approx(0.25)
