import numpy as np
import pytest

from toruslab.deform import (
    SineShearMap,
    TwistMap,
    annulus_samples,
    c2alpha_norm,
    canonical_extend,
    distance_to_identity,
    holder_seminorm,
    identity_annulus,
    sample_pairs,
    tau,
)
from toruslab.errors import DomainError


class TestSampling:
    def test_annulus_samples_are_nested(self):
        small = annulus_samples(100, seed=1)
        large = annulus_samples(5000, seed=1)
        np.testing.assert_array_equal(small, large[:100])

    def test_annulus_samples_lie_in_annulus(self):
        r = np.linalg.norm(annulus_samples(2000, seed=2), axis=-1)
        assert np.all((r > 0.5) & (r < 2.0))

    def test_pairs_are_distinct_and_inside(self):
        x, y = sample_pairs(2000, seed=3)
        assert len(x) == len(y) > 1900
        r = np.linalg.norm(y, axis=-1)
        assert np.all((r > 0.5) & (r < 2.0))
        assert np.all(np.linalg.norm(x - y, axis=-1) > 0.0)


class TestNorms:
    def test_identity_has_zero_tau(self):
        assert tau(identity_annulus(), 0.5) == 0.0

    def test_identity_distance_report(self):
        report = distance_to_identity(identity_annulus(), 1.0)
        assert report.total == 0.0
        assert report.samples == 10_000

    def test_tau_is_symmetric(self):
        X = canonical_extend(TwistMap(0.1))
        assert tau(X, 0.5) == pytest.approx(tau(X.inverse(), 0.5), rel=1e-12)

    def test_tau_grows_with_the_twist(self):
        small = tau(canonical_extend(TwistMap(0.05)), 0.5)
        large = tau(canonical_extend(TwistMap(0.2)), 0.5)
        assert 0.0 < small < large

    def test_seminorm_is_bounded_by_lipschitz_constant(self):
        F = SineShearMap(0.01, 4.0)
        value = holder_seminorm(F, 1.0, pairs=4000)
        assert 0.5 * F.hessian_lipschitz < value <= F.hessian_lipschitz * (1.0 + 1e-9)

    def test_norm_is_deterministic(self):
        F = SineShearMap(0.01, 2.0)
        assert c2alpha_norm(F, 0.5, seed=9) == c2alpha_norm(F, 0.5, seed=9)

    def test_norm_terms_add_up(self):
        report = c2alpha_norm(SineShearMap(0.01, 2.0), 0.5)
        assert report.total == pytest.approx(
            report.sup_term + report.grad_term + report.hess_term + report.seminorm_term
        )


class TestValidation:
    @pytest.mark.parametrize("alpha", [0.0, -0.5, 1.5])
    def test_rejects_alpha(self, alpha):
        with pytest.raises(DomainError):
            c2alpha_norm(identity_annulus(), alpha)

    def test_rejects_small_budgets(self):
        with pytest.raises(DomainError):
            c2alpha_norm(identity_annulus(), 0.5, samples=100)
        with pytest.raises(DomainError):
            holder_seminorm(identity_annulus(), 0.5, pairs=10)

    def test_tau_needs_canonical_extension(self):
        with pytest.raises(DomainError):
            tau(SineShearMap(0.01, 1.0), 0.5)
