"""
Finite membership residuals for the sets of diffeomorphisms that fix S(v₀), take the line of
curvature φ⁰ₙ to a given curve up to congruence, keep the deformed Clifford torus minimal at the
lattice images and stay within a τ bound.
"""

from __future__ import annotations

import dataclasses

import numpy as np

from toruslab import models
from toruslab.intersection import CurvatureProfile, profile_distance
from toruslab.sphere import Equator
from toruslab.surfaces import line_of_curvature
from .annulus import canonical_extend
from .arcs import ClosedCurve, arc_from_parametric, close_arc
from .holder import MIN_PAIRS, MIN_SAMPLES, tau
from .lattice import minimality_residual_at_lattice
from .maps import SphereMap


V0 = np.array([0.0, 1.0, 0.0, 0.0])
MEMBERSHIP_TOLERANCE = 1e-6


@dataclasses.dataclass(kw_only=True, frozen=True, slots=True)
class MembershipReport:
    """
    Membership residuals of a sphere diffeomorphism X.

    | Field                 | Type    | Semantics                                                  |
    |-----------------------|---------|------------------------------------------------------------|
    | `equator_residual`    | `float` | max |⟨X(p), v₀⟩| over sampled p ∈ S(v₀).                  |
    | `congruence_residual` | `float` | Profile and length mismatch of X(φ⁰ₙ) against the reference. |
    | `lattice_residual`    | `float` | max |H| of X(T) at the lattice images.                     |
    | `tau`                 | `float` | Sampled τ^α(X).                                            |
    | `bound`               | `float` | Bound τ must stay below.                                   |
    | `tolerance`           | `float` | Threshold for the three residuals.                         |
    """

    equator_residual: float
    congruence_residual: float
    lattice_residual: float
    tau: float
    bound: float
    tolerance: float

    @property
    def member(self) -> bool:
        return (
            self.equator_residual <= self.tolerance
            and self.congruence_residual <= self.tolerance
            and self.lattice_residual <= self.tolerance
            and self.tau < self.bound
        )


def equator_samples(n: int = 24) -> np.ndarray:
    """
    Points of S(v₀) on an n × 2n latitude-longitude grid in the coordinates (x₁, x₃, x₄).
    """
    theta = np.linspace(0.0, np.pi, n)
    phi = np.linspace(0.0, 2.0 * np.pi, 2 * n, endpoint=False)
    T, P = np.meshgrid(theta, phi, indexing="ij")
    zeros = np.zeros_like(T)
    return np.stack([np.sin(T) * np.cos(P), zeros, np.sin(T) * np.sin(P), np.cos(T)], axis=-1).reshape(-1, 4)


def deformed_line_of_curvature(X: SphereMap, n: int, samples: int = 512) -> ClosedCurve:
    """
    The closed curve X(φ⁰ₙ) inside S(v₀), with derivatives from the chain rule.
    """
    line = line_of_curvature(n, 0, models.CurveFamily.PHI)

    def jet(t: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        x, dx, ddx = line.point(t), line.velocity(t), line.acceleration(t)
        J = X.jacobian(x)
        return (
            X.value(x),
            np.einsum("...ij,...j->...i", J, dx),
            np.einsum("...ij,...j->...i", J, ddx) + np.einsum("...ijk,...j,...k->...i", X.hessian(x), dx, dx),
        )

    return close_arc(arc_from_parametric(jet, 0.0, 2.0 * np.pi, Equator(v=V0), samples))


def omega_membership(
    X: SphereMap,
    n: int,
    reference: CurvatureProfile,
    alpha: float = 1.0,
    bound: float = np.inf,
    tolerance: float = MEMBERSHIP_TOLERANCE,
    samples: int = MIN_SAMPLES,
    pairs: int = MIN_PAIRS,
    seed: int = 42,
) -> MembershipReport:
    """
    Evaluate the finite membership conditions for X.

    Parameters:
        X:
            Sphere diffeomorphism.
        n:
            Lattice order.
        reference:
            Curvature signature of the target curve λ in S(v₀).
        alpha:
            Hölder exponent for τ.
        bound:
            Bound τ must stay below.
        tolerance:
            Threshold for the residuals.
        samples, pairs, seed:
            Budget of the τ estimate.

    Returns:
        The membership report.

    Raises:
        DomainError:
            If X moves φ⁰ₙ off S(v₀) or n < 1.
        InverseUnavailableError:
            If X has no evaluable inverse.
    """
    images = X.value(equator_samples())
    equator_residual = float(np.max(np.abs(images @ V0)))
    curve = deformed_line_of_curvature(X, n).signature(reference.samples)
    congruence_residual = max(profile_distance(curve, reference), abs(curve.length - reference.length))
    return MembershipReport(
        equator_residual=equator_residual,
        congruence_residual=congruence_residual,
        lattice_residual=minimality_residual_at_lattice(X, n),
        tau=tau(canonical_extend(X), alpha, samples, pairs, seed),
        bound=float(bound),
        tolerance=tolerance,
    )
