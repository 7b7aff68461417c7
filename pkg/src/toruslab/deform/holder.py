"""
Sampled Hölder C^{2,α} norms on the annulus A₂ and the distance-to-identity functional τ^α.

The norm of a map F is

    ‖F‖ = sup|F| + max_j sup|D^j F| + max_{j,k} sup|D^{jk} F| + max_{j,k} [D^{jk} F]_α,

with the seminorm [G]_α = sup_{x≠y} |G(x) - G(y)| / |x - y|^α. Suprema are estimated from
seeded samples and are therefore lower bounds. Samples are drawn in shards of fixed size from
`numpy.random.SeedSequence(seed, spawn_key=(stream, shard))`, so a larger budget always contains
the samples of a smaller one and estimates grow monotonically with the budget.
"""

from __future__ import annotations

import dataclasses
import logging
import math
from collections.abc import Callable

import numpy as np

from toruslab.errors import DomainError, SingularityError
from .annulus import INNER_RADIUS, OUTER_RADIUS, AnnulusMap, CanonicalExtension, identity_annulus


logger = logging.getLogger(__name__)

SHARD_SIZE = 4096
MIN_SAMPLES = 10_000
MIN_PAIRS = 1_000
CLUSTER_SCALES = (1e-6, 1e-1)

_POINT_STREAM = 0
_GLOBAL_PAIR_STREAM = 1
_CLUSTER_PAIR_STREAM = 2


@dataclasses.dataclass(kw_only=True, frozen=True, slots=True)
class HolderReport:
    """
    Sampled C^{2,α} norm of a map on A₂.

    | Field           | Type    | Semantics                                                 |
    |-----------------|---------|-----------------------------------------------------------|
    | `alpha`         | `float` | Hölder exponent in (0, 1].                                |
    | `sup_term`      | `float` | Sampled sup |F|.                                          |
    | `grad_term`     | `float` | Sampled max_j sup |D^j F|.                                |
    | `hess_term`     | `float` | Sampled max_{j,k} sup |D^{jk} F|.                         |
    | `seminorm_term` | `float` | Sampled max_{j,k} [D^{jk} F]_α.                           |
    | `total`         | `float` | Sum of the four terms.                                    |
    | `samples`       | `int`   | Number of point samples.                                  |
    | `pairs`         | `int`   | Number of sample pairs, half global and half clustered.   |
    | `seed`          | `int`   | Master seed.                                              |
    """

    alpha: float
    sup_term: float
    grad_term: float
    hess_term: float
    seminorm_term: float
    total: float
    samples: int
    pairs: int
    seed: int


def _shard_rng(seed: int, stream: int, shard: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(stream, shard)))


def _sharded(
    count: int, seed: int, stream: int, draw: Callable[[np.random.Generator], np.ndarray]
) -> np.ndarray:
    shards = [draw(_shard_rng(seed, stream, s)) for s in range(max(1, math.ceil(count / SHARD_SIZE)))]
    return np.concatenate(shards)[:count]


def _uniform_annulus(rng: np.random.Generator, n: int) -> np.ndarray:
    lo, hi = INNER_RADIUS**4, OUTER_RADIUS**4
    r = (lo + (hi - lo) * rng.random(n)) ** 0.25
    d = rng.standard_normal((n, 4))
    return r[:, None] * d / np.linalg.norm(d, axis=-1, keepdims=True)


def annulus_samples(count: int, seed: int, stream: int = _POINT_STREAM) -> np.ndarray:
    """
    `count` points uniform in the volume of A₂, nested in `count` for a fixed seed.
    """
    return _sharded(count, seed, stream, lambda rng: _uniform_annulus(rng, SHARD_SIZE))


def _cluster_shard(rng: np.random.Generator) -> np.ndarray:
    x = _uniform_annulus(rng, SHARD_SIZE)
    lo, hi = np.log(CLUSTER_SCALES[0]), np.log(CLUSTER_SCALES[1])
    delta = np.exp(lo + (hi - lo) * rng.random(SHARD_SIZE))
    d = rng.standard_normal((SHARD_SIZE, 4))
    d /= np.linalg.norm(d, axis=-1, keepdims=True)
    y = x + delta[:, None] * d
    r = np.linalg.norm(y, axis=-1)
    outside = (r <= INNER_RADIUS) | (r >= OUTER_RADIUS)
    y[outside] = x[outside] - delta[outside, None] * d[outside]
    return np.stack([x, y], axis=1)


def sample_pairs(count: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """
    `count` pairs in A₂: the first half independent uniform points, the second half clustered
    with log-uniform separation in [1e-6, 1e-1]. Pairs leaving A₂ are dropped.
    """
    n_global = count // 2
    n_cluster = count - n_global
    g = _sharded(
        n_global, seed, _GLOBAL_PAIR_STREAM, lambda rng: _uniform_annulus(rng, 2 * SHARD_SIZE).reshape(-1, 2, 4)
    )
    c = _sharded(n_cluster, seed, _CLUSTER_PAIR_STREAM, _cluster_shard)
    pairs = np.concatenate([g, c])
    r = np.linalg.norm(pairs[:, 1], axis=-1)
    keep = (r > INNER_RADIUS) & (r < OUTER_RADIUS) & np.any(pairs[:, 0] != pairs[:, 1], axis=-1)
    return pairs[keep, 0], pairs[keep, 1]


def _check_alpha(alpha: float) -> None:
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"Hölder exponent must lie in (0, 1], got {alpha!r}")


def _finite(values: np.ndarray, points: np.ndarray, what: str) -> np.ndarray:
    bad = ~np.isfinite(values.reshape(len(points), -1)).all(axis=-1)
    if np.any(bad):
        k = int(np.flatnonzero(bad)[0])
        raise SingularityError(f"{what} is not finite at sample {k}, x = {np.array2string(points[k], precision=6)}")
    return values


def _seminorm(F: AnnulusMap, alpha: float, x: np.ndarray, y: np.ndarray) -> float:
    if not len(x):
        return 0.0
    Hx = _finite(F.hessian(x), x, "second derivative")
    Hy = _finite(F.hessian(y), y, "second derivative")
    # |D^{jk}F(x) - D^{jk}F(y)| for every (j, k), as Euclidean norms over the output index
    diff = np.linalg.norm(Hx - Hy, axis=1)
    scale = np.linalg.norm(x - y, axis=-1) ** alpha
    return float(np.max(diff / scale[:, None, None]))


def holder_seminorm(F: AnnulusMap, alpha: float, pairs: int = MIN_PAIRS, seed: int = 42) -> float:
    """
    Sampled lower bound of max_{j,k} [D^{jk} F]_α.

    Parameters:
        F:
            Annulus map.
        alpha:
            Hölder exponent in (0, 1].
        pairs:
            Number of sample pairs, at least 1000.
        seed:
            Master seed.

    Returns:
        The largest sampled difference quotient.

    Raises:
        DomainError:
            If alpha or the budget is out of range.
        SingularityError:
            If a second derivative is not finite; the message names the sample.
    """
    _check_alpha(alpha)
    if pairs < MIN_PAIRS:
        raise DomainError(f"Hölder seminorm needs at least {MIN_PAIRS} pairs, got {pairs}")
    x, y = sample_pairs(pairs, seed)
    return _seminorm(F, alpha, x, y)


def c2alpha_norm(
    F: AnnulusMap, alpha: float, samples: int = MIN_SAMPLES, pairs: int = MIN_PAIRS, seed: int = 42
) -> HolderReport:
    """
    Sampled C^{2,α} norm of F on A₂, deterministic for a given seed.

    Raises:
        DomainError:
            If alpha or a budget is out of range.
        SingularityError:
            If a value or derivative is not finite; the message names the sample.
    """
    _check_alpha(alpha)
    if samples < MIN_SAMPLES:
        raise DomainError(f"C^(2,α) norm needs at least {MIN_SAMPLES} samples, got {samples}")
    x = annulus_samples(samples, seed)
    value = _finite(F.value(x), x, "value")
    jac = _finite(F.jacobian(x), x, "first derivative")
    hess = _finite(F.hessian(x), x, "second derivative")
    sup_term = float(np.max(np.linalg.norm(value, axis=-1)))
    grad_term = float(np.max(np.linalg.norm(jac, axis=-2)))
    hess_term = float(np.max(np.linalg.norm(hess, axis=-3)))
    seminorm_term = holder_seminorm(F, alpha, pairs, seed)
    report = HolderReport(
        alpha=alpha,
        sup_term=sup_term,
        grad_term=grad_term,
        hess_term=hess_term,
        seminorm_term=seminorm_term,
        total=sup_term + grad_term + hess_term + seminorm_term,
        samples=samples,
        pairs=pairs,
        seed=seed,
    )
    logger.debug("C^(2,%g) norm of %r: %s", alpha, F, report)
    return report


def distance_to_identity(
    X: AnnulusMap, alpha: float, samples: int = MIN_SAMPLES, pairs: int = MIN_PAIRS, seed: int = 42
) -> HolderReport:
    """
    Sampled ‖X - I‖ in C^{2,α}(A₂).
    """
    return c2alpha_norm(X - identity_annulus(), alpha, samples, pairs, seed)


def tau(
    X: CanonicalExtension, alpha: float, samples: int = MIN_SAMPLES, pairs: int = MIN_PAIRS, seed: int = 42
) -> float:
    """
    τ^α(X) = ‖X - I‖ + ‖X⁻¹ - I‖ from sampled norms; τ(X) = τ(X⁻¹) by construction.

    Raises:
        DomainError:
            If X is not a canonical extension.
        InverseUnavailableError:
            If the sphere map of X has no evaluable inverse.
    """
    if not isinstance(X, CanonicalExtension):
        raise DomainError(f"τ is defined for canonical extensions of sphere maps, got {X!r}")
    forward = distance_to_identity(X, alpha, samples, pairs, seed)
    backward = distance_to_identity(X.inverse(), alpha, samples, pairs, seed)
    return forward.total + backward.total
