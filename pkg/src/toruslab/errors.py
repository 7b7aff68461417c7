"""
Exception hierarchy shared by all subpackages.

Every error raised on purpose by the library derives from `ToruslabError`.
Errors signalling a bad argument additionally derive from `ValueError`, numerical failures from
`ArithmeticError`, so callers can catch either the library root or the builtin category.
"""

from __future__ import annotations


class ToruslabError(Exception):
    """
    Root of the library's exception hierarchy.
    """


class DomainError(ToruslabError, ValueError):
    """
    Raised when an argument lies outside its documented domain.
    """


class DescriptorError(DomainError):
    """
    Raised when a surface descriptor cannot be parsed or names an unknown kind.
    """


class SingularityError(ToruslabError, ArithmeticError):
    """
    Raised at degenerate points: a vanishing metric, a projection pole hit, a zero-length vector.
    """


class ConvergenceError(ToruslabError, ArithmeticError):
    """
    Raised when an iteration stagnates before reaching its tolerance.

    The attribute `achieved` holds the best residual reached, or `None` if no residual was available.
    """

    def __init__(self, message: str, achieved: float | None = None) -> None:
        super().__init__(message)
        self.achieved = achieved


class PreconditionError(ToruslabError):
    """
    Raised when a hypothesis required by a classification or verification step fails.
    """


class AmbiguousCellError(ToruslabError):
    """
    Raised when a zero set passes through a critical grid node, so the sign pattern of the grid
    cannot decide the topology. Retrying at another resolution or offset resolves it.
    """


class TangentEquatorError(ToruslabError):
    """
    Raised when component counting meets an equator tangent to the surface.
    """


class TracingResolutionError(ToruslabError):
    """
    Raised when a traced curve is not resolved well enough: winding residuals too large or a
    self-intersecting polyline.
    """


class PerturbationTooLargeError(ToruslabError):
    """
    Raised when a normal perturbation destroys the immersion property.
    """


class EquatorNotFoundError(ToruslabError):
    """
    Raised when the type-2 equator search exhausts its angle budget.

    The attribute `best` holds the last candidate pole examined.
    """

    def __init__(self, message: str, best: object | None = None) -> None:
        super().__init__(message)
        self.best = best


class NonRegularJoinError(ToruslabError):
    """
    Raised when two arcs do not join with matching endpoints, tangents and curvatures.
    """


class InverseUnavailableError(ToruslabError):
    """
    Raised when a sphere map has no evaluable inverse.
    """


class NotMinimalError(ToruslabError):
    """
    Raised when the coordinate eigenresidual of a mesh exceeds the minimality threshold.
    """
