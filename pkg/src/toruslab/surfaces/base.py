from __future__ import annotations

import abc
import dataclasses
from collections.abc import Mapping
from typing import Any

import numpy as np
import numpy.typing as npt

from toruslab import models
from toruslab.errors import DescriptorError, DomainError
from toruslab.sphere import SpherePoint


_immersion_registry: dict[str, type[TorusImmersion]] = {}


def get_registered_immersions() -> dict[str, type[TorusImmersion]]:
    """
    Return all registered immersion classes.

    Returns:
        Dictionary mapping descriptor names (e.g. `"clifford"`) to immersion classes.
    """
    return dict(_immersion_registry)


@dataclasses.dataclass(kw_only=True, frozen=True, slots=True, eq=False)
class SurfaceJet:
    """
    Value and partial derivatives up to second order of a map of the parameter torus.

    All fields share one shape `(..., d)`, with `d = 4` for immersions into S³.

    | Field  | Type         | Semantics                    |
    |--------|--------------|------------------------------|
    | `X`    | `np.ndarray` | Value.                       |
    | `X_u`  | `np.ndarray` | First partial along u.       |
    | `X_v`  | `np.ndarray` | First partial along v.       |
    | `X_uu` | `np.ndarray` | Second partial along u, u.   |
    | `X_uv` | `np.ndarray` | Mixed second partial.        |
    | `X_vv` | `np.ndarray` | Second partial along v, v.   |
    """

    X: np.ndarray
    X_u: np.ndarray
    X_v: np.ndarray
    X_uu: np.ndarray
    X_uv: np.ndarray
    X_vv: np.ndarray


def circle_product_jet(a: float, b: float, u: npt.ArrayLike, v: npt.ArrayLike) -> SurfaceJet:
    """
    Jet of (u, v) ↦ (a cos u, a sin u, b cos v, b sin v).
    """
    u, v = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
    cu, su, cv, sv = np.cos(u), np.sin(u), np.cos(v), np.sin(v)
    zero = np.zeros_like(u)
    return SurfaceJet(
        X=np.stack([a * cu, a * su, b * cv, b * sv], axis=-1),
        X_u=np.stack([-a * su, a * cu, zero, zero], axis=-1),
        X_v=np.stack([zero, zero, -b * sv, b * cv], axis=-1),
        X_uu=np.stack([-a * cu, -a * su, zero, zero], axis=-1),
        X_uv=np.stack([zero, zero, zero, zero], axis=-1),
        X_vv=np.stack([zero, zero, -b * cv, -b * sv], axis=-1),
    )


class TorusImmersion(abc.ABC):
    """
    Base class for doubly 2π-periodic immersions (u, v) ↦ X(u, v) ∈ S³.

    Subclasses provide the analytic jet up to second order through `jet`. Evaluation is
    vectorized: `u` and `v` broadcast against each other and every returned array gets a trailing
    axis of length 4.

    The unit normal convention is N = cross4(X, X_u, X_v) / |cross4(X, X_u, X_v)|, which points
    toward (1, 0, 0, 0) for the Clifford torus and the homogeneous tubes at (u, v) = (0, 0).

    Subclasses setting a class attribute `descriptor_name` are registered automatically, so
    surface descriptors can resolve them by name.
    """

    descriptor_name: str | None = None

    def __init_subclass__(cls, **kwargs: object) -> None:
        super().__init_subclass__(**kwargs)
        name = cls.__dict__.get("descriptor_name")
        if name and not cls.__name__.startswith("_"):
            _immersion_registry[name] = cls

    @property
    @abc.abstractmethod
    def kind(self) -> models.SurfaceKind:
        """
        Kind of the immersion.
        """
        pass

    @abc.abstractmethod
    def jet(self, u: npt.ArrayLike, v: npt.ArrayLike) -> SurfaceJet:
        """
        Value and partials up to second order.

        Parameters:
            u:
                First parameter angle(s).
            v:
                Second parameter angle(s).

        Returns:
            Jet with arrays of shape `broadcast(u, v).shape + (4,)`.
        """
        pass

    def eval(self, u: npt.ArrayLike, v: npt.ArrayLike) -> np.ndarray:
        return self.jet(u, v).X

    def point(self, u: float, v: float) -> SpherePoint:
        return SpherePoint(x=self.eval(u, v))

    def normal_jet(self, u: npt.ArrayLike, v: npt.ArrayLike) -> SurfaceJet:
        """
        Unit normal field and its partials, for immersions that know them in closed form.

        Raises:
            DomainError:
                If the immersion has no closed-form normal derivatives.
        """
        raise DomainError(f"{type(self).__name__} has no closed-form normal derivatives")

    def parameters(self) -> dict[str, Any]:
        """
        Parameters identifying the immersion, for reports.
        """
        return {"kind": self.kind.name.lower()}

    @classmethod
    def from_parameters(cls, params: Mapping[str, Any]) -> TorusImmersion:
        """
        Build an immersion from the mapping returned by `parameters`, minus `kind`.

        Raises:
            DescriptorError:
                If the class cannot be built from parameters or a parameter is missing.
        """
        raise DescriptorError(f"{cls.__name__} cannot be built from a descriptor")


def require(params: Mapping[str, Any], key: str, kind: str) -> Any:
    if key not in params:
        raise DescriptorError(f"{kind} descriptor needs the parameter {key!r}")
    return params[key]
