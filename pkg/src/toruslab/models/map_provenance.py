from __future__ import annotations

import enum


class MapProvenance(enum.Enum):
    """
    Enumeration of the origins of maps on the annulus A₂ = {1/2 < |x| < 2}.

    | Value       | Semantics                                                       |
    |-------------|-----------------------------------------------------------------|
    | `CANONICAL` | Canonical extension F(r·v) = r·ξ(v) of a sphere diffeomorphism. |
    | `GENERAL`   | Any other map, e.g. differences or non-radial test maps.        |
    """

    CANONICAL = enum.auto()
    GENERAL = enum.auto()
