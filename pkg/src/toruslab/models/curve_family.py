from __future__ import annotations

import enum


class CurveFamily(enum.Enum):
    """
    Enumeration of the two families of lines of curvature on the Clifford torus.

    | Value | Semantics                                                          |
    |-------|--------------------------------------------------------------------|
    | `PHI` | First angle fixed at πk/n, second angle runs (meridians).          |
    | `PSI` | Second angle fixed at πk/n, first angle runs (longitudes).         |
    """

    PHI = enum.auto()
    PSI = enum.auto()
