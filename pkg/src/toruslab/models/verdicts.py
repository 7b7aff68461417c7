from __future__ import annotations

import enum


class MontielRosVerdict(enum.Enum):
    """
    Enumeration of outcomes of the first-eigenvalue dichotomy test.

    | Value                 | Semantics                                              |
    |-----------------------|--------------------------------------------------------|
    | `CLIFFORD_CONSISTENT` | λ₁ agrees with 2 within the margin.                    |
    | `BELOW_TWO`           | λ₁ lies below 2 by more than the margin.               |
    | `INCONCLUSIVE`        | λ₁ lies above 2 by more than the margin.               |
    """

    CLIFFORD_CONSISTENT = enum.auto()
    BELOW_TWO = enum.auto()
    INCONCLUSIVE = enum.auto()
