from __future__ import annotations

import enum


class HessianSignature(enum.Enum):
    """
    Enumeration of Hessian signatures of the height function at a critical point.

    | Value        | Semantics                                     |
    |--------------|-----------------------------------------------|
    | `SADDLE`     | One positive and one negative eigenvalue.     |
    | `MINIMUM`    | Both eigenvalues positive.                    |
    | `MAXIMUM`    | Both eigenvalues negative.                    |
    | `DEGENERATE` | At least one eigenvalue numerically zero.     |
    """

    SADDLE = enum.auto()
    MINIMUM = enum.auto()
    MAXIMUM = enum.auto()
    DEGENERATE = enum.auto()
