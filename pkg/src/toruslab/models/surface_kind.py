from __future__ import annotations

import enum


class SurfaceKind(enum.Enum):
    """
    Enumeration of torus immersion kinds.

    | Value         | Semantics                                                         |
    |---------------|-------------------------------------------------------------------|
    | `CLIFFORD`    | The Clifford torus, both circle radii √2/2.                       |
    | `HOMOGENEOUS` | Product torus of circle radii cos r and sin r.                    |
    | `PERTURBED`   | A base torus moved along its unit normal by a bump field.         |
    | `CYCLIDE`     | Inverse stereographic image of a tube of revolution.              |
    | `PUSHFORWARD` | A base torus composed with an ambient map.                        |
    """

    CLIFFORD = enum.auto()
    HOMOGENEOUS = enum.auto()
    PERTURBED = enum.auto()
    CYCLIDE = enum.auto()
    PUSHFORWARD = enum.auto()
