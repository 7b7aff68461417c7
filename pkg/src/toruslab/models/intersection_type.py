from __future__ import annotations

import enum


class IntersectionType(enum.Enum):
    """
    Enumeration of equator-torus intersection types.

    | Value          | Semantics                                                              |
    |----------------|------------------------------------------------------------------------|
    | `TYPE_1`       | One closed nullhomotopic curve, no tangency.                           |
    | `TYPE_2`       | Two disjoint closed curves in the same nonzero homotopy class.         |
    | `TYPE_3`       | Two closed curves sharing exactly one point of tangency.               |
    | `TYPE_4`       | Two closed curves sharing exactly two points of tangency.              |
    | `UNCLASSIFIED` | Anything else: resolution failure or a violated two-piece property.    |
    """

    TYPE_1 = enum.auto()
    TYPE_2 = enum.auto()
    TYPE_3 = enum.auto()
    TYPE_4 = enum.auto()
    UNCLASSIFIED = enum.auto()

    @property
    def label(self) -> str:
        """
        Short label used in reports: `"1"` to `"4"` or `"unclassified"`.
        """
        if self is IntersectionType.UNCLASSIFIED:
            return "unclassified"
        return self.name.removeprefix("TYPE_")
