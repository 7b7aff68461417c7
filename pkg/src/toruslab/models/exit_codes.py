from __future__ import annotations

import enum


class ExitCode(enum.IntEnum):
    """
    Enumeration of command-line exit codes.

    | Value          | Code | Semantics                                        |
    |----------------|------|--------------------------------------------------|
    | `PASS`         | 0    | Every check passed.                              |
    | `CHECK_FAILED` | 1    | A check or a precondition failed.                |
    | `USAGE`        | 2    | Invalid flags, descriptors or values.            |
    | `NUMERICAL`    | 3    | A numerical routine failed to converge.          |
    """

    PASS = 0
    CHECK_FAILED = 1
    USAGE = 2
    NUMERICAL = 3
