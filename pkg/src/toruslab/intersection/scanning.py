"""
Seeded scans of random equators for the two-piece property.

A surface has the two-piece property if every equator divides it into exactly two connected
components. The scan draws equator poles uniformly on S³, counts components where the equator is
transverse and falls back to the intersection type where it is tangent (types 3 and 4 split the
surface in two as well).
"""

from __future__ import annotations

import collections
import dataclasses
import logging
import sys
from collections.abc import Iterable

import numpy as np
import tqdm

from toruslab import models
from toruslab.errors import DomainError, ToruslabError
from toruslab.sphere import Equator, SpherePoint, as_array
from toruslab.surfaces import TorusImmersion
from .classification import check_negative_curvature, classify


logger = logging.getLogger(__name__)

TWO_PIECE_TANGENT_TYPES = (models.IntersectionType.TYPE_3, models.IntersectionType.TYPE_4)


@dataclasses.dataclass(kw_only=True, frozen=True, slots=True)
class ScanEntry:
    """
    Outcome for one scanned equator.

    | Field             | Type                              | Semantics                                        |
    |-------------------|-----------------------------------|--------------------------------------------------|
    | `index`           | `int`                             | Position in the scan; probe poles follow samples. |
    | `pole`            | `tuple[float, ...]`               | Unit pole of the equator.                        |
    | `type`            | `models.IntersectionType \\| None` | Assigned type, None if the equator failed.       |
    | `component_count` | `int \\| None`                     | Components of M \\ S(v), None at tangencies.      |
    | `probe`           | `bool`                            | True for caller-supplied poles.                  |
    """

    index: int
    pole: tuple[float, ...]
    type: models.IntersectionType | None
    component_count: int | None
    probe: bool = False


@dataclasses.dataclass(kw_only=True, frozen=True, slots=True)
class ScanFailure:
    """
    An equator that broke the two-piece property or could not be processed.

    | Field     | Type                | Semantics                                                         |
    |-----------|---------------------|-------------------------------------------------------------------|
    | `index`   | `int`               | Position in the scan.                                             |
    | `pole`    | `tuple[float, ...]` | Unit pole of the equator.                                         |
    | `reason`  | `str`               | `"two-piece violation"` or the class name of the raised error.    |
    | `message` | `str`               | Human-readable detail.                                            |
    """

    index: int
    pole: tuple[float, ...]
    reason: str
    message: str


@dataclasses.dataclass(kw_only=True, frozen=True, slots=True)
class ScanReport:
    """
    Aggregated result of `scan_two_piece`.

    | Field              | Type                         | Semantics                                               |
    |--------------------|------------------------------|---------------------------------------------------------|
    | `samples`          | `int`                        | Number of random poles drawn.                           |
    | `seed`             | `int`                        | Seed of the pole generator.                             |
    | `resolution`       | `int`                        | Grid size used per equator.                             |
    | `entries`          | `tuple[ScanEntry, ...]`      | Per-equator outcomes ordered by index.                  |
    | `failures`         | `tuple[ScanFailure, ...]`    | Violations and errors ordered by index.                 |
    | `type_histogram`   | `dict[str, int]`             | Counts per type label.                                  |
    | `count_histogram`  | `dict[str, int]`             | Counts per component count (`"tangent"` at tangencies). |
    | `precondition`     | `str \\| None`                | Message if S < 0 fails somewhere on the grid.           |
    """

    samples: int
    seed: int
    resolution: int
    entries: tuple[ScanEntry, ...]
    failures: tuple[ScanFailure, ...]
    type_histogram: dict[str, int]
    count_histogram: dict[str, int]
    precondition: str | None = None

    @property
    def passed(self) -> bool:
        return not self.failures


def random_poles(samples: int, seed: int) -> np.ndarray:
    """
    `samples` unit vectors uniform on S³ from `numpy.random.default_rng(seed)`.
    """
    x = np.random.default_rng(seed).standard_normal((samples, 4))
    return x / np.linalg.norm(x, axis=-1, keepdims=True)


def scan_two_piece(
    M: TorusImmersion,
    samples: int,
    seed: int = 42,
    resolution: int = 64,
    probe_poles: Iterable[SpherePoint | Equator | np.ndarray | tuple[float, ...]] = (),
    progress: bool = False,
) -> ScanReport:
    """
    Test the two-piece property on seeded random equators.

    Parameters:
        M:
            Immersion.
        samples:
            Number of random equators, at least 1.
        seed:
            Seed of the pole generator.
        resolution:
            Grid size per equator.
        probe_poles:
            Extra poles scanned after the random ones, e.g. recorded witnesses.
        progress:
            Show a progress bar on stderr when it is a terminal.

    Returns:
        The scan report; it passes iff every equator splits M into two components.

    Raises:
        DomainError:
            If `samples` < 1.
    """
    if samples < 1:
        raise DomainError(f"a scan needs at least one sample, got {samples}")
    precondition = check_negative_curvature(M, resolution)
    if precondition is not None:
        logger.info("scanning a surface outside the classification hypothesis: %s", precondition)
    poles = [(p, False) for p in random_poles(samples, seed)]
    poles.extend((as_array(p), True) for p in probe_poles)

    entries: list[ScanEntry] = []
    failures: list[ScanFailure] = []
    bar = tqdm.tqdm(poles, desc="equators", file=sys.stderr, disable=not (progress and sys.stderr.isatty()))
    for index, (pole, probe) in enumerate(bar):
        eq = Equator.from_pole(pole)
        key = tuple(float(x) for x in eq.v)
        try:
            report = classify(M, eq, resolution=resolution, strict=False, check_curvature=False)
        except ToruslabError as exc:
            logger.warning("equator %d with pole %s failed: %s", index, key, exc)
            failures.append(ScanFailure(index=index, pole=key, reason=type(exc).__name__, message=str(exc)))
            entries.append(ScanEntry(index=index, pole=key, type=None, component_count=None, probe=probe))
            continue
        entries.append(
            ScanEntry(index=index, pole=key, type=report.type, component_count=report.component_count, probe=probe)
        )
        if report.component_count is None:
            if report.type not in TWO_PIECE_TANGENT_TYPES:
                failures.append(
                    ScanFailure(
                        index=index,
                        pole=key,
                        reason="two-piece violation",
                        message=f"tangent equator with intersection type {report.type.label}",
                    )
                )
        elif report.component_count != 2:
            failures.append(
                ScanFailure(
                    index=index,
                    pole=key,
                    reason="two-piece violation",
                    message=f"equator divides the surface into {report.component_count} components",
                )
            )

    types = collections.Counter(e.type.label for e in entries if e.type is not None)
    counts = collections.Counter(
        "tangent" if e.component_count is None else str(e.component_count) for e in entries if e.type is not None
    )
    logger.info("scanned %d equators, %d failures", len(entries), len(failures))
    return ScanReport(
        samples=samples,
        seed=seed,
        resolution=resolution,
        entries=tuple(entries),
        failures=tuple(failures),
        type_histogram=dict(sorted(types.items())),
        count_histogram=dict(sorted(counts.items())),
        precondition=precondition,
    )
