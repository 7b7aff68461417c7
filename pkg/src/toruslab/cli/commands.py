"""
Command implementations. Each command takes a resolved `CommandConfig` and returns a
`CommandResult`; writing the JSON report and choosing the exit code is left to `main`.
"""

from __future__ import annotations

import dataclasses
import functools
import logging
import math
from collections.abc import Callable
from typing import Any

import numpy as np
import pandas as pd

from toruslab import models
from toruslab.deform import IdentityMap, identity_annulus, minimality_residual_at_lattice, tau
from toruslab.errors import DomainError, NotMinimalError, ToruslabError
from toruslab.intersection import IntersectionReport, classify, scan_two_piece, tangent_equator
from toruslab.reports import (
    atomic_write_bytes,
    atomic_write_text,
    intersection_report_dict,
    montiel_ros_dict,
    package_version,
    resolve_output,
    scan_report_dict,
    spectral_result_dict,
)
from toruslab.sphere import Equator
from toruslab.spectral import (
    SpectralResult,
    assemble_operators,
    coordinate_eigenresidual,
    first_eigenpairs,
    montiel_ros_test,
    write_eigenfunctions,
)
from toruslab.surfaces import (
    CliffordTorus,
    SurfaceDescriptor,
    TorusImmersion,
    curvatures,
    parse_surface,
    sample_mesh,
)
from .config import CommandConfig
from .figures import project_scene, render_ply, render_svg

CURVATURE_SAMPLES = 10_000
LATTICE_ORDERS = (1, 2, 4, 8)
PLANARITY_TOLERANCE = 1e-8
CLIFFORD_MULTIPLICITY = 4
CLIFFORD_LAMBDA1 = 2.0
CLIFFORD_SCAN_TYPES = frozenset({"2", "4"})

logger = logging.getLogger(__name__)


@dataclasses.dataclass(kw_only=True, frozen=True, slots=True, eq=False)
class CommandResult:
    """
    Outcome of a command.

    | Field      | Type                    | Semantics                                            |
    |------------|-------------------------|------------------------------------------------------|
    | `passed`   | `bool`                  | Whether every check of the command passed.           |
    | `document` | `dict[str, Any]`        | JSON report body, without config and version.        |
    | `table`    | `pd.DataFrame \\| None`  | Summary printed to stdout.                           |
    """

    passed: bool
    document: dict[str, Any]
    table: pd.DataFrame | None = None


def _output(config: CommandConfig, path: str) -> str:
    return str(resolve_output(path, config.output_dir))


def _equator(config: CommandConfig, descriptor: SurfaceDescriptor, fallback: bool = False) -> Equator:
    if config.pole is not None:
        return Equator.from_pole(config.pole)
    if config.tangent_at is not None:
        u, v = config.tangent_at
        return tangent_equator(descriptor.immersion, u, v)
    if fallback and descriptor.witness_poles:
        name, eq = descriptor.witness_poles[0]
        logger.info("No equator given; using the recorded pole %r of %s", name, descriptor.source)
        return eq
    raise DomainError(f"{config.command} needs --pole or --tangent-at")


def _export_figures(config: CommandConfig, M: TorusImmersion, report: IntersectionReport) -> dict[str, Any]:
    mesh = sample_mesh(M, config.resolution)
    requested = None if config.projection_pole is None else np.asarray(config.projection_pole)
    projection = project_scene(mesh, report, requested)
    if config.ply_path is not None:
        atomic_write_text(
            _output(config, config.ply_path),
            render_ply(projection, comment=f"toruslab {package_version()} {config.surface}"),
        )
    if config.svg_path is not None:
        atomic_write_bytes(
            _output(config, config.svg_path),
            render_svg(projection, title=f"{config.surface}, type {report.type.label}"),
        )
    return {
        "projection_pole": projection.pole,
        "clearance": projection.clearance,
        "planarity_residual": projection.planarity_residual,
    }


def _curve_table(report: IntersectionReport, document: dict[str, Any]) -> pd.DataFrame:
    return pd.DataFrame(
        [
            {
                "curve": i,
                "winding": tuple(c["winding"]),
                "length": c["length"],
                "max_curvature": c["max_curvature"],
                "min_curvature": c["min_curvature"],
                "vertices": len(c["points"]),
            }
            for i, c in enumerate(document["curves"])
        ],
        columns=["curve", "winding", "length", "max_curvature", "min_curvature", "vertices"],
    )


def cmd_classify(config: CommandConfig) -> CommandResult:
    descriptor = parse_surface(config.surface)
    eq = _equator(config, descriptor)
    report = classify(descriptor.immersion, eq, resolution=config.resolution, profiles=True)
    document = intersection_report_dict(report)
    if config.ply_path is not None or config.svg_path is not None:
        document["projection"] = _export_figures(config, descriptor.immersion, report)
    logger.info("%s at %s: type %s", config.surface, eq, report.type.label)
    return CommandResult(
        passed=report.type is not models.IntersectionType.UNCLASSIFIED,
        document=document,
        table=_curve_table(report, document),
    )


def cmd_project(config: CommandConfig) -> CommandResult:
    descriptor = parse_surface(config.surface)
    eq = _equator(config, descriptor, fallback=True)
    report = classify(descriptor.immersion, eq, resolution=config.resolution, strict=False)
    projection = _export_figures(config, descriptor.immersion, report)
    document = {
        "equator": eq.v,
        "type": report.type.label,
        "curve_count": len(report.curves),
        "tangency_count": len(report.tangencies),
        "projection": projection,
    }
    return CommandResult(
        passed=projection["planarity_residual"] <= PLANARITY_TOLERANCE,
        document=document,
        table=pd.DataFrame([{"type": report.type.label, **projection}]),
    )


def cmd_scan(config: CommandConfig) -> CommandResult:
    descriptor = parse_surface(config.surface)
    report = scan_two_piece(
        descriptor.immersion,
        config.samples,
        seed=config.seed,
        resolution=config.resolution,
        probe_poles=[eq for _, eq in descriptor.witness_poles],
        progress=True,
    )
    rows = [{"histogram": "type", "key": k, "count": n} for k, n in report.type_histogram.items()]
    rows += [{"histogram": "components", "key": k, "count": n} for k, n in report.count_histogram.items()]
    return CommandResult(
        passed=report.passed,
        document=scan_report_dict(report),
        table=pd.DataFrame(rows, columns=["histogram", "key", "count"]),
    )


def _eigen_table(eigenvalues: np.ndarray, groups: list[list[int]]) -> pd.DataFrame:
    group_of = {i: g for g, members in enumerate(groups) for i in members}
    return pd.DataFrame(
        {
            "index": np.arange(len(eigenvalues)),
            "lambda": eigenvalues,
            "group": [group_of[i] for i in range(len(eigenvalues))],
        }
    )


def cmd_spectrum(config: CommandConfig) -> CommandResult:
    descriptor = parse_surface(config.surface)
    mesh = sample_mesh(descriptor.immersion, config.resolution)
    operators = assemble_operators(mesh)
    result = first_eigenpairs(mesh, config.count, operators)
    document: dict[str, Any] = {
        **spectral_result_dict(result),
        "coordinate_residual": coordinate_eigenresidual(mesh, operators),
    }
    try:
        document["montiel_ros"] = montiel_ros_dict(
            montiel_ros_test(mesh, margin=config.margin, threshold=config.tol_residual)
        )
    except NotMinimalError as exc:
        logger.info("Skipping the first-eigenvalue test: %s", exc)
        document["montiel_ros"] = {"skipped": str(exc)}
    if config.eigenfunctions_path is not None:
        write_eigenfunctions(_output(config, config.eigenfunctions_path), result)
    return CommandResult(
        passed=True,
        document=document,
        table=_eigen_table(result.eigenvalues, result.multiplicity_groups),
    )


@dataclasses.dataclass(kw_only=True, frozen=True, slots=True)
class Check:
    """
    One verification check.

    | Field       | Type            | Semantics                                     |
    |-------------|-----------------|-----------------------------------------------|
    | `name`      | `str`           | Check name.                                   |
    | `passed`    | `bool`          | Outcome.                                      |
    | `value`     | `Any`           | Measured value, or the error message.         |
    | `tolerance` | `Any`           | Threshold or expected value.                  |
    """

    name: str
    passed: bool
    value: Any
    tolerance: Any


def _run_check(name: str, tolerance: Any, measure: Callable[[], tuple[bool, Any]]) -> Check:
    try:
        passed, value = measure()
    except ToruslabError as exc:
        logger.warning("Check %s raised %s: %s", name, type(exc).__name__, exc)
        return Check(name=name, passed=False, value=f"{type(exc).__name__}: {exc}", tolerance=tolerance)
    if not passed:
        logger.warning("Check %s failed: value %s, tolerance %s", name, value, tolerance)
    return Check(name=name, passed=passed, value=value, tolerance=tolerance)


def cmd_verify_clifford(config: CommandConfig) -> CommandResult:
    """
    Run the Clifford torus identity suite: curvature identities, classification of the recorded
    equators, the two-piece scan, the spectrum, the coordinate eigenresidual, the first-eigenvalue
    test, and the identity deformation.
    """
    M = CliffordTorus()
    rng = np.random.default_rng(config.seed)
    checks: list[Check] = []

    def curvature_identities() -> tuple[bool, Any]:
        u, v = rng.uniform(0.0, 2.0 * math.pi, size=(2, CURVATURE_SAMPLES))
        s = curvatures(M, u, v)
        worst = float(
            max(np.max(np.abs(s.H)), np.max(np.abs(s.K)), np.max(np.abs(s.k1 - 1.0)), np.max(np.abs(s.k2 + 1.0)))
        )
        return worst < config.tol_curvature, worst

    checks.append(_run_check("curvature_identities", config.tol_curvature, curvature_identities))

    for name, eq, expected in (
        ("classify_v0", Equator(v=np.array([0.0, 1.0, 0.0, 0.0])), models.IntersectionType.TYPE_2),
        ("classify_tangent", Equator.from_pole([1.0, 0.0, 1.0, 0.0]), models.IntersectionType.TYPE_4),
    ):

        def classification(eq: Equator = eq, expected: models.IntersectionType = expected) -> tuple[bool, Any]:
            report = classify(M, eq, resolution=config.resolution)
            return report.type is expected, report.type.label

        checks.append(_run_check(name, expected.label, classification))

    def scan() -> tuple[bool, Any]:
        report = scan_two_piece(M, config.samples, seed=config.seed, resolution=config.resolution, progress=True)
        types_ok = set(report.type_histogram) <= CLIFFORD_SCAN_TYPES
        return report.passed and types_ok, report.type_histogram

    checks.append(_run_check("two_piece_scan", sorted(CLIFFORD_SCAN_TYPES), scan))

    mesh = sample_mesh(M, config.resolution)
    operators = assemble_operators(mesh)

    @functools.cache
    def eigenpairs() -> SpectralResult:
        return first_eigenpairs(mesh, max(config.count, CLIFFORD_MULTIPLICITY + 2), operators)

    def spectrum() -> tuple[bool, Any]:
        result = eigenpairs()
        error = abs(result.lambda1 - CLIFFORD_LAMBDA1) / CLIFFORD_LAMBDA1
        return error <= config.tol_lambda, error

    def multiplicity() -> tuple[bool, Any]:
        size = len(eigenpairs().multiplicity_groups[1])
        return size == CLIFFORD_MULTIPLICITY, size

    def residual() -> tuple[bool, Any]:
        value = coordinate_eigenresidual(mesh, operators)
        return value <= config.tol_residual, value

    def montiel_ros() -> tuple[bool, Any]:
        report = montiel_ros_test(mesh, margin=config.margin, threshold=config.tol_residual)
        return report.verdict is models.MontielRosVerdict.CLIFFORD_CONSISTENT, montiel_ros_dict(report)

    checks.append(_run_check("lambda1", config.tol_lambda, spectrum))
    checks.append(_run_check("lambda1_multiplicity", CLIFFORD_MULTIPLICITY, multiplicity))
    checks.append(_run_check("coordinate_residual", config.tol_residual, residual))
    checks.append(_run_check("montiel_ros", "clifford_consistent", montiel_ros))

    def identity_tau() -> tuple[bool, Any]:
        value = tau(identity_annulus(), config.alpha, seed=config.seed)
        return value == 0.0, value

    def identity_lattice() -> tuple[bool, Any]:
        worst = max(minimality_residual_at_lattice(IdentityMap(), n) for n in LATTICE_ORDERS)
        return worst < config.tol_curvature, worst

    checks.append(_run_check("identity_tau", 0.0, identity_tau))
    checks.append(_run_check("identity_lattice_residual", config.tol_curvature, identity_lattice))

    failed = [c.name for c in checks if not c.passed]
    return CommandResult(
        passed=not failed,
        document={
            "checks": {c.name: {"pass": c.passed, "value": c.value, "tolerance": c.tolerance} for c in checks},
            "failed": failed,
        },
        table=pd.DataFrame(
            [{"check": c.name, "pass": c.passed, "value": c.value} for c in checks],
            columns=["check", "pass", "value"],
        ),
    )


COMMANDS: dict[str, Callable[[CommandConfig], CommandResult]] = {
    "verify-clifford": cmd_verify_clifford,
    "classify": cmd_classify,
    "scan": cmd_scan,
    "spectrum": cmd_spectrum,
    "project": cmd_project,
}
