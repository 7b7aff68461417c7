"""
Conversion of result objects into JSON documents.

The serializers return plain dictionaries of builtin types; `dump_json` renders them with sorted
keys and shortest round-trip floats, so that equal inputs produce byte-identical files. No timestamps
or host information enter a document.
"""

from __future__ import annotations

import dataclasses
import enum
import json
import math
from typing import TYPE_CHECKING, Any

import numpy as np

from toruslab.intersection.profiles import osculating_curvature
from .version import package_version

if TYPE_CHECKING:
    from toruslab.deform import HolderReport, MembershipReport
    from toruslab.intersection import (
        IntersectionCurve,
        IntersectionReport,
        ScanReport,
        TangencyPoint,
    )
    from toruslab.spectral import MontielRosReport, SpectralResult


def jsonable(value: Any) -> Any:
    """
    Recursively convert numpy scalars and arrays, enums, tuples and dataclasses to builtin types.

    Non-finite floats become the strings `"inf"`, `"-inf"` and `"nan"`, which keeps the output
    valid JSON.
    """
    if isinstance(value, enum.Enum):
        return value.name.lower()
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return jsonable(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        x = float(value)
        return x if math.isfinite(x) else str(x)
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {f.name: jsonable(getattr(value, f.name)) for f in dataclasses.fields(value)}
    return value


def dump_json(document: dict[str, Any]) -> str:
    return json.dumps(jsonable(document), sort_keys=True, indent=2, allow_nan=False) + "\n"


def with_provenance(document: dict[str, Any], config: Any) -> dict[str, Any]:
    """
    Attach the library version and the resolved command configuration to a report document.
    """
    return {
        **document,
        "config": jsonable(config),
        "version": package_version(),
    }


def tangency_dict(tangency: TangencyPoint) -> dict[str, Any]:
    return {
        "u": tangency.u,
        "v": tangency.v,
        "point": tangency.point.x,
        "signature": tangency.signature,
        "eigenvalues": tangency.eigenvalues,
        "crossing_angle": tangency.crossing_angle,
    }


def curve_dict(curve: IntersectionCurve) -> dict[str, Any]:
    if curve.profile is not None:
        max_curvature = curve.profile.max_curvature
        min_curvature = curve.profile.min_curvature
    else:
        kappa = osculating_curvature(curve.points, closed=curve.closed)
        max_curvature = float(np.max(kappa))
        min_curvature = float(np.min(kappa))
    return {
        "winding": curve.winding,
        "length": curve.length,
        "max_curvature": max_curvature,
        "min_curvature": min_curvature,
        "points": curve.points,
    }


def intersection_report_dict(report: IntersectionReport) -> dict[str, Any]:
    """
    JSON document of a classification: equator pole, type label, curves, tangencies and the
    component count (`null` at tangent equators).
    """
    return {
        "equator": report.equator.v,
        "type": report.type.label,
        "curves": [curve_dict(c) for c in report.curves],
        "tangencies": [tangency_dict(t) for t in report.tangencies],
        "component_count": report.component_count,
        "resolution": report.resolution,
        "precondition": report.precondition,
    }


def scan_report_dict(report: ScanReport) -> dict[str, Any]:
    return {
        "samples": report.samples,
        "seed": report.seed,
        "resolution": report.resolution,
        "pass": report.passed,
        "type_histogram": report.type_histogram,
        "count_histogram": report.count_histogram,
        "failures": [
            {"index": f.index, "pole": f.pole, "reason": f.reason, "message": f.message}
            for f in report.failures
        ],
        "precondition": report.precondition,
    }


def holder_report_dict(report: HolderReport) -> dict[str, Any]:
    return jsonable(report)


def membership_report_dict(report: MembershipReport) -> dict[str, Any]:
    return {**jsonable(report), "member": report.member}


def spectral_result_dict(result: SpectralResult) -> dict[str, Any]:
    """
    JSON document of an eigensolve. Eigenfunctions are not embedded; they go to the binary dump.
    """
    return {
        "eigenvalues": result.eigenvalues,
        "multiplicity_groups": [len(g) for g in result.multiplicity_groups],
        "residuals": result.residuals,
        "resolution": result.resolution,
    }


def montiel_ros_dict(report: MontielRosReport) -> dict[str, Any]:
    return jsonable(report)
