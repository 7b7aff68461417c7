"""
Report plumbing shared by the command-line tools: JSON documents with a deterministic layout,
atomic file output and the package version embedded in every report.
"""

from .files import atomic_write_bytes, atomic_write_text, resolve_output
from .serialize import (
    curve_dict,
    dump_json,
    holder_report_dict,
    intersection_report_dict,
    jsonable,
    membership_report_dict,
    montiel_ros_dict,
    scan_report_dict,
    spectral_result_dict,
    tangency_dict,
    with_provenance,
)
from .version import package_version

__all__ = [
    "atomic_write_bytes",
    "atomic_write_text",
    "curve_dict",
    "dump_json",
    "holder_report_dict",
    "intersection_report_dict",
    "jsonable",
    "membership_report_dict",
    "montiel_ros_dict",
    "package_version",
    "resolve_output",
    "scan_report_dict",
    "spectral_result_dict",
    "tangency_dict",
    "with_provenance",
]
