"""
Command-line interface: configuration, the five commands and figure export.
"""

from .commands import (
    COMMANDS,
    CommandResult,
    cmd_classify,
    cmd_project,
    cmd_scan,
    cmd_spectrum,
    cmd_verify_clifford,
)
from .config import CommandConfig, parse_vector, resolve_config
from .figures import Projection, choose_pole, project_scene, render_ply, render_svg
from .main import build_parser, main

__all__ = [
    "COMMANDS",
    "CommandConfig",
    "CommandResult",
    "Projection",
    "build_parser",
    "choose_pole",
    "cmd_classify",
    "cmd_project",
    "cmd_scan",
    "cmd_spectrum",
    "cmd_verify_clifford",
    "main",
    "parse_vector",
    "project_scene",
    "render_ply",
    "render_svg",
    "resolve_config",
]
