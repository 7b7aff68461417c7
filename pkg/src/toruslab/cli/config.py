"""
Resolved configuration of a command-line run.

Flags take precedence over environment variables, which take precedence over built-in defaults.
A `.env` file in the working directory is loaded before the environment is read.
"""

from __future__ import annotations

import argparse
import dataclasses
import math
import os
from typing import Any

import dotenv

from toruslab.errors import DomainError

DEFAULT_SEED = 42
DEFAULT_RESOLUTION = 128
DEFAULT_SAMPLES = 200
DEFAULT_ALPHA = 0.5
DEFAULT_COUNT = 6
DEFAULT_MARGIN = 0.02
DEFAULT_TOL_CURVATURE = 1e-9
DEFAULT_TOL_LAMBDA = 5e-3
DEFAULT_TOL_RESIDUAL = 1e-2
MIN_RESOLUTION = 32
MAX_RESOLUTION = 512


@dataclasses.dataclass(kw_only=True, frozen=True, slots=True)
class CommandConfig:
    """
    Everything a command needs, after merging flags, environment and defaults.

    | Field              | Type                                     | Semantics                                        |
    |--------------------|------------------------------------------|--------------------------------------------------|
    | `command`          | `str`                                    | Subcommand name.                                 |
    | `surface`          | `str`                                    | Surface descriptor or TOML path.                 |
    | `pole`             | `tuple[float, ...] \\| None`              | Equator pole, unnormalized.                      |
    | `tangent_at`       | `tuple[float, ...] \\| None`              | Parameters whose normal is the pole.             |
    | `projection_pole`  | `tuple[float, ...] \\| None`              | Stereographic pole inside S(v).                  |
    | `resolution`       | `int`                                    | Grid resolution, a power of two in [32, 512].    |
    | `samples`          | `int`                                    | Random equators or Hölder samples.               |
    | `seed`             | `int`                                    | Master seed.                                     |
    | `alpha`            | `float`                                  | Hölder exponent in (0, 1].                       |
    | `count`            | `int`                                    | Eigenpairs to compute.                           |
    | `margin`           | `float \\| None`                          | Relative λ₁ margin; estimated when `None`.       |
    | `tol_curvature`    | `float`                                  | Tolerance of curvature identities.               |
    | `tol_lambda`       | `float`                                  | Relative tolerance on λ₁ = 2.                    |
    | `tol_residual`     | `float`                                  | Threshold of the coordinate eigenresidual.       |
    | `json_path`        | `str \\| None`                            | JSON report destination.                         |
    | `ply_path`         | `str \\| None`                            | PLY mesh destination.                            |
    | `svg_path`         | `str \\| None`                            | SVG figure destination.                          |
    | `eigenfunctions_path` | `str \\| None`                         | Binary eigenfunction dump destination.           |
    | `output_dir`       | `str \\| None`                            | Base directory of relative output paths.         |
    """

    command: str
    surface: str = "clifford"
    pole: tuple[float, ...] | None = None
    tangent_at: tuple[float, ...] | None = None
    projection_pole: tuple[float, ...] | None = None
    resolution: int = DEFAULT_RESOLUTION
    samples: int = DEFAULT_SAMPLES
    seed: int = DEFAULT_SEED
    alpha: float = DEFAULT_ALPHA
    count: int = DEFAULT_COUNT
    margin: float | None = DEFAULT_MARGIN
    tol_curvature: float = DEFAULT_TOL_CURVATURE
    tol_lambda: float = DEFAULT_TOL_LAMBDA
    tol_residual: float = DEFAULT_TOL_RESIDUAL
    json_path: str | None = None
    ply_path: str | None = None
    svg_path: str | None = None
    eigenfunctions_path: str | None = None
    output_dir: str | None = None

    def __post_init__(self) -> None:
        n = self.resolution
        if not (MIN_RESOLUTION <= n <= MAX_RESOLUTION and n & (n - 1) == 0):
            raise DomainError(
                f"resolution must be a power of two in [{MIN_RESOLUTION}, {MAX_RESOLUTION}], got {n}"
            )
        if self.samples < 1:
            raise DomainError(f"samples must be positive, got {self.samples}")
        if not 0.0 < self.alpha <= 1.0:
            raise DomainError(f"alpha must lie in (0, 1], got {self.alpha}")
        if self.margin is not None and self.margin < 0.0:
            raise DomainError(f"margin must be non-negative, got {self.margin}")
        for name in ("tol_curvature", "tol_lambda", "tol_residual"):
            if not getattr(self, name) > 0.0:
                raise DomainError(f"{name} must be positive, got {getattr(self, name)}")

    def as_dict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)


def parse_vector(text: str, size: int, what: str) -> tuple[float, ...]:
    """
    Parse comma-separated floats, e.g. `"1,0,1,0"`.

    Raises:
        DomainError:
            If the text has the wrong number of entries, a non-number or a non-finite value.
    """
    try:
        values = tuple(float(x) for x in text.split(","))
    except ValueError as exc:
        raise DomainError(f"cannot parse {what} from {text!r}") from exc
    if len(values) != size:
        raise DomainError(f"{what} needs {size} comma-separated values, got {text!r}")
    if not all(math.isfinite(x) for x in values):
        raise DomainError(f"{what} must be finite, got {text!r}")
    return values


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError as exc:
        raise DomainError(f"environment variable {name} must be an integer, got {raw!r}") from exc


def resolve_config(args: argparse.Namespace) -> CommandConfig:
    """
    Merge parsed flags with `TORUSLAB_*` environment variables and defaults.

    Raises:
        DomainError:
            If a value is malformed or out of range.
    """
    dotenv.load_dotenv(dotenv.find_dotenv(usecwd=True))

    def flag(name: str, default: Any) -> Any:
        value = getattr(args, name, None)
        return default if value is None else value

    pole = getattr(args, "pole", None)
    tangent_at = getattr(args, "tangent_at", None)
    projection_pole = getattr(args, "projection_pole", None)
    return CommandConfig(
        command=args.command,
        surface=flag("surface", "clifford"),
        pole=None if pole is None else parse_vector(pole, 4, "--pole"),
        tangent_at=None if tangent_at is None else parse_vector(tangent_at, 2, "--tangent-at"),
        projection_pole=None if projection_pole is None else parse_vector(projection_pole, 4, "--from"),
        resolution=flag("resolution", _env_int("TORUSLAB_RESOLUTION", DEFAULT_RESOLUTION)),
        samples=flag("samples", _env_int("TORUSLAB_SAMPLES", DEFAULT_SAMPLES)),
        seed=flag("seed", _env_int("TORUSLAB_SEED", DEFAULT_SEED)),
        alpha=flag("alpha", DEFAULT_ALPHA),
        count=flag("count", DEFAULT_COUNT),
        margin=None if getattr(args, "auto_margin", False) else flag("margin", DEFAULT_MARGIN),
        tol_curvature=flag("tol_curvature", DEFAULT_TOL_CURVATURE),
        tol_lambda=flag("tol_lambda", DEFAULT_TOL_LAMBDA),
        tol_residual=flag("tol_residual", DEFAULT_TOL_RESIDUAL),
        json_path=getattr(args, "json", None),
        ply_path=getattr(args, "ply", None),
        svg_path=getattr(args, "svg", None),
        eigenfunctions_path=getattr(args, "eigenfunctions", None),
        output_dir=os.environ.get("TORUSLAB_OUTPUT_DIR") or None,
    )
