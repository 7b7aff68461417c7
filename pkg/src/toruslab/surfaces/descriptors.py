"""
Surface descriptors: short strings and TOML documents naming a test surface.

Accepted inline forms:

| Form                                   | Surface                                                      |
|----------------------------------------|--------------------------------------------------------------|
| `clifford`                             | Clifford torus                                               |
| `homogeneous:<r>`                      | homogeneous tube of radius r                                 |
| `cyclide:<preset>`                     | named cyclide (`default`, `dented`, `far`)                   |
| `cyclide:<R>,<r>[,<o1>,<o2>,<o3>[,<dent>,<lobes>]]` | cyclide from raw parameters                     |
| `perturbed:<base>:<bump>`              | normal perturbation of `<base>`; `<bump>` is a TOML file or `m,k,amplitude,phase` rows joined by `;` |
| `<path>.toml`                          | TOML document with `kind`, parameters and optional `bump`    |

A TOML document holds the keys returned by `TorusImmersion.parameters`; for `kind = "perturbed"`
the `base` key is either a descriptor string or a nested table.
"""

from __future__ import annotations

import dataclasses
import logging
import math
import pathlib
import tomllib
from collections.abc import Mapping
from typing import Any

import numpy as np

from toruslab.errors import DescriptorError
from toruslab.sphere import Equator
from .base import TorusImmersion, get_registered_immersions
from .cyclide import cyclide_presets


logger = logging.getLogger(__name__)


@dataclasses.dataclass(kw_only=True, frozen=True, slots=True, eq=False)
class SurfaceDescriptor:
    """
    Resolved surface descriptor.

    | Field           | Type                              | Semantics                                        |
    |-----------------|-----------------------------------|--------------------------------------------------|
    | `source`        | `str`                             | Descriptor text as given.                        |
    | `immersion`     | `TorusImmersion`                  | Resolved immersion.                              |
    | `witness_poles` | `tuple[tuple[str, Equator], ...]` | Recorded equators with a known outcome.          |
    """

    source: str
    immersion: TorusImmersion
    witness_poles: tuple[tuple[str, Equator], ...] = ()

    @property
    def name(self) -> str:
        return self.source


def parse_surface(text: str) -> SurfaceDescriptor:
    """
    Resolve a descriptor string or TOML file path.

    Parameters:
        text:
            Inline descriptor or path to a `.toml` document.

    Returns:
        The resolved descriptor.

    Raises:
        DescriptorError:
            If the text cannot be parsed or names an unknown kind.
    """
    text = text.strip()
    if text.endswith(".toml"):
        params = load_document(pathlib.Path(text))
        immersion = immersion_from_parameters(params)
        return SurfaceDescriptor(source=text, immersion=immersion, witness_poles=_witnesses(params))
    params = _inline_parameters(text)
    immersion = immersion_from_parameters(params)
    return SurfaceDescriptor(source=text, immersion=immersion, witness_poles=_witnesses(params))


def load_document(path: pathlib.Path) -> dict[str, Any]:
    try:
        with path.open("rb") as f:
            return tomllib.load(f)
    except FileNotFoundError as exc:
        raise DescriptorError(f"descriptor file {str(path)!r} does not exist") from exc
    except tomllib.TOMLDecodeError as exc:
        raise DescriptorError(f"descriptor file {str(path)!r} is not valid TOML: {exc}") from exc


def immersion_from_parameters(params: Mapping[str, Any]) -> TorusImmersion:
    """
    Build an immersion from a parameter mapping with a `kind` key, resolving nested bases.

    Raises:
        DescriptorError:
            If the kind is unknown or the parameters do not fit it.
    """
    registry = get_registered_immersions()
    kind = params.get("kind")
    if kind not in registry:
        raise DescriptorError(f"unknown surface kind {kind!r}, known: {sorted(registry)}")
    resolved = dict(params)
    if kind == "perturbed":
        base = resolved.get("base")
        if isinstance(base, str):
            resolved["base"] = parse_surface(base).immersion
        elif isinstance(base, Mapping):
            resolved["base"] = immersion_from_parameters(base)
        resolved.setdefault("bump", [])
    logger.debug("resolving surface %s", resolved)
    return registry[kind].from_parameters(resolved)


def parse_bump(text: str) -> list[list[float]]:
    """
    Parse bump rows from a TOML file path or from inline `m,k,amplitude,phase` rows joined by
    `;`. A row may omit its phase.

    Raises:
        DescriptorError:
            If a row is malformed.
    """
    text = text.strip()
    if text.endswith(".toml"):
        document = load_document(pathlib.Path(text))
        rows = document.get("bump")
        if not isinstance(rows, list):
            raise DescriptorError(f"bump file {text!r} has no `bump` array")
        return [list(row) for row in rows]
    rows = []
    for chunk in filter(None, (c.strip() for c in text.split(";"))):
        values = _floats(chunk, "bump row")
        if len(values) == 3:
            values.append(0.0)
        if len(values) != 4:
            raise DescriptorError(f"bump row needs m,k,amplitude[,phase], got {chunk!r}")
        rows.append(values)
    return rows


def _inline_parameters(text: str) -> dict[str, Any]:
    kind, _, rest = text.partition(":")
    if kind == "clifford":
        if rest:
            raise DescriptorError(f"clifford takes no parameters, got {rest!r}")
        return {"kind": "clifford"}
    if kind == "homogeneous":
        values = _floats(rest, "homogeneous radius")
        if len(values) != 1:
            raise DescriptorError(f"homogeneous needs one radius, got {rest!r}")
        return {"kind": "homogeneous", "r": values[0]}
    if kind == "cyclide":
        return _cyclide_parameters(rest)
    if kind == "perturbed":
        base, sep, bump = rest.rpartition(":")
        if not sep or not base:
            raise DescriptorError(f"perturbed needs <base>:<bump>, got {rest!r}")
        return {"kind": "perturbed", "base": base, "bump": parse_bump(bump)}
    raise DescriptorError(f"unknown surface descriptor {text!r}")


def _cyclide_parameters(rest: str) -> dict[str, Any]:
    name = rest or "default"
    if name in cyclide_presets():
        return {"kind": "cyclide", "preset": name}
    values = _floats(rest, "cyclide parameters")
    if len(values) not in (2, 5, 7):
        raise DescriptorError(f"cyclide needs R,r[,o1,o2,o3[,dent,lobes]] or a preset name, got {rest!r}")
    params: dict[str, Any] = {"kind": "cyclide", "major": values[0], "minor": values[1]}
    if len(values) >= 5:
        params["offset"] = values[2:5]
    if len(values) == 7:
        params["dent"] = values[5]
        if not float(values[6]).is_integer():
            raise DescriptorError(f"cyclide lobes must be an integer, got {values[6]!r}")
        params["lobes"] = int(values[6])
    return params


def _floats(text: str, what: str) -> list[float]:
    try:
        values = [float(x) for x in text.split(",")]
    except ValueError as exc:
        raise DescriptorError(f"cannot parse {what} from {text!r}") from exc
    if not all(math.isfinite(x) for x in values):
        raise DescriptorError(f"{what} must be finite, got {text!r}")
    return values


def _witnesses(params: Mapping[str, Any]) -> tuple[tuple[str, Equator], ...]:
    kind = params.get("kind")
    if kind == "clifford":
        return (
            ("v0", Equator(v=np.array([0.0, 1.0, 0.0, 0.0]))),
            ("tangent", Equator.from_pole([1.0, 0.0, 1.0, 0.0])),
        )
    if kind == "cyclide" and "preset" in params:
        preset = cyclide_presets()[params["preset"]]
        return ((preset.expected, Equator.from_pole(preset.pole)),)
    if "poles" in params:
        return tuple((f"pole{i}", Equator.from_pole(p)) for i, p in enumerate(params["poles"]))
    return ()
