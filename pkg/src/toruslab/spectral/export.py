from __future__ import annotations

import os
import pathlib
import struct

import numpy as np

from toruslab.errors import DomainError
from toruslab.reports.files import atomic_write_bytes
from .eigen import SpectralResult

MAGIC = b"TLEF"
HEADER = struct.Struct("<4sIII")


def write_eigenfunctions(path: str | os.PathLike[str], result: SpectralResult) -> pathlib.Path:
    """
    Dump the eigenfunctions of `result` as a binary grid.

    The file is a 16-byte little-endian header (magic `b"TLEF"`, uint32 n_u, n_v, count) followed
    by `count` grids of n_u·n_v little-endian float64 values, each row-major in (i, j).
    """
    n_u, n_v = result.resolution
    header = HEADER.pack(MAGIC, n_u, n_v, result.count)
    body = np.ascontiguousarray(result.eigenfunctions, dtype="<f8").tobytes()
    return atomic_write_bytes(path, header + body)


def read_eigenfunctions(path: str | os.PathLike[str]) -> np.ndarray:
    """
    Read a dump written by `write_eigenfunctions`.

    Returns:
        Eigenfunction grids, shape (count, n_u, n_v).

    Raises:
        DomainError:
            If the magic is wrong or the payload size disagrees with the header.
    """
    data = pathlib.Path(path).read_bytes()
    if len(data) < HEADER.size:
        raise DomainError(f"{path}: file shorter than the {HEADER.size}-byte header")
    magic, n_u, n_v, count = HEADER.unpack_from(data)
    if magic != MAGIC:
        raise DomainError(f"{path}: bad magic {magic!r}, expected {MAGIC!r}")
    expected = HEADER.size + 8 * n_u * n_v * count
    if len(data) != expected:
        raise DomainError(f"{path}: expected {expected} bytes for {count}×{n_u}×{n_v}, got {len(data)}")
    values = np.frombuffer(data, dtype="<f8", offset=HEADER.size)
    return values.reshape(count, n_u, n_v).astype(float)
