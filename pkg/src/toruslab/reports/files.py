from __future__ import annotations

import logging
import os
import pathlib
import tempfile


logger = logging.getLogger(__name__)


def resolve_output(path: str | os.PathLike[str], base_dir: str | os.PathLike[str] | None) -> pathlib.Path:
    """
    Resolve an output path against a base directory.

    Absolute paths are returned unchanged; relative paths are taken relative to `base_dir`, or to
    the current directory when `base_dir` is `None`.
    """
    target = pathlib.Path(path)
    if target.is_absolute() or base_dir is None:
        return target
    return pathlib.Path(base_dir) / target


def atomic_write_bytes(path: str | os.PathLike[str], data: bytes) -> pathlib.Path:
    """
    Write bytes to a file so that readers never observe a partial file.

    The data is written to a temporary file in the target directory, flushed to disk and then moved
    over the target with `os.replace`, which is atomic on POSIX and Windows filesystems.

    Parameters:
        path:
            Destination file. Missing parent directories are created.
        data:
            File contents.

    Returns:
        The destination path.

    Raises:
        OSError:
            If the directory cannot be created or the file cannot be written.
    """
    target = pathlib.Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with tempfile.NamedTemporaryFile(
        mode="wb",
        prefix=f".{target.name}.",
        suffix=".tmp",
        delete=False,
        dir=target.parent,
    ) as tmp:
        tmp.write(data)
        tmp.flush()
        os.fsync(tmp.fileno())
        tmp_path = pathlib.Path(tmp.name)
    try:
        os.replace(tmp_path, target)
    except OSError:
        tmp_path.unlink(missing_ok=True)
        raise
    logger.debug("Wrote %d bytes to %s", len(data), target)
    return target


def atomic_write_text(path: str | os.PathLike[str], text: str) -> pathlib.Path:
    """
    UTF-8 counterpart of `atomic_write_bytes`.
    """
    return atomic_write_bytes(path, text.encode("utf-8"))
