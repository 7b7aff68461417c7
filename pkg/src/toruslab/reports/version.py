from __future__ import annotations

import importlib.metadata


def package_version() -> str:
    """
    Installed distribution version, falling back to `toruslab.__version__` for source checkouts.
    """
    try:
        return importlib.metadata.version("toruslab")
    except importlib.metadata.PackageNotFoundError:
        from toruslab import __version__

        return __version__
