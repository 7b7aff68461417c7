import logging

import pytest


@pytest.fixture(autouse=True)
def restore_package_logger():
    logger = logging.getLogger("toruslab")
    handlers, level, propagate = list(logger.handlers), logger.level, logger.propagate
    yield
    logger.handlers[:] = handlers
    logger.setLevel(level)
    logger.propagate = propagate


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch, tmp_path):
    # setting first makes teardown remove values a .env file loaded
    for name in ("TORUSLAB_SEED", "TORUSLAB_RESOLUTION", "TORUSLAB_SAMPLES", "TORUSLAB_OUTPUT_DIR"):
        monkeypatch.setenv(name, "")
        monkeypatch.delenv(name)
    monkeypatch.chdir(tmp_path)
