"""Pytest fixtures shared across the test tree.

The test config path is exported at import time, before any ``src``
module binds its logger, so every module logs with the test settings.

Two autouse fixtures:

1. Per-test snapshot/restore of ``NETMETRIC_CONFIG_FILE_PATH`` and
   ``NETMETRIC_THREADS``. Tests that point the config elsewhere or pin
   the worker count must not leak into later tests.

2. Per-test reset of the one-shot config warning cache, so tests that
   assert on a warning see it regardless of ordering.
"""

import os
import shutil

import pytest

_ENV_CONFIG_FILE_PATH_KEY = "NETMETRIC_CONFIG_FILE_PATH"
_ENV_THREADS_KEY = "NETMETRIC_THREADS"
_TEST_CONFIG_PATH = os.path.join(os.path.dirname(__file__), "data", "test_config.yaml")

os.environ.setdefault(_ENV_CONFIG_FILE_PATH_KEY, _TEST_CONFIG_PATH)


@pytest.fixture(autouse=True)
def _preserve_environment():
    """Snapshot the config path and thread override, restore after the test."""
    saved = {key: os.environ.get(key) for key in (_ENV_CONFIG_FILE_PATH_KEY, _ENV_THREADS_KEY)}
    yield
    for key, value in saved.items():
        if value is None:
            os.environ.pop(key, None)
        else:
            os.environ[key] = value


@pytest.fixture(autouse=True)
def _reset_config_warnings():
    """Clear the one-shot config warning cache around each test."""
    from src import config_parser

    config_parser.clear_config_warning_cache()
    yield
    config_parser.clear_config_warning_cache()


@pytest.fixture(scope="session", autouse=True)
def _clean_temp_dir():
    """Remove ``tests/temp`` once the session ends."""
    yield
    shutil.rmtree(os.path.join(os.path.dirname(__file__), "temp"), ignore_errors=True)
