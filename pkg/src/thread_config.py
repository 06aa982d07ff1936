"""Worker configuration utilities.

Worker process count for parallel pairwise computations. The ``NETMETRIC_THREADS``
environment variable takes precedence over ``app.max_threads``.
"""

import os
from typing import Any

from src import ENV_THREADS_KEY, config_parser, get_logger

LOGGER = get_logger()


def get_max_threads(config: Any) -> int:
    """Get maximum number of worker processes for pairwise computations.

    Args:
        config: Configuration dictionary

    Returns:
        Maximum number of worker processes to use
    """
    env_value = os.environ.get(ENV_THREADS_KEY)
    if env_value is not None and env_value.strip():
        default_max_threads = config_parser.calculate_default_max_threads()
        max_threads = config_parser.parse_max_threads_value(env_value.strip(), default_max_threads)
        LOGGER.debug(f"{ENV_THREADS_KEY}={env_value.strip()} selects {max_threads} worker processes")
        return max_threads
    return config_parser.get_app_max_threads(config)
