"""Configuration utility functions for reusable config operations.

Low-level traversal, retrieval and scalar coercion shared by the config
file getters in config_parser.py and the classification manifest reader in
main.py. Nothing here logs; callers decide how to report a bad value.
"""

from typing import Any

_TRUE_WORDS = ("on", "true", "yes", "1")
_FALSE_WORDS = ("off", "false", "no", "0")


def config_path_to_string(config_path: list[str]) -> str:
    """Build config path as string for display purposes.

    Args:
        config_path: List of config keys forming a path (e.g., ["approx", "mds_dim"])

    Returns:
        String representation of the config path (e.g., "approx > mds_dim")
    """
    return " > ".join(config_path)


def traverse_config_path(config: dict | None, config_path: list[str]) -> bool:
    """Check that every key of ``config_path`` exists in ``config``.

    A non-mapping value part way along the path (a section written as a
    scalar, say) counts as missing rather than raising.

    Args:
        config: Configuration dictionary to traverse
        config_path: List of keys forming the path to check

    Returns:
        True if path exists and is valid, False otherwise
    """
    if len(config_path) == 0:
        return True
    if not (isinstance(config, dict) and config_path[0] in config):
        return False
    return traverse_config_path(config[config_path[0]], config_path=config_path[1:])


def get_config_value(config: dict, config_path: list[str]) -> Any:
    """Retrieve value from config using a path.

    Should only be called after validating path existence with traverse_config_path().

    Args:
        config: Configuration dictionary
        config_path: List of keys forming the path to the value

    Returns:
        The configuration value at the specified path

    Raises:
        KeyError: If the path doesn't exist
    """
    if len(config_path) == 1:
        return config[config_path[0]]
    return get_config_value(config=config[config_path[0]], config_path=config_path[1:])


def get_config_value_or_none(config: dict | None, config_path: list[str]) -> Any | None:
    """Safely retrieve config value or return None if path doesn't exist.

    Args:
        config: Configuration dictionary (or None when no file was loaded)
        config_path: List of keys forming the path to the value

    Returns:
        The configuration value if path exists, None otherwise
    """
    if not traverse_config_path(config=config, config_path=config_path):
        return None
    return get_config_value(config=config, config_path=config_path)


def get_config_value_or_default(config: dict | None, config_path: list[str], default: Any) -> Any:
    """Retrieve config value or return default if path doesn't exist or is null.

    Args:
        config: Configuration dictionary (or None when no file was loaded)
        config_path: List of keys forming the path to the value
        default: Value returned when the key is absent or set to null

    Returns:
        The configuration value if present, default otherwise
    """
    value = get_config_value_or_none(config=config, config_path=config_path)
    return value if value is not None else default


def coerce_number(value: Any, kind: type) -> int | float | None:
    """Convert a YAML or JSON scalar to ``int`` or ``float``.

    Booleans are rejected even though they subclass ``int``; integral floats
    are accepted where an ``int`` is wanted. Strings are never parsed, so a
    quoted ``"3"`` is as invalid as ``"three"``.

    Args:
        value: Scalar read from a config file or manifest
        kind: ``int`` or ``float``

    Returns:
        The converted number, or None when the value cannot represent ``kind``
    """
    if isinstance(value, bool):
        return None
    if kind is int:
        if isinstance(value, int):
            return value
        if isinstance(value, float) and value.is_integer():
            return int(value)
        return None
    if isinstance(value, (int, float)):
        return float(value)
    return None


def coerce_flag(value: Any) -> bool | None:
    """Convert a boolean or an on/off word to ``bool``.

    Args:
        value: ``True``/``False`` or one of on, off, true, false, yes, no, 1, 0

    Returns:
        The flag, or None when the value is neither
    """
    if isinstance(value, bool):
        return value
    if isinstance(value, str):
        lowered = value.strip().lower()
        if lowered in _TRUE_WORDS:
            return True
        if lowered in _FALSE_WORDS:
            return False
    return None
