"""File system utilities for output files.

Every artifact the command line writes goes through ``write_text`` so
repeated runs produce byte-identical files.
"""

import os


def ensure_directory_exists(path: str) -> str:
    """Create directory if it doesn't exist and return absolute path.

    Args:
        path: Directory path to create

    Returns:
        Absolute path to the created/existing directory
    """
    abs_path = os.path.abspath(path)
    os.makedirs(abs_path, exist_ok=True)
    return abs_path


def ensure_parent_exists(file_path: str) -> str:
    """Create the parent directory of ``file_path`` and return its absolute path."""
    parent = os.path.dirname(os.path.abspath(file_path))
    return ensure_directory_exists(parent)


def write_text(file_path: str, content: str) -> str:
    """Write ``content`` with ``\\n`` line endings, replacing any previous file.

    The text lands in a sibling temporary file first and is renamed over the
    target, so readers never observe a half-written artifact.

    Returns:
        Absolute path of the written file
    """
    ensure_parent_exists(file_path)
    target = os.path.abspath(file_path)
    temporary = f"{target}.tmp"
    with open(temporary, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(content)
    os.replace(temporary, target)
    return target
