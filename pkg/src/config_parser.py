"""Config file parser.

High-level configuration retrieval functions. Low-level utilities are in
config_utils.py and logging in config_logging.py. Every getter accepts a
``None`` config and falls back to the built-in default.
"""

import multiprocessing
import re
from typing import Any

from src import (
    DEFAULT_FEAT_DIM,
    DEFAULT_GAMMAS,
    DEFAULT_MAX_THREADS_CAP,
    DEFAULT_MDS_DIM,
    DEFAULT_MODELS,
    DEFAULT_NODES,
    DEFAULT_PER_MODEL,
    DEFAULT_REFINEMENT,
    DEFAULT_RESTARTS,
    DEFAULT_SEED,
    DEFAULT_SIGMA,
    DEFAULT_SMACOF_ITERS,
    DEFAULT_SMACOF_TOL,
    DEFAULT_SSTRESS_ITERS,
    DEFAULT_SSTRESS_TOL,
    DEFAULT_TOLERANCE,
    get_logger,
)
from src.config_logging import (
    log_config_debug,
    log_config_error,
    log_config_found_info,
    log_config_not_found_warning,
    log_invalid_config_value,
)
from src.config_utils import (
    coerce_number,
    config_path_to_string,
    get_config_value,
    get_config_value_or_default,
    traverse_config_path,
)

LOGGER = get_logger()

VALID_MODELS = ("er", "circle", "corr")
VALID_REFINEMENTS = ("sstress", "smacof")
_NODE_RANGE_PATTERN = re.compile(r"^\s*(\d+)\s*(?:\.\.\s*(\d+)\s*)?$")

# Cache for config values to prevent repeated warnings
_config_warning_cache = set()


def _log_config_warning_once(config_path: list, message: str) -> None:
    """Log a configuration warning only once for the given config path."""
    config_path_key = config_path_to_string(config_path)
    if config_path_key not in _config_warning_cache:
        _config_warning_cache.add(config_path_key)
        log_config_not_found_warning(config_path, message)


def clear_config_warning_cache() -> None:
    """Clear the configuration warning cache (test isolation)."""
    _config_warning_cache.clear()


# =============================================================================
# Generic Typed Getters
# =============================================================================


def get_number(
    config: dict | None,
    config_path: list[str],
    default: int | float,
    kind: type = int,
    minimum: float | None = None,
    strictly_positive: bool = False,
) -> Any:
    """Return a numeric setting, validating type and lower bound.

    Args:
        config: Configuration dictionary
        config_path: Path to the setting
        default: Value used when missing or invalid
        kind: ``int`` or ``float``
        minimum: Inclusive lower bound, if any
        strictly_positive: Require value > 0

    Returns:
        The configured number, or ``default``
    """
    if not traverse_config_path(config=config, config_path=config_path):
        log_config_debug(f"{config_path_to_string(config_path)} not set. Using default {default}.")
        return default
    raw = get_config_value(config=config, config_path=config_path)
    value = coerce_number(raw, kind)
    if value is None or (minimum is not None and value < minimum) or (strictly_positive and value <= 0):
        bound = "> 0" if strictly_positive else f">= {minimum}" if minimum is not None else "any"
        log_invalid_config_value(config_path, raw, f"{kind.__name__} {bound}")
        return default
    return value


def get_bool(config: dict | None, config_path: list[str], default: bool) -> bool:
    """Return a boolean setting."""
    value = get_config_value_or_default(config=config, config_path=config_path, default=default)
    if isinstance(value, bool):
        return value
    log_invalid_config_value(config_path, value, "true or false")
    return default


# =============================================================================
# Application Settings
# =============================================================================


def get_tolerance(config: dict | None) -> float:
    """Return the global absolute comparison tolerance."""
    return get_number(config, ["app", "tolerance"], DEFAULT_TOLERANCE, kind=float, strictly_positive=True)


def calculate_default_max_threads() -> int:
    """Calculate the default worker count based on CPU cores.

    Returns:
        Default worker count (min of CPU count and 8)
    """
    return min(multiprocessing.cpu_count(), 8)


def parse_max_threads_value(max_threads_config: Any, default_max_threads: int) -> int:
    """Parse and validate max_threads configuration value.

    Args:
        max_threads_config: Raw config value (string "auto" or integer)
        default_max_threads: Default value to use

    Returns:
        Validated max threads value (capped at DEFAULT_MAX_THREADS_CAP)
    """
    if isinstance(max_threads_config, str) and max_threads_config.strip().lower() == "auto":
        max_threads = default_max_threads
        log_config_debug(f"Using automatic worker count: {max_threads} processes (based on CPU cores).")
    elif isinstance(max_threads_config, str) and max_threads_config.strip().isdigit() and int(max_threads_config) >= 1:
        max_threads = min(int(max_threads_config), DEFAULT_MAX_THREADS_CAP)
    elif isinstance(max_threads_config, int) and not isinstance(max_threads_config, bool) and max_threads_config >= 1:
        max_threads = min(max_threads_config, DEFAULT_MAX_THREADS_CAP)
        log_config_found_info(f"Using configured max_threads: {max_threads}.")
    else:
        log_invalid_config_value(["app", "max_threads"], max_threads_config, "'auto' or integer >= 1")
        max_threads = default_max_threads
    return max_threads


def get_app_max_threads(config: dict | None) -> int:
    """Return the app-level worker count from config with support for 'auto' value."""
    default_max_threads = calculate_default_max_threads()
    config_path = ["app", "max_threads"]
    if not traverse_config_path(config=config, config_path=config_path):
        log_config_debug(
            f"max_threads is not found in {config_path_to_string(config_path=config_path)}. "
            f"Using default max_threads: {default_max_threads} (auto) ...",
        )
        return default_max_threads
    return parse_max_threads_value(get_config_value(config=config, config_path=config_path), default_max_threads)


# =============================================================================
# Approximation Settings
# =============================================================================


def get_mds_dim(config: dict | None) -> int:
    """Return the MDS embedding dimension used for distance approximation."""
    return get_number(config, ["approx", "mds_dim"], DEFAULT_MDS_DIM, minimum=1)


def get_restarts(config: dict | None) -> int:
    """Return the number of local-search restarts."""
    return get_number(config, ["approx", "restarts"], DEFAULT_RESTARTS, minimum=1)


def get_max_iters(config: dict | None) -> int | None:
    """Return the local-search sweep cap, or None for the size-derived default."""
    config_path = ["approx", "max_iters"]
    if get_config_value_or_default(config=config, config_path=config_path, default=None) is None:
        return None
    value = get_number(config, config_path, 0, minimum=1)
    return value or None


def get_seed(config: dict | None) -> int:
    """Return the experiment seed (unsigned 64-bit)."""
    return get_number(config, ["approx", "seed"], DEFAULT_SEED, minimum=0) & 0xFFFFFFFFFFFFFFFF


def get_use_interior(config: dict | None) -> bool:
    """Return whether midpoint augmentation is applied before approximation."""
    return get_bool(config, ["approx", "use_interior"], True)


def get_smacof_iters(config: dict | None) -> int:
    """Return the SMACOF iteration cap."""
    return get_number(config, ["approx", "smacof_iters"], DEFAULT_SMACOF_ITERS, minimum=1)


def get_smacof_tol(config: dict | None) -> float:
    """Return the SMACOF relative stress-change tolerance."""
    return get_number(config, ["approx", "smacof_tol"], DEFAULT_SMACOF_TOL, kind=float, strictly_positive=True)


def get_sstress_iters(config: dict | None) -> int:
    """Return the S-stress descent step cap."""
    return get_number(config, ["approx", "sstress_iters"], DEFAULT_SSTRESS_ITERS, minimum=1)


def get_sstress_tol(config: dict | None) -> float:
    """Return the S-stress relative decrease tolerance."""
    return get_number(config, ["approx", "sstress_tol"], DEFAULT_SSTRESS_TOL, kind=float, strictly_positive=True)


def get_refinement(config: dict | None) -> str:
    """Return the refinement applied after classical scaling: sstress or smacof."""
    config_path = ["approx", "refinement"]
    value = get_config_value_or_default(config=config, config_path=config_path, default=DEFAULT_REFINEMENT)
    refinement = str(value).strip().lower()
    if refinement not in VALID_REFINEMENTS:
        log_invalid_config_value(config_path, value, " or ".join(VALID_REFINEMENTS))
        return DEFAULT_REFINEMENT
    return refinement


# =============================================================================
# Experiment Settings
# =============================================================================


def parse_node_range(value: Any) -> tuple[int, int]:
    """Parse ``12`` or ``"20..25"`` into an inclusive ``(nmin, nmax)`` range.

    Raises:
        ValueError: If the value is not a node count or range
    """
    if isinstance(value, int) and not isinstance(value, bool):
        return value, value
    match = _NODE_RANGE_PATTERN.match(str(value))
    if not match:
        raise ValueError(f"invalid node range '{value}', expected n or nmin..nmax")
    nmin = int(match.group(1))
    nmax = int(match.group(2)) if match.group(2) else nmin
    if nmax < nmin:
        raise ValueError(f"invalid node range '{value}', nmax < nmin")
    return nmin, nmax


def get_nodes(config: dict | None) -> tuple[int, int]:
    """Return the node-count range for classification experiments."""
    config_path = ["experiments", "nodes"]
    value = get_config_value_or_default(config=config, config_path=config_path, default=DEFAULT_NODES)
    try:
        return parse_node_range(value)
    except ValueError as e:
        log_config_error(config_path, f"{e!s}, using default {DEFAULT_NODES}")
        return DEFAULT_NODES, DEFAULT_NODES


def get_per_model(config: dict | None) -> int:
    """Return the number of networks generated per model and node count."""
    return get_number(config, ["experiments", "per_model"], DEFAULT_PER_MODEL, minimum=1)


def get_models(config: dict | None) -> list[str]:
    """Return the generator models used by the classification experiment."""
    config_path = ["experiments", "models"]
    value = get_config_value_or_default(config=config, config_path=config_path, default=list(DEFAULT_MODELS))
    if isinstance(value, str):
        value = [part.strip() for part in value.split(",") if part.strip()]
    models = [str(model).lower() for model in value] if isinstance(value, list) else []
    if not models or any(model not in VALID_MODELS for model in models):
        log_invalid_config_value(config_path, value, ", ".join(VALID_MODELS))
        return list(DEFAULT_MODELS)
    return models


def get_gammas(config: dict | None) -> list[float]:
    """Return the gamma values of the heat-map family."""
    config_path = ["experiments", "gammas"]
    value = get_config_value_or_default(config=config, config_path=config_path, default=list(DEFAULT_GAMMAS))
    gammas = [coerce_number(item, float) for item in value] if isinstance(value, list) else [None]
    if len(gammas) < 2 or any(gamma is None or gamma <= 0 for gamma in gammas):
        _log_config_warning_once(config_path, "is invalid. Using default gammas 1..10 ...")
        return [float(gamma) for gamma in DEFAULT_GAMMAS]
    return gammas


def get_sigma(config: dict | None) -> float:
    """Return the RBF kernel width of the unit-circle model."""
    return get_number(config, ["experiments", "sigma"], DEFAULT_SIGMA, kind=float, strictly_positive=True)


def get_feat_dim(config: dict | None) -> int:
    """Return the feature dimension of the correlation model."""
    return get_number(config, ["experiments", "feat_dim"], DEFAULT_FEAT_DIM, minimum=2)
