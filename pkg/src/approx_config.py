"""Approximation pipeline settings.

Collects the ``approx`` section of the config into one immutable value that
is passed through the embedding, search and pairwise-matrix stages.
"""

from dataclasses import dataclass, replace
from typing import Any

from src import (
    DEFAULT_MDS_DIM,
    DEFAULT_REFINEMENT,
    DEFAULT_RESTARTS,
    DEFAULT_SEED,
    DEFAULT_SMACOF_ITERS,
    DEFAULT_SMACOF_TOL,
    DEFAULT_SSTRESS_ITERS,
    DEFAULT_SSTRESS_TOL,
    config_parser,
    get_logger,
)
from src.errors import ConfigInfeasible

LOGGER = get_logger()

REFINEMENT_SMACOF = "smacof"


@dataclass(frozen=True)
class ApproxConfig:
    """Settings of one approximation run.

    ``max_iters`` caps local-search sweeps per start; ``None`` means ten
    sweeps per source point. ``refinement`` picks what follows classical
    scaling of each network: S-stress descent fits squared distances,
    SMACOF fits distances.
    """

    use_interior: bool = True
    mds_dim: int = DEFAULT_MDS_DIM
    restarts: int = DEFAULT_RESTARTS
    max_iters: int | None = None
    seed: int = DEFAULT_SEED
    refinement: str = DEFAULT_REFINEMENT
    smacof_iters: int = DEFAULT_SMACOF_ITERS
    smacof_tol: float = DEFAULT_SMACOF_TOL
    sstress_iters: int = DEFAULT_SSTRESS_ITERS
    sstress_tol: float = DEFAULT_SSTRESS_TOL

    def __post_init__(self):
        """Reject settings the pipeline cannot run."""
        if self.mds_dim < 1:
            raise ConfigInfeasible(f"mds_dim must be >= 1, got {self.mds_dim}")
        if self.restarts < 1:
            raise ConfigInfeasible(f"restarts must be >= 1, got {self.restarts}")
        if self.max_iters is not None and self.max_iters < 1:
            raise ConfigInfeasible(f"max_iters must be >= 1, got {self.max_iters}")
        if self.refinement not in config_parser.VALID_REFINEMENTS:
            raise ConfigInfeasible(f"refinement must be one of {', '.join(config_parser.VALID_REFINEMENTS)}, got {self.refinement!r}")
        if self.smacof_iters < 0 or not self.smacof_tol > 0:
            raise ConfigInfeasible("smacof_iters must be >= 0 and smacof_tol > 0")
        if self.sstress_iters < 0 or not self.sstress_tol > 0:
            raise ConfigInfeasible("sstress_iters must be >= 0 and sstress_tol > 0")
        if not 0 <= self.seed < 1 << 64:
            raise ConfigInfeasible(f"seed must be an unsigned 64-bit integer, got {self.seed}")

    def sweeps_for(self, points: int) -> int:
        """Sweep cap for a search over ``points`` source points."""
        return self.max_iters if self.max_iters is not None else 10 * max(points, 1)

    def with_seed(self, seed: int) -> "ApproxConfig":
        """Copy with a different seed."""
        return replace(self, seed=seed)


def get_approx_config(config: Any, **overrides) -> ApproxConfig:
    """Build settings from the config file; keyword overrides win when not ``None``.

    Args:
        config: Configuration dictionary (or ``None``)
        overrides: command-line values keyed by field name

    Returns:
        Validated approximation settings
    """
    settings = {
        "use_interior": config_parser.get_use_interior(config),
        "mds_dim": config_parser.get_mds_dim(config),
        "restarts": config_parser.get_restarts(config),
        "max_iters": config_parser.get_max_iters(config),
        "seed": config_parser.get_seed(config),
        "refinement": config_parser.get_refinement(config),
        "smacof_iters": config_parser.get_smacof_iters(config),
        "smacof_tol": config_parser.get_smacof_tol(config),
        "sstress_iters": config_parser.get_sstress_iters(config),
        "sstress_tol": config_parser.get_sstress_tol(config),
    }
    settings.update({key: value for key, value in overrides.items() if value is not None})
    LOGGER.debug(f"approximation settings: {settings}")
    return ApproxConfig(**settings)
