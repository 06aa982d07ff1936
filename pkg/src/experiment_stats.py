"""Experiment statistics module for summarising distance matrices."""

from collections.abc import Sequence
from dataclasses import asdict, dataclass, field

import numpy as np

from src.errors import DimensionMismatch, InsufficientData


@dataclass
class HeatmapSummary:
    """Error of an approximate distance heat map against the exact one.

    ``low_gamma_mean_abs_error`` covers pairs whose networks both violate the
    triangle inequality (gamma <= 5); it is ``None`` when there are no such
    pairs.
    """

    gammas: list[float]
    use_interior: bool
    mean_abs_error: float
    low_gamma_mean_abs_error: float | None
    max_abs_error: float

    def to_dict(self) -> dict:
        """JSON-ready representation."""
        return asdict(self)


@dataclass
class ClassificationMetrics:
    """Separation of generator models in a network-set distance matrix."""

    loo_error: float
    intra_mean: float
    inter_mean: float
    use_interior: bool
    networks: int
    per_model_intra: dict[str, float] = field(default_factory=dict)
    per_model_inter: dict[str, float] = field(default_factory=dict)

    def separated(self) -> bool:
        """Whether every model is closer to itself than to the other models.

        Returns:
            True if each model's intra mean is below its inter mean
        """
        return all(self.per_model_intra[name] < self.per_model_inter[name] for name in self.per_model_intra)

    def to_dict(self) -> dict:
        """JSON-ready representation."""
        return asdict(self)


def upper_pairs(size: int) -> tuple[np.ndarray, np.ndarray]:
    """Row and column indices of the strict upper triangle."""
    return np.triu_indices(size, k=1)


def heatmap_summary(
    approx: np.ndarray,
    exact: np.ndarray,
    gammas: Sequence[float],
    use_interior: bool,
    low_gamma_limit: float = 5.0,
) -> HeatmapSummary:
    """Compare an approximate heat map with the exact distances over all pairs."""
    if approx.shape != exact.shape or approx.shape[0] != len(gammas):
        raise DimensionMismatch(f"matrices {approx.shape} and {exact.shape} do not match {len(gammas)} gammas")
    rows, cols = upper_pairs(len(gammas))
    gaps = np.abs(approx[rows, cols] - exact[rows, cols])
    values = np.asarray(gammas, dtype=np.float64)
    low = (values[rows] <= low_gamma_limit) & (values[cols] <= low_gamma_limit)
    return HeatmapSummary(
        gammas=[float(g) for g in gammas],
        use_interior=use_interior,
        mean_abs_error=float(gaps.mean()),
        low_gamma_mean_abs_error=float(gaps[low].mean()) if low.any() else None,
        max_abs_error=float(gaps.max()),
    )


def model_distance_means(matrix: np.ndarray, labels: Sequence[str]) -> tuple[dict[str, float], dict[str, float]]:
    """Mean distance within each model and from each model to the others.

    Raises:
        InsufficientData: a model has a single network or there is one model
    """
    label_array = np.asarray(list(labels))
    rows, cols = upper_pairs(len(label_array))
    same = label_array[rows] == label_array[cols]
    intra, inter = {}, {}
    for name in sorted(set(label_array.tolist())):
        involved = (label_array[rows] == name) | (label_array[cols] == name)
        if not (involved & same).any() or not (involved & ~same).any():
            raise InsufficientData(f"model '{name}' needs two networks and another model to compare against")
        intra[name] = float(matrix[rows, cols][involved & same].mean())
        inter[name] = float(matrix[rows, cols][involved & ~same].mean())
    return intra, inter


def classification_metrics(
    matrix: np.ndarray,
    labels: Sequence[str],
    loo_error: float,
    use_interior: bool,
) -> ClassificationMetrics:
    """Collect the error rate and the intra/inter model distance means."""
    label_array = np.asarray(list(labels))
    rows, cols = upper_pairs(len(label_array))
    same = label_array[rows] == label_array[cols]
    intra, inter = model_distance_means(matrix, labels)
    return ClassificationMetrics(
        loo_error=float(loo_error),
        intra_mean=float(matrix[rows, cols][same].mean()),
        inter_mean=float(matrix[rows, cols][~same].mean()),
        use_interior=use_interior,
        networks=len(label_array),
        per_model_intra=intra,
        per_model_inter=inter,
    )
