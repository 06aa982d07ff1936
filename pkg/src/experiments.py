"""Experiment orchestration: gamma-family heat maps and model classification."""

import os
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from src import get_logger
from src.approx import nearest_centroid_eval, pairwise_matrix
from src.approx_config import ApproxConfig
from src.embedding import embed2d
from src.exact import d_EE_exact
from src.experiment_stats import ClassificationMetrics, HeatmapSummary, classification_metrics, heatmap_summary
from src.filesystem_utils import ensure_directory_exists
from src.generators import gamma_family, generate_model_set
from src.network import Network
from src.network_io import save_embedding_csv, save_json, save_matrix_csv

LOGGER = get_logger()

DISTANCES_FILE_NAME = "distances.csv"
EMBEDDING_FILE_NAME = "embedding.csv"
METRICS_FILE_NAME = "metrics.json"


@dataclass
class HeatmapResult:
    """Matrices and files produced by a heat-map run."""

    approx: np.ndarray
    exact: np.ndarray
    summary: HeatmapSummary
    paths: list[str]


@dataclass
class ClassificationResult:
    """Matrix, embedding and metrics produced by a classification run."""

    names: list[str]
    models: list[str]
    matrix: np.ndarray
    coords: np.ndarray
    metrics: ClassificationMetrics
    paths: list[str]


def gamma_label(gamma: float) -> str:
    """Row/column label of a gamma network in heat-map tables."""
    return f"gamma={gamma:g}"


def companion_paths(out_path: str) -> tuple[str, str]:
    """Exact-matrix CSV and summary JSON written next to a heat-map CSV."""
    stem, _ = os.path.splitext(out_path)
    return f"{stem}_exact.csv", f"{stem}_summary.json"


def exact_dEE_matrix(networks: Sequence) -> np.ndarray:
    """Exact embedding distances over all pairs."""
    count = len(networks)
    matrix = np.zeros((count, count))
    for i in range(count):
        for j in range(i + 1, count):
            matrix[i, j] = matrix[j, i] = d_EE_exact(networks[i], networks[j])
    return matrix


def run_heatmap(gammas: Sequence[float], cfg: ApproxConfig, out_path: str, max_workers: int = 1) -> HeatmapResult:
    """Approximate and exact distance heat maps over the gamma family.

    Writes the approximate matrix to ``out_path`` and, next to it, the exact
    matrix (``*_exact.csv``) and the error summary (``*_summary.json``).
    """
    LOGGER.info(f"Heat map over {len(gammas)} gamma networks (interior {'on' if cfg.use_interior else 'off'})")
    networks = gamma_family(gammas)
    labels = [gamma_label(gamma) for gamma in gammas]
    approx = pairwise_matrix(networks, cfg, max_workers)
    exact = exact_dEE_matrix(networks)
    summary = heatmap_summary(approx, exact, gammas, cfg.use_interior)
    exact_path, summary_path = companion_paths(out_path)
    paths = [
        save_matrix_csv(labels, approx, out_path),
        save_matrix_csv(labels, exact, exact_path),
        save_json(summary.to_dict(), summary_path),
    ]
    LOGGER.info(f"Heat map mean absolute error {summary.mean_abs_error:.6g}")
    return HeatmapResult(approx=approx, exact=exact, summary=summary, paths=paths)


def classify_networks(
    networks: Sequence[Network],
    labels: Sequence[str],
    cfg: ApproxConfig,
    max_workers: int = 1,
) -> tuple[np.ndarray, np.ndarray, float]:
    """Pairwise matrix, its planar embedding and the leave-one-out error of ``labels``."""
    matrix = pairwise_matrix(networks, cfg, max_workers)
    coords = embed2d(matrix, cfg.smacof_iters, cfg.smacof_tol).coords
    return matrix, coords, nearest_centroid_eval(coords, labels)


def run_classify(
    models: Sequence[str],
    per_model: int,
    nodes: tuple[int, int],
    cfg: ApproxConfig,
    out_dir: str,
    max_workers: int = 1,
    sigma: float | None = None,
    feat_dim: int | None = None,
) -> ClassificationResult:
    """Generate model networks, compare them pairwise and evaluate separability."""
    extra = {key: value for key, value in {"sigma": sigma, "feat_dim": feat_dim}.items() if value is not None}
    generated = generate_model_set(models, per_model, nodes, cfg.seed, **extra)
    names = [item.name for item in generated]
    labels = [item.model for item in generated]
    matrix, coords, loo_error = classify_networks([item.network for item in generated], labels, cfg, max_workers)
    metrics = classification_metrics(matrix, labels, loo_error, cfg.use_interior)

    ensure_directory_exists(out_dir)
    paths = [
        save_matrix_csv(names, matrix, os.path.join(out_dir, DISTANCES_FILE_NAME)),
        save_embedding_csv(names, coords, labels, os.path.join(out_dir, EMBEDDING_FILE_NAME)),
        save_json(metrics.to_dict(), os.path.join(out_dir, METRICS_FILE_NAME)),
    ]
    LOGGER.info(f"Classification leave-one-out error {loo_error:.4f} over {len(names)} networks")
    return ClassificationResult(
        names=names,
        models=labels,
        matrix=matrix,
        coords=coords,
        metrics=metrics,
        paths=paths,
    )
