"""Euclidean embeddings of dissimilarity matrices.

Classical (Torgerson) scaling gives the starting configuration. Two
refinements follow it: stress majorization (SMACOF) fits distances, and
S-stress descent fits squared distances. Coordinates are canonicalised so
repeated runs and plots agree: axes by descending eigenvalue, each axis
oriented so its first nonzero loading is positive.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import procrustes
from scipy.spatial.distance import pdist, squareform

from src import (
    DEFAULT_PLOT_DIM,
    DEFAULT_SMACOF_ITERS,
    DEFAULT_SMACOF_TOL,
    DEFAULT_SSTRESS_ITERS,
    DEFAULT_SSTRESS_TOL,
    get_logger,
)
from src.errors import DegenerateInput, DimensionMismatch

LOGGER = get_logger()

_LOADING_TOL = 1e-12
_INITIAL_STEP = 1e-3
_ARMIJO_SLOPE = 1e-4
_MAX_HALVINGS = 60


@dataclass(frozen=True, eq=False)
class EmbeddingResult:
    """Point coordinates (one row per point) and their fit.

    ``stress`` holds the objective of the step that produced the
    coordinates: raw stress for classical scaling and SMACOF, S-stress for
    :func:`sstress_refine`.
    """

    coords: np.ndarray = field(repr=False)
    stress: float
    stress_history: tuple[float, ...] = ()

    @property
    def dim(self) -> int:
        """Embedding dimension."""
        return int(self.coords.shape[1])


def _square(dissim) -> np.ndarray:
    matrix = np.asarray(dissim, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DimensionMismatch(f"dissimilarity matrix must be square, got shape {matrix.shape}")
    return matrix


def euclidean_distances(coords: np.ndarray) -> np.ndarray:
    """Pairwise Euclidean distance matrix of coordinate rows."""
    return squareform(pdist(coords))


def stress(coords: np.ndarray, dissim) -> float:
    """Sum over point pairs of squared gaps between embedded and target distances."""
    matrix = _square(dissim)
    if coords.shape[0] != matrix.shape[0]:
        raise DimensionMismatch(f"{coords.shape[0]} coordinate rows for a {matrix.shape[0]}-point matrix")
    upper = np.triu_indices(matrix.shape[0], k=1)
    return float(np.sum((pdist(coords) - matrix[upper]) ** 2))


def sstress(coords: np.ndarray, dissim) -> float:
    """Sum over point pairs of squared gaps between squared embedded and squared target distances."""
    matrix = _square(dissim)
    if coords.shape[0] != matrix.shape[0]:
        raise DimensionMismatch(f"{coords.shape[0]} coordinate rows for a {matrix.shape[0]}-point matrix")
    upper = np.triu_indices(matrix.shape[0], k=1)
    return float(np.sum((pdist(coords, "sqeuclidean") - matrix[upper] ** 2) ** 2))


def _canonical_signs(vectors: np.ndarray) -> np.ndarray:
    for axis in range(vectors.shape[1]):
        loadings = np.flatnonzero(np.abs(vectors[:, axis]) > _LOADING_TOL)
        if loadings.size and vectors[loadings[0], axis] < 0:
            vectors[:, axis] = -vectors[:, axis]
    return vectors


def classical_mds(dissim, k: int) -> EmbeddingResult:
    """Classical scaling into ``k`` dimensions.

    Negative eigenvalues of the double-centred Gram matrix are clamped to
    zero; when ``k`` exceeds the point count the extra axes are zero.

    Raises:
        DegenerateInput: fewer than two points
    """
    matrix = _square(dissim)
    n = matrix.shape[0]
    if n < 2:
        raise DegenerateInput("classical MDS needs at least two points")
    centering = np.eye(n) - np.full((n, n), 1.0 / n)
    gram = -0.5 * centering @ (matrix**2) @ centering
    gram = (gram + gram.T) / 2.0
    eigenvalues, eigenvectors = np.linalg.eigh(gram)
    order = np.argsort(eigenvalues, kind="stable")[::-1][:k]
    values = np.clip(eigenvalues[order], 0.0, None)
    vectors = _canonical_signs(eigenvectors[:, order].copy())
    coords = np.zeros((n, k))
    coords[:, : len(order)] = vectors * np.sqrt(values)[None, :]
    return EmbeddingResult(coords=coords, stress=stress(coords, matrix))


def _guttman_transform(coords: np.ndarray, matrix: np.ndarray) -> np.ndarray:
    distances = euclidean_distances(coords)
    ratio = np.divide(matrix, distances, out=np.zeros_like(matrix), where=distances > 0)
    b_matrix = -ratio
    np.fill_diagonal(b_matrix, 0.0)
    np.fill_diagonal(b_matrix, -b_matrix.sum(axis=1))
    return b_matrix @ coords / coords.shape[0]


def smacof_refine(
    init: EmbeddingResult,
    dissim,
    iters: int = DEFAULT_SMACOF_ITERS,
    tol: float = DEFAULT_SMACOF_TOL,
) -> EmbeddingResult:
    """Stress majorization starting from ``init``.

    Stops after ``iters`` Guttman transforms or once the relative stress
    decrease falls below ``tol``; ``stress_history`` records every iterate.

    Raises:
        DimensionMismatch: ``init`` has a different point count than ``dissim``
    """
    matrix = _square(dissim)
    if init.coords.shape[0] != matrix.shape[0]:
        raise DimensionMismatch(f"{init.coords.shape[0]} initial points for a {matrix.shape[0]}-point matrix")
    coords = init.coords.copy()
    current = stress(coords, matrix)
    history = [current]
    for _ in range(iters):
        if current <= 0.0:
            break
        candidate = _guttman_transform(coords, matrix)
        candidate_stress = stress(candidate, matrix)
        if candidate_stress > current * (1.0 + 1e-12):
            LOGGER.warning(f"SMACOF stress rose from {current!r} to {candidate_stress!r}, keeping previous iterate")
            break
        decrease = (current - candidate_stress) / current
        coords, current = candidate, min(candidate_stress, current)
        history.append(current)
        if decrease < tol:
            break
    LOGGER.debug(f"SMACOF stopped after {len(history) - 1} iterations at stress {current:.6g}")
    return EmbeddingResult(coords=coords, stress=current, stress_history=tuple(history))


def _sstress_gradient(coords: np.ndarray, squared_target: np.ndarray) -> np.ndarray:
    offsets = coords[:, None, :] - coords[None, :, :]
    residuals = np.sum(offsets**2, axis=2) - squared_target
    return 4.0 * np.einsum("ij,ijk->ik", residuals, offsets)


def sstress_refine(
    init: EmbeddingResult,
    dissim,
    iters: int = DEFAULT_SSTRESS_ITERS,
    tol: float = DEFAULT_SSTRESS_TOL,
) -> EmbeddingResult:
    """Gradient descent on S-stress starting from ``init``.

    Each step backtracks until the Armijo condition holds, then the next
    trial step doubles. Stops after ``iters`` accepted steps, once the
    relative decrease falls below ``tol``, or when no step length helps.
    ``stress_history`` records the S-stress of every iterate and never
    increases.

    Args:
        init: starting configuration, normally from :func:`classical_mds`
        dissim: target dissimilarities
        iters: accepted-step cap
        tol: relative S-stress decrease below which descent stops

    Returns:
        Refined coordinates with their S-stress

    Raises:
        DimensionMismatch: ``init`` has a different point count than ``dissim``
    """
    matrix = _square(dissim)
    if init.coords.shape[0] != matrix.shape[0]:
        raise DimensionMismatch(f"{init.coords.shape[0]} initial points for a {matrix.shape[0]}-point matrix")
    squared_target = matrix**2
    coords = init.coords.copy()
    current = sstress(coords, matrix)
    history = [current]
    step = _INITIAL_STEP
    for _ in range(iters):
        if current <= 0.0:
            break
        gradient = _sstress_gradient(coords, squared_target)
        slope = float(np.sum(gradient**2))
        if slope <= 0.0:
            break
        for _ in range(_MAX_HALVINGS):
            candidate = coords - step * gradient
            candidate_value = sstress(candidate, matrix)
            if candidate_value <= current - _ARMIJO_SLOPE * step * slope:
                break
            step /= 2.0
        else:
            break
        decrease = (current - candidate_value) / current
        coords, current = candidate, candidate_value
        history.append(current)
        step *= 2.0
        if decrease < tol:
            break
    LOGGER.debug(f"S-stress descent stopped after {len(history) - 1} steps at {current:.6g}")
    return EmbeddingResult(coords=coords, stress=current, stress_history=tuple(history))


def embed(dissim, k: int, iters: int = DEFAULT_SMACOF_ITERS, tol: float = DEFAULT_SMACOF_TOL) -> EmbeddingResult:
    """Classical scaling followed by SMACOF refinement."""
    return smacof_refine(classical_mds(dissim, k), dissim, iters, tol)


def embed_sstress(
    dissim,
    k: int,
    iters: int = DEFAULT_SSTRESS_ITERS,
    tol: float = DEFAULT_SSTRESS_TOL,
) -> EmbeddingResult:
    """Classical scaling followed by S-stress descent."""
    return sstress_refine(classical_mds(dissim, k), dissim, iters, tol)


def embed2d(dissim, iters: int = DEFAULT_SMACOF_ITERS, tol: float = DEFAULT_SMACOF_TOL) -> EmbeddingResult:
    """Planar embedding of a distance matrix, as plotted for network sets."""
    return embed(dissim, DEFAULT_PLOT_DIM, iters, tol)


def procrustes_residual(coords_a: np.ndarray, coords_b: np.ndarray) -> float:
    """Disparity left after optimally translating, scaling and rotating ``coords_b`` onto ``coords_a``.

    Raises:
        DimensionMismatch: the configurations have different shapes
        DegenerateInput: a configuration has all points coincident
    """
    if coords_a.shape != coords_b.shape:
        raise DimensionMismatch(f"cannot align shapes {coords_a.shape} and {coords_b.shape}")
    try:
        _, _, disparity = procrustes(coords_a, coords_b)
    except ValueError as e:
        raise DegenerateInput(f"procrustes alignment failed: {e!s}") from e
    return float(disparity)
