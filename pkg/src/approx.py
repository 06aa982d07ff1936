"""Approximate embedding distances for networks beyond exhaustive reach.

Each network (optionally augmented with its edge midpoints) is embedded in
Euclidean space by classical scaling and a refinement, S-stress descent
unless configured otherwise. The partial embedding objective is then
searched between the embedded point sets: original nodes map to original
nodes, and with interiors every midpoint follows its endpoints.
"""

import multiprocessing
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field

import numpy as np

from src import DEFAULT_TOLERANCE, get_logger
from src.approx_config import REFINEMENT_SMACOF, ApproxConfig
from src.embedding import EmbeddingResult, embed, embed2d, embed_sstress, euclidean_distances
from src.errors import DegenerateInput, DimensionMismatch, InsufficientData
from src.local_search import local_search_dPE, local_search_node_map
from src.network import Network
from src.rng import derive_seed
from src.sampled_space import SampledSpace, midpoint_augment

LOGGER = get_logger()


@dataclass(frozen=True, eq=False)
class PreparedNetwork:
    """A network's embedded point set, ready for pairwise comparison.

    With interiors, ``endpoints`` gives the node pair of every sample and
    ``image_table`` the sample between any two nodes, so node maps extend
    to samples by push-forward.
    """

    network: Network
    space: SampledSpace | None
    distances: np.ndarray = field(repr=False)
    endpoints: np.ndarray | None = field(default=None, repr=False)
    image_table: np.ndarray | None = field(default=None, repr=False)

    @property
    def base_size(self) -> int:
        """Number of original nodes (they come first in ``distances``)."""
        return self.network.size


def _node_tables(space: SampledSpace) -> tuple[np.ndarray, np.ndarray]:
    """Endpoint pairs of every sample and the midpoint index of every node pair."""
    endpoints = np.empty((space.size, 2), dtype=np.intp)
    table = np.full((space.base_size, space.base_size), -1, dtype=np.intp)
    np.fill_diagonal(table, np.arange(space.base_size))
    for index, point in enumerate(space.points):
        support = np.flatnonzero(point.weights > DEFAULT_TOLERANCE)
        endpoints[index] = (support[0], support[-1])
        if support.size == 2:
            table[support[0], support[1]] = table[support[1], support[0]] = index
    return endpoints, table


def _embed(dissim: np.ndarray, cfg: ApproxConfig) -> EmbeddingResult:
    if cfg.refinement == REFINEMENT_SMACOF:
        return embed(dissim, cfg.mds_dim, cfg.smacof_iters, cfg.smacof_tol)
    return embed_sstress(dissim, cfg.mds_dim, cfg.sstress_iters, cfg.sstress_tol)


def prepare(net: Network, cfg: ApproxConfig) -> PreparedNetwork:
    """Augment (per ``cfg.use_interior``) and embed ``net`` at ``cfg.mds_dim``."""
    if not (cfg.use_interior and net.size >= 2):
        if net.size < 2:
            return PreparedNetwork(network=net, space=None, distances=np.zeros((1, 1)))
        result = _embed(net.dissim, cfg)
        LOGGER.debug(f"embedded {net.size} nodes, {cfg.refinement} {result.stress:.6g}")
        return PreparedNetwork(network=net, space=None, distances=euclidean_distances(result.coords))
    space = midpoint_augment(net)
    result = _embed(space.dissim, cfg)
    LOGGER.debug(f"embedded {space.size} samples, {cfg.refinement} {result.stress:.6g}")
    endpoints, image_table = _node_tables(space)
    return PreparedNetwork(
        network=net,
        space=space,
        distances=euclidean_distances(result.coords),
        endpoints=endpoints,
        image_table=image_table,
    )


def approx_between(source: PreparedNetwork, target: PreparedNetwork, cfg: ApproxConfig) -> float:
    """Approximate partial embedding distance between two prepared networks.

    Without interiors every point is searched directly. With interiors on
    both sides the search runs over maps of the original nodes, each
    extended to the edge midpoints by push-forward.
    """
    if source.endpoints is None or target.image_table is None:
        value, _ = local_search_dPE(
            source.distances,
            target.distances,
            source.base_size,
            cfg,
            restricted_targets=target.base_size,
        )
        return value
    value, _ = local_search_node_map(source.distances, target.distances, source.endpoints, target.image_table, cfg)
    return value


def approx_dPE(a: Network, b: Network, cfg: ApproxConfig) -> float:
    """Approximate partial embedding distance from ``a`` to ``b``."""
    return approx_between(prepare(a, cfg), prepare(b, cfg), cfg)


def approx_dEE(a: Network, b: Network, cfg: ApproxConfig) -> float:
    """Approximate embedding distance: the larger direction of :func:`approx_dPE`."""
    prepared_a, prepared_b = prepare(a, cfg), prepare(b, cfg)
    return max(approx_between(prepared_a, prepared_b, cfg), approx_between(prepared_b, prepared_a, cfg))


def _pair_value(first: PreparedNetwork, second: PreparedNetwork, i: int, j: int, cfg: ApproxConfig) -> float:
    pair_cfg = cfg.with_seed(derive_seed(cfg.seed, i, j))
    return max(approx_between(first, second, pair_cfg), approx_between(second, first, pair_cfg))


_WORKER_CFG: ApproxConfig | None = None


def _init_pair_worker(cfg: ApproxConfig) -> None:
    """Keep the run settings as a process-local global."""
    global _WORKER_CFG
    _WORKER_CFG = cfg


def _prepare_task(net: Network) -> PreparedNetwork:
    if _WORKER_CFG is None:
        raise RuntimeError("pair worker not initialized")
    return prepare(net, _WORKER_CFG)


def _pair_task(i: int, j: int, first: PreparedNetwork, second: PreparedNetwork) -> tuple[int, int, float]:
    if _WORKER_CFG is None:
        raise RuntimeError("pair worker not initialized")
    return i, j, _pair_value(first, second, i, j, _WORKER_CFG)


def pairwise_matrix(networks: Sequence[Network], cfg: ApproxConfig, max_workers: int = 1) -> np.ndarray:
    """Symmetric matrix of :func:`approx_dEE` over all pairs.

    With more than one worker, networks are prepared and pairs compared in
    spawned worker processes. Every pair runs with its own seed derived
    from ``(cfg.seed, i, j)``, so the matrix does not depend on
    ``max_workers`` or scheduling.

    Raises:
        DegenerateInput: fewer than two networks
    """
    if len(networks) < 2:
        raise DegenerateInput("a pairwise matrix needs at least two networks")
    count = len(networks)
    pairs = [(i, j) for i in range(count) for j in range(i + 1, count)]
    workers = max(1, min(max_workers, len(pairs)))
    LOGGER.info(f"Computing {len(pairs)} approximate distances with {workers} worker processes...")
    matrix = np.zeros((count, count))
    if workers == 1:
        prepared = [prepare(net, cfg) for net in networks]
        for i, j in pairs:
            matrix[i, j] = matrix[j, i] = _pair_value(prepared[i], prepared[j], i, j, cfg)
    else:
        with ProcessPoolExecutor(
            max_workers=workers,
            mp_context=multiprocessing.get_context("spawn"),
            initializer=_init_pair_worker,
            initargs=(cfg,),
        ) as executor:
            prepared = list(executor.map(_prepare_task, networks))
            futures = [executor.submit(_pair_task, i, j, prepared[i], prepared[j]) for i, j in pairs]
            for future in as_completed(futures):
                i, j, value = future.result()
                matrix[i, j] = matrix[j, i] = value
    LOGGER.info("Pairwise distance matrix complete")
    return matrix


def nearest_centroid_eval(data: np.ndarray, labels: Sequence[str], precomputed: bool = False) -> float:
    """Leave-one-out nearest-centroid error rate.

    Args:
        data: one coordinate row per sample, or a distance matrix when
            ``precomputed`` (it is embedded in the plane first)
        labels: class of each sample
        precomputed: treat ``data`` as a distance matrix

    Raises:
        InsufficientData: fewer than two classes or a class with one sample
        DimensionMismatch: label count differs from the sample count
    """
    coords = embed2d(data).coords if precomputed else np.asarray(data, dtype=np.float64)
    labels = list(labels)
    if coords.shape[0] != len(labels):
        raise DimensionMismatch(f"{len(labels)} labels for {coords.shape[0]} samples")
    classes = sorted(set(labels))
    label_array = np.asarray(labels)
    if len(classes) < 2 or any(np.count_nonzero(label_array == name) < 2 for name in classes):
        raise InsufficientData("need at least two classes with at least two samples each")

    errors = 0
    for k in range(coords.shape[0]):
        keep = np.arange(coords.shape[0]) != k
        centroids = np.vstack([coords[keep & (label_array == name)].mean(axis=0) for name in classes])
        predicted = classes[int(np.argmin(np.linalg.norm(centroids - coords[k], axis=1)))]
        errors += predicted != labels[k]
    return errors / coords.shape[0]
