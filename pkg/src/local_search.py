"""Multistart local search for the partial embedding objective.

Minimises ``max |dx[i, j] - dy[phi(i), phi(j)]|`` over maps ``phi``.
:func:`local_search_dPE` reassigns one source point at a time by
first-improvement descent. :func:`local_search_node_map` searches maps of
the original nodes only and carries every sample along by push-forward,
taking the best target for a node on each move. In both, moves that keep
the bottleneck unchanged are accepted when they lower the total mismatch,
so descent can cross plateaus; every accepted move strictly decreases
``(bottleneck, total)`` and the search terminates.
"""

from collections.abc import Sequence

import numpy as np

from src import get_logger
from src.approx_config import ApproxConfig
from src.errors import DimensionMismatch
from src.network import NodeMapping
from src.rng import make_rng

LOGGER = get_logger()

_IMPROVEMENT_TOL = 1e-12


class _Descent:
    """Error matrix of one candidate map, updated in place as points move."""

    def __init__(self, dx: np.ndarray, dy: np.ndarray, assignment: np.ndarray, allowed: list[np.ndarray]):
        self.dx = dx
        self.dy = dy
        self.allowed = allowed
        self.assignment = assignment.copy()
        self.errors = np.abs(dx - dy[np.ix_(self.assignment, self.assignment)])
        self.bottleneck = float(self.errors.max())
        self.total = float(self.errors.sum())

    def _excluding(self, i: int) -> float:
        """Largest error among pairs not involving point ``i``."""
        if self.errors[i].max() < self.bottleneck:
            return self.bottleneck
        keep = np.ones(self.errors.shape[0], dtype=bool)
        keep[i] = False
        return float(self.errors[np.ix_(keep, keep)].max()) if keep.any() else 0.0

    def try_point(self, i: int) -> bool:
        """Move point ``i`` to the first target that improves the objective."""
        targets = self.allowed[i]
        columns = np.abs(self.dx[:, i][:, None] - self.dy[self.assignment][:, targets])
        columns[i, :] = 0.0
        rest = self._excluding(i)
        bottlenecks = np.maximum(rest, columns.max(axis=0))
        totals = self.total - 2.0 * self.errors[:, i].sum() + 2.0 * columns.sum(axis=0)
        better = (bottlenecks < self.bottleneck - _IMPROVEMENT_TOL) | (
            (bottlenecks <= self.bottleneck) & (totals < self.total - _IMPROVEMENT_TOL)
        )
        better &= targets != self.assignment[i]
        hits = np.flatnonzero(better)
        if hits.size == 0:
            return False
        choice = hits[0]
        self.assignment[i] = targets[choice]
        self.errors[:, i] = columns[:, choice]
        self.errors[i, :] = columns[:, choice]
        self.bottleneck = float(self.errors.max())
        self.total = float(self.errors.sum())
        return True

    def run(self, sweeps: int) -> None:
        """Sweep over all points until no move helps or the cap is hit."""
        for _ in range(sweeps):
            moved = False
            for i in range(self.assignment.size):
                moved |= self.try_point(i)
            if not moved:
                return


class _NodeMapDescent:
    """Node map, its push-forward image of every sample, and the sample error matrix.

    ``endpoints[p]`` holds the two nodes sample ``p`` sits between (a vertex
    repeats its own index); ``image_table[a, b]`` is the target sample at the
    midpoint of ``a`` and ``b``, or ``a`` itself when ``a == b``.
    """

    def __init__(self, dx: np.ndarray, dy: np.ndarray, endpoints: np.ndarray, image_table: np.ndarray, assignment: np.ndarray):
        self.dx = dx
        self.dy = dy
        self.endpoints = endpoints
        self.image_table = image_table
        self.assignment = assignment.copy()
        self.touching = [np.flatnonzero((endpoints == i).any(axis=1)) for i in range(assignment.size)]
        self.images = image_table[self.assignment[endpoints[:, 0]], self.assignment[endpoints[:, 1]]]
        self.errors = np.abs(dx - dy[np.ix_(self.images, self.images)])
        self.bottleneck = float(self.errors.max())
        self.total = float(self.errors.sum())

    def try_node(self, i: int) -> bool:
        """Move node ``i`` to the target with the lowest ``(bottleneck, total)`` if that improves on the current map."""
        targets = np.flatnonzero(np.arange(self.image_table.shape[0]) != self.assignment[i])
        if targets.size == 0:
            return False
        rows = self.touching[i]
        keep = np.ones(self.images.size, dtype=bool)
        keep[rows] = False
        kept = self.errors[np.ix_(keep, keep)]
        rest = float(kept.max()) if kept.size else 0.0

        trial = np.repeat(self.assignment[None, :], targets.size, axis=0)
        trial[:, i] = targets
        images = np.repeat(self.images[None, :], targets.size, axis=0)
        images[:, rows] = self.image_table[trial[:, self.endpoints[rows, 0]], trial[:, self.endpoints[rows, 1]]]
        block = np.abs(self.dx[rows][None, :, :] - self.dy[images[:, rows][:, :, None], images[:, None, :]])
        bottlenecks = np.maximum(rest, block.max(axis=(1, 2)))
        totals = float(kept.sum()) + 2.0 * block.sum(axis=(1, 2)) - block[:, :, rows].sum(axis=(1, 2))

        choice = int(np.lexsort((totals, bottlenecks))[0])
        if not (
            bottlenecks[choice] < self.bottleneck - _IMPROVEMENT_TOL
            or (bottlenecks[choice] <= self.bottleneck and totals[choice] < self.total - _IMPROVEMENT_TOL)
        ):
            return False
        self.assignment[i] = targets[choice]
        self.images[rows] = images[choice, rows]
        self.errors[rows, :] = block[choice]
        self.errors[:, rows] = block[choice].T
        self.bottleneck = float(self.errors.max())
        self.total = float(self.errors.sum())
        return True

    def run(self, sweeps: int) -> None:
        """Sweep over all nodes until no move helps or the cap is hit."""
        for _ in range(sweeps):
            moved = False
            for i in range(self.assignment.size):
                moved |= self.try_node(i)
            if not moved:
                return


def _identity_like(sources: int, targets: int, restricted_sources: int, restricted_targets: int) -> np.ndarray:
    assignment = np.arange(sources) % targets
    assignment[:restricted_sources] = np.arange(restricted_sources) % restricted_targets
    return assignment


def _random_start(rng: np.random.Generator, sources: int, targets: int, restricted_sources: int, restricted_targets: int) -> np.ndarray:
    assignment = rng.integers(0, targets, size=sources)
    assignment[:restricted_sources] = rng.integers(0, restricted_targets, size=restricted_sources)
    return assignment.astype(np.intp)


def local_search_dPE(
    dissim_x: np.ndarray,
    dissim_y: np.ndarray,
    restricted_sources: int,
    cfg: ApproxConfig,
    restricted_targets: int | None = None,
    initial: Sequence[int] | None = None,
) -> tuple[float, NodeMapping]:
    """Best map found from ``cfg.restarts`` random starts plus one seeded start.

    Args:
        dissim_x: source dissimilarities
        dissim_y: target dissimilarities
        restricted_sources: the first this many source points may only map
            into the first ``restricted_targets`` target points
        cfg: restarts, sweep cap and seed
        restricted_targets: size of the allowed target block (default: all)
        initial: seeded start, e.g. a push-forward map; defaults to an
            identity-like map

    Returns:
        Bottleneck value and the map attaining it; the seeded start has index
        zero and ties keep the lowest start index

    Raises:
        DimensionMismatch: restriction sizes exceed the point counts
    """
    dx = np.asarray(dissim_x, dtype=np.float64)
    dy = np.asarray(dissim_y, dtype=np.float64)
    sources, targets = dx.shape[0], dy.shape[0]
    restricted_targets = targets if restricted_targets is None else restricted_targets
    if not (0 <= restricted_sources <= sources and 1 <= restricted_targets <= targets):
        raise DimensionMismatch(
            f"restriction {restricted_sources}->{restricted_targets} does not fit {sources}->{targets} points"
        )
    if sources == 1:
        return 0.0, NodeMapping((0,))

    all_targets = np.arange(targets)
    allowed = [all_targets[:restricted_targets] if i < restricted_sources else all_targets for i in range(sources)]
    sweeps = cfg.sweeps_for(sources)

    if initial is None:
        starts = [_identity_like(sources, targets, restricted_sources, restricted_targets)]
    else:
        starts = [np.asarray(initial, dtype=np.intp)]
    best_value, best_assignment = np.inf, starts[0]
    for index in range(cfg.restarts + 1):
        if index > 0:
            rng = make_rng(cfg.seed, "restart", index)
            starts.append(_random_start(rng, sources, targets, restricted_sources, restricted_targets))
        descent = _Descent(dx, dy, starts[index], allowed)
        descent.run(sweeps)
        LOGGER.debug(f"start {index}: bottleneck {descent.bottleneck:.6g}")
        if descent.bottleneck < best_value:
            best_value, best_assignment = descent.bottleneck, descent.assignment.copy()
    return float(best_value), NodeMapping(tuple(int(k) for k in best_assignment))


def local_search_node_map(
    dissim_x: np.ndarray,
    dissim_y: np.ndarray,
    endpoints: np.ndarray,
    image_table: np.ndarray,
    cfg: ApproxConfig,
    initial: Sequence[int] | None = None,
) -> tuple[float, NodeMapping]:
    """Best node map found when every sample follows its endpoints by push-forward.

    Source samples are the original nodes and points between two of them;
    a map of the original nodes carries each sample to the target sample
    between the images of its endpoints. Descent reassigns one node at a
    time, moving all samples that touch it, and takes the best target for
    that node.

    Args:
        dissim_x: source sample dissimilarities
        dissim_y: target sample dissimilarities
        endpoints: ``(samples, 2)`` node pair of every source sample
        image_table: target sample index for every ordered node pair
        cfg: restarts, sweep cap and seed
        initial: seeded node map; defaults to an identity-like map

    Returns:
        Bottleneck over all sample pairs and the node map attaining it; ties
        keep the lowest start index

    Raises:
        DimensionMismatch: tables do not match the matrices
    """
    dx = np.asarray(dissim_x, dtype=np.float64)
    dy = np.asarray(dissim_y, dtype=np.float64)
    endpoints = np.asarray(endpoints, dtype=np.intp)
    image_table = np.asarray(image_table, dtype=np.intp)
    nodes, targets = int(endpoints.max()) + 1, image_table.shape[0]
    if endpoints.shape != (dx.shape[0], 2) or image_table.shape != (targets, targets) or image_table.max() >= dy.shape[0]:
        raise DimensionMismatch(f"node tables do not fit {dx.shape[0]} source and {dy.shape[0]} target samples")

    starts = [np.arange(nodes) % targets if initial is None else np.asarray(initial, dtype=np.intp)]
    sweeps = cfg.sweeps_for(nodes)
    best_value, best_assignment = np.inf, starts[0]
    for index in range(cfg.restarts + 1):
        if index > 0:
            starts.append(make_rng(cfg.seed, "node-map restart", index).integers(0, targets, size=nodes).astype(np.intp))
        descent = _NodeMapDescent(dx, dy, endpoints, image_table, starts[index])
        descent.run(sweeps)
        LOGGER.debug(f"node-map start {index}: bottleneck {descent.bottleneck:.6g}")
        if descent.bottleneck < best_value:
            best_value, best_assignment = descent.bottleneck, descent.assignment.copy()
    return float(best_value), NodeMapping(tuple(int(k) for k in best_assignment))
