"""Sampled induced spaces.

A sampled space keeps a network's original nodes and adds a finite set of
interior points, with the induced semimetric between every pair. Midpoint
augmentation (all edge midpoints) is the canonical sampling rule; any two
midpoint-augmented networks form a regular sample pair.
"""

import itertools
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from src import DEFAULT_REGULAR_PAIR_LIMIT, DEFAULT_TOLERANCE, get_logger
from src.errors import DegenerateInput, DimensionMismatch, DuplicatePoint, TooLarge
from src.interior import BarycentricPoint, interior_distance
from src.network import Network, validate_network

LOGGER = get_logger()


@dataclass(frozen=True, eq=False)
class SampledSpace:
    """Original vertices followed by interior samples, with induced dissimilarities."""

    base: Network
    points: tuple[BarycentricPoint, ...]
    labels: tuple[str, ...]
    dissim: np.ndarray = field(repr=False)

    @property
    def size(self) -> int:
        """Number of points, originals included."""
        return len(self.points)

    @property
    def base_size(self) -> int:
        """Number of original nodes."""
        return self.base.size

    def point_matrix(self) -> np.ndarray:
        """Barycentric coordinates stacked row-wise, shape ``(size, base_size)``."""
        return np.vstack([point.weights for point in self.points])

    def find(self, point: BarycentricPoint, tol: float = DEFAULT_TOLERANCE) -> int | None:
        """Index of the sample coinciding with ``point``, if any."""
        for index, candidate in enumerate(self.points):
            if candidate.close_to(point, tol):
                return index
        return None

    def as_network(self) -> Network:
        """The sampled space viewed as a network over its points."""
        return validate_network(self.dissim, self.labels)

    def to_dict(self) -> dict:
        """JSON-ready representation: the network format plus barycentric points."""
        return {
            "labels": list(self.labels),
            "dissim": self.dissim.tolist(),
            "points": [point.to_list() for point in self.points],
        }


def _mass_label(mass: float) -> str:
    fraction = Fraction(mass).limit_denominator(1000)
    return str(fraction) if abs(float(fraction) - mass) <= DEFAULT_TOLERANCE else f"{mass:.6g}"


def point_label(base: Network, point: BarycentricPoint) -> str:
    """Human-readable name: the node label, ``mid(a,b)``, or ``mix(a:1/3,b:2/3)``."""
    vertex = point.vertex_index()
    if vertex is not None:
        return base.labels[vertex]
    support = point.support()
    if len(support) == 2 and all(abs(point.weights[k] - 0.5) <= DEFAULT_TOLERANCE for k in support):
        return f"mid({base.labels[support[0]]},{base.labels[support[1]]})"
    parts = ",".join(f"{base.labels[k]}:{_mass_label(float(point.weights[k]))}" for k in support)
    return f"mix({parts})"


def induced_matrix(net: Network, points: Sequence[BarycentricPoint]) -> np.ndarray:
    """Induced semimetric between every pair of ``points``.

    Each entry is computed once for ``u < v`` and mirrored, so the result is
    exactly symmetric and independent of evaluation order.
    """
    count = len(points)
    matrix = np.zeros((count, count))
    for u in range(count):
        for v in range(u + 1, count):
            matrix[u, v] = matrix[v, u] = interior_distance(net, points[u], points[v])
    matrix.flags.writeable = False
    return matrix


def augment_with(
    net: Network,
    extra: Sequence[BarycentricPoint],
    tol: float = DEFAULT_TOLERANCE,
) -> SampledSpace:
    """Sampled space over the original nodes plus ``extra`` interior points.

    Raises:
        DimensionMismatch: an extra point is not sized for ``net``
        DuplicatePoint: an extra point repeats an original node or another extra point
    """
    points = [BarycentricPoint.vertex(net.size, i) for i in range(net.size)]
    for point in extra:
        if point.size != net.size:
            raise DimensionMismatch(f"point has {point.size} coordinates, network has {net.size} nodes")
        for index, existing in enumerate(points):
            if existing.close_to(point, tol):
                raise DuplicatePoint(f"{point_label(net, point)} duplicates point {index} ({point_label(net, existing)})")
        points.append(point)
    labels = tuple(point_label(net, point) for point in points)
    LOGGER.debug(f"augmenting {net.size}-node network with {len(extra)} interior points")
    return SampledSpace(base=net, points=tuple(points), labels=labels, dissim=induced_matrix(net, points))


def midpoints(n: int) -> list[BarycentricPoint]:
    """All ``n(n-1)/2`` edge midpoints in lexicographic pair order."""
    return [BarycentricPoint.midpoint(n, i, j) for i, j in itertools.combinations(range(n), 2)]


def one_third_points(n: int, include_triples: bool = True) -> list[BarycentricPoint]:
    """Interior points whose coordinates are multiples of one third.

    Every ordered pair ``(i, j)`` contributes ``1/3 i + 2/3 j``; with
    ``include_triples`` every 3-subset contributes its centroid.
    """
    third = Fraction(1, 3)
    points = [
        BarycentricPoint.combination(n, {i: third, j: 1 - third})
        for i, j in itertools.permutations(range(n), 2)
    ]
    if include_triples:
        points.extend(
            BarycentricPoint.combination(n, dict.fromkeys(triple, third))
            for triple in itertools.combinations(range(n), 3)
        )
    return points


def midpoint_augment(net: Network) -> SampledSpace:
    """Original nodes plus every edge midpoint.

    Raises:
        DegenerateInput: fewer than two nodes
    """
    if net.size < 2:
        raise DegenerateInput("midpoint augmentation needs at least two nodes")
    return augment_with(net, midpoints(net.size))


def _images(points: np.ndarray, assignment: Sequence[int], target_size: int) -> np.ndarray:
    indicator = np.zeros((points.shape[1], target_size))
    indicator[np.arange(points.shape[1]), list(assignment)] = 1.0
    return points @ indicator


def _closed_under_maps(source: SampledSpace, target: SampledSpace, tol: float) -> bool:
    points = source.point_matrix()
    targets = target.point_matrix()
    for assignment in itertools.product(range(target.base_size), repeat=source.base_size):
        images = _images(points, assignment, target.base_size)
        gaps = np.max(np.abs(images[:, None, :] - targets[None, :, :]), axis=2)
        if np.any(gaps.min(axis=1) > tol):
            LOGGER.debug(f"push-forward under {assignment} leaves the target sample set")
            return False
    return True


def is_regular_sample_pair(qx: SampledSpace, qy: SampledSpace, tol: float = DEFAULT_TOLERANCE) -> bool:
    """Whether every node map in either direction pushes each sample onto a sample.

    Raises:
        TooLarge: either base network has more than ``DEFAULT_REGULAR_PAIR_LIMIT`` nodes
    """
    largest = max(qx.base_size, qy.base_size)
    if largest > DEFAULT_REGULAR_PAIR_LIMIT:
        raise TooLarge("is_regular_sample_pair node count", largest, DEFAULT_REGULAR_PAIR_LIMIT)
    return _closed_under_maps(qx, qy, tol) and _closed_under_maps(qy, qx, tol)
