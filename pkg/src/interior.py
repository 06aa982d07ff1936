"""Interior points of a network and the induced semimetric.

A barycentric point is a mass tuple over the network's nodes. The distance
between two points is the weighted cost of the minimal transformation
turning one tuple into the other: first the total transformed mass is
minimised, then, among those optimal plans, the cost weighted by the
network's dissimilarities.

Stage-one optima are exactly the direct shipments from nodes holding excess
mass to nodes lacking it (any intermediate hop adds to the total), so the
second stage is a balanced transportation problem between the excess and
deficit nodes.
"""

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from src import DEFAULT_TOLERANCE, get_logger
from src.errors import DimensionMismatch, InvalidPoint
from src.network import NodeMapping, Network
from src.transport_simplex import solve_transportation

LOGGER = get_logger()

DEGENERATE_MASS = 1e-12


@dataclass(frozen=True, eq=False)
class BarycentricPoint:
    """Convex combination of a network's nodes.

    Use :meth:`from_weights` (or the vertex/midpoint helpers) to build one;
    coordinates are renormalised to sum exactly to one.
    """

    weights: np.ndarray = field(repr=False)

    @classmethod
    def from_weights(cls, weights: Sequence[float], tol: float = DEFAULT_TOLERANCE) -> "BarycentricPoint":
        """Validate and renormalise a mass tuple.

        Raises:
            InvalidPoint: negative mass or a coordinate sum farther than ``tol`` from one
        """
        array = np.array(weights, dtype=np.float64).reshape(-1)
        if array.size == 0 or not np.all(np.isfinite(array)):
            raise InvalidPoint("barycentric coordinates must be a non-empty tuple of finite reals")
        if np.any(array < -tol):
            raise InvalidPoint(f"negative mass {float(array.min())!r} at node {int(array.argmin())}")
        array = np.clip(array, 0.0, None)
        total = float(array.sum())
        if abs(total - 1.0) > tol:
            raise InvalidPoint(f"coordinates sum to {total!r}, expected 1")
        array = array / total
        array.flags.writeable = False
        return cls(weights=array)

    @classmethod
    def vertex(cls, n: int, i: int) -> "BarycentricPoint":
        """Original node ``i`` of an ``n``-node network."""
        return cls.combination(n, {i: 1})

    @classmethod
    def midpoint(cls, n: int, i: int, j: int) -> "BarycentricPoint":
        """Half mass at ``i`` and half at ``j``."""
        return cls.combination(n, {i: Fraction(1, 2), j: Fraction(1, 2)})

    @classmethod
    def combination(cls, n: int, masses: Mapping[int, float | Fraction]) -> "BarycentricPoint":
        """Point with the given mass per node and zero elsewhere."""
        weights = np.zeros(n)
        for node, mass in masses.items():
            if not 0 <= node < n:
                raise DimensionMismatch(f"node {node} outside a {n}-node network")
            weights[node] += float(mass)
        return cls.from_weights(weights)

    @property
    def size(self) -> int:
        """Number of coordinates (nodes of the underlying network)."""
        return int(self.weights.size)

    def support(self) -> tuple[int, ...]:
        """Nodes carrying nonzero mass."""
        return tuple(int(k) for k in np.flatnonzero(self.weights > 0.0))

    def vertex_index(self, tol: float = DEFAULT_TOLERANCE) -> int | None:
        """Index of the original node this point coincides with, if any."""
        top = int(self.weights.argmax())
        return top if self.weights[top] >= 1.0 - tol else None

    def close_to(self, other: "BarycentricPoint", tol: float = DEFAULT_TOLERANCE) -> bool:
        """All coordinates within ``tol``."""
        return self.size == other.size and float(np.max(np.abs(self.weights - other.weights))) <= tol

    def to_list(self) -> list[float]:
        """Coordinates as a plain list."""
        return self.weights.tolist()


@dataclass(frozen=True)
class TransportPlan:
    """Signed edge flows realising a minimal transformation.

    ``flows[(i, j)]`` with ``i < j`` is positive when mass moves from ``i`` to
    ``j`` and negative when it moves from ``j`` to ``i``.
    """

    flows: dict[tuple[int, int], float]
    total: float
    cost: float

    def shipments(self) -> list[tuple[int, int, float]]:
        """Flows as ``(source, destination, amount)`` with positive amounts."""
        return [
            (i, j, amount) if amount > 0 else (j, i, -amount)
            for (i, j), amount in sorted(self.flows.items())
        ]

    def net_change(self, n: int) -> np.ndarray:
        """Mass gained by each node, ``m - p`` for the pair the plan was built from."""
        change = np.zeros(n)
        for (i, j), amount in self.flows.items():
            change[i] -= amount
            change[j] += amount
        return change


def _check_dimensions(net: Network, *points: BarycentricPoint) -> None:
    for point in points:
        if point.size != net.size:
            raise DimensionMismatch(f"point has {point.size} coordinates, network has {net.size} nodes")


def minimal_transport_plan(net: Network, p: BarycentricPoint, m: BarycentricPoint) -> TransportPlan:
    """Plan turning ``p`` into ``m`` with least total flow, then least weighted cost.

    Raises:
        DimensionMismatch: a point is not sized for ``net``
    """
    _check_dimensions(net, p, m)
    difference = p.weights - m.weights
    sources = np.flatnonzero(difference > DEGENERATE_MASS)
    sinks = np.flatnonzero(difference < -DEGENERATE_MASS)
    if sources.size == 0 or sinks.size == 0:
        return TransportPlan(flows={}, total=0.0, cost=0.0)

    supply = difference[sources]
    demand = -difference[sinks]
    shipped = solve_transportation(supply, demand, net.dissim[np.ix_(sources, sinks)])

    flows: dict[tuple[int, int], float] = {}
    for a, b in zip(*np.nonzero(shipped > 0.0), strict=True):
        source, sink, amount = int(sources[a]), int(sinks[b]), float(shipped[a, b])
        if source < sink:
            flows[(source, sink)] = amount
        else:
            flows[(sink, source)] = -amount
    total = sum(abs(amount) for amount in flows.values())
    cost = sum(abs(amount) * net.dissim[i, j] for (i, j), amount in flows.items())
    return TransportPlan(flows=flows, total=float(total), cost=float(cost))


def interior_distance(net: Network, p: BarycentricPoint, m: BarycentricPoint) -> float:
    """Induced semimetric between two barycentric points of ``net``."""
    return minimal_transport_plan(net, p, m).cost


def push_forward(mapping: NodeMapping, x: BarycentricPoint, target_size: int | None = None) -> BarycentricPoint:
    """Image of ``x`` under the node map: each target node collects the mass of its preimages.

    Args:
        mapping: map from the source nodes of ``x``
        x: point over the source network
        target_size: number of target nodes (defaults to the largest image + 1)

    Raises:
        DimensionMismatch: ``x`` and ``mapping`` are sized for different networks
    """
    if len(mapping) != x.size:
        raise DimensionMismatch(f"mapping covers {len(mapping)} nodes, point has {x.size} coordinates")
    target_size = max(mapping.assignment) + 1 if target_size is None else target_size
    mapping.validate(x.size, target_size)
    weights = np.zeros(target_size)
    np.add.at(weights, mapping.as_array(), x.weights)
    return BarycentricPoint.from_weights(weights)
