"""Network data model.

A network is a finite node set with a symmetric dissimilarity matrix that
is zero on the diagonal and strictly positive elsewhere. Networks are
immutable once validated; node maps and correspondences between two
networks are plain index structures.
"""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np

from src import DEFAULT_ISOMORPHISM_LIMIT, DEFAULT_TOLERANCE, get_logger
from src.errors import (
    AsymmetricMatrix,
    DimensionMismatch,
    DuplicateLabel,
    InvalidCorrespondence,
    InvalidMapping,
    NonpositiveOffDiagonal,
    NonzeroDiagonal,
    ShapeMismatch,
    TooLarge,
)

LOGGER = get_logger()


@dataclass(frozen=True, eq=False)
class Network:
    """Validated weighted network.

    Build instances with :func:`validate_network`; the constructor assumes a
    read-only, already validated matrix.
    """

    labels: tuple[str, ...]
    dissim: np.ndarray = field(repr=False)

    @property
    def size(self) -> int:
        """Number of nodes."""
        return len(self.labels)

    def __len__(self) -> int:
        """Number of nodes."""
        return len(self.labels)

    def weight(self, i: int, j: int) -> float:
        """Dissimilarity between nodes ``i`` and ``j``."""
        return float(self.dissim[i, j])

    def index_of(self, label: str) -> int:
        """Position of ``label`` in node order."""
        return self.labels.index(label)

    def equals(self, other: "Network", tol: float = DEFAULT_TOLERANCE) -> bool:
        """Same labels in the same order and weights within ``tol``."""
        return (
            self.labels == other.labels
            and self.dissim.shape == other.dissim.shape
            and bool(np.all(np.abs(self.dissim - other.dissim) <= tol))
        )

    def to_dict(self) -> dict:
        """JSON-ready representation."""
        return {"labels": list(self.labels), "dissim": self.dissim.tolist()}


@dataclass(frozen=True)
class NodeMapping:
    """Total map from source node indices to target node indices."""

    assignment: tuple[int, ...]

    @classmethod
    def identity(cls, n: int) -> "NodeMapping":
        """Map every node to itself."""
        return cls(tuple(range(n)))

    def __len__(self) -> int:
        """Number of source nodes."""
        return len(self.assignment)

    def __getitem__(self, source: int) -> int:
        """Image of ``source``."""
        return self.assignment[source]

    def validate(self, source_size: int, target_size: int) -> "NodeMapping":
        """Check the map is sized for ``source_size`` and lands in ``target_size``.

        Raises:
            DimensionMismatch: assignment length differs from ``source_size``
            InvalidMapping: an image is outside ``[0, target_size)``
        """
        if len(self.assignment) != source_size:
            raise DimensionMismatch(f"mapping covers {len(self.assignment)} nodes, source has {source_size}")
        for source, target in enumerate(self.assignment):
            if not 0 <= target < target_size:
                raise InvalidMapping(f"node {source} maps to {target}, outside [0, {target_size})")
        return self

    def as_array(self) -> np.ndarray:
        """Assignment as an integer index array."""
        return np.asarray(self.assignment, dtype=np.intp)


@dataclass(frozen=True)
class Correspondence:
    """Relation between two node sets covering both sides."""

    pairs: frozenset[tuple[int, int]]

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "Correspondence":
        """Build from any iterable of ``(source, target)`` pairs."""
        return cls(frozenset((int(x), int(y)) for x, y in pairs))

    @classmethod
    def from_mapping(cls, mapping: NodeMapping) -> "Correspondence":
        """Graph of a node map (covers the target only when the map is onto)."""
        return cls.from_pairs(enumerate(mapping.assignment))

    def validate(self, source_size: int, target_size: int) -> "Correspondence":
        """Check every source and target index appears in some pair.

        Raises:
            InvalidCorrespondence: coverage violated or index out of range
        """
        for x, y in self.pairs:
            if not (0 <= x < source_size and 0 <= y < target_size):
                raise InvalidCorrespondence(f"pair ({x}, {y}) outside {source_size}x{target_size}")
        missing_sources = set(range(source_size)) - {x for x, _ in self.pairs}
        missing_targets = set(range(target_size)) - {y for _, y in self.pairs}
        if missing_sources or missing_targets:
            raise InvalidCorrespondence(
                f"uncovered source nodes {sorted(missing_sources)}, target nodes {sorted(missing_targets)}",
            )
        return self

    def sorted_pairs(self) -> list[tuple[int, int]]:
        """Pairs in lexicographic order."""
        return sorted(self.pairs)


def _as_square_matrix(raw_matrix) -> np.ndarray:
    try:
        matrix = np.array(raw_matrix, dtype=np.float64)
    except (TypeError, ValueError) as e:
        raise ShapeMismatch(f"matrix is not a rectangular array of reals: {e!s}") from e
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] < 1:
        raise ShapeMismatch(f"matrix must be square with n >= 1, got shape {matrix.shape}")
    return matrix


def validate_network(
    raw_matrix,
    labels: Sequence[str] | None = None,
    tol: float = DEFAULT_TOLERANCE,
) -> Network:
    """Validate a dissimilarity matrix and wrap it as a :class:`Network`.

    Args:
        raw_matrix: n x n nested sequence or array of reals
        labels: node identifiers; defaults to ``"0" .. "n-1"``
        tol: absolute tolerance for the diagonal and symmetry checks

    Returns:
        Read-only network whose diagonal is exactly zero

    Raises:
        ShapeMismatch, DuplicateLabel, NonzeroDiagonal, AsymmetricMatrix,
        NonpositiveOffDiagonal: naming the offending indices
    """
    matrix = _as_square_matrix(raw_matrix)
    n = matrix.shape[0]
    labels = tuple(str(i) for i in range(n)) if labels is None else tuple(str(label) for label in labels)
    if len(labels) != n:
        raise ShapeMismatch(f"{len(labels)} labels for a {n}x{n} matrix", (len(labels), n))
    if len(set(labels)) != n:
        duplicates = sorted({label for label in labels if labels.count(label) > 1})
        raise DuplicateLabel(f"duplicate labels {duplicates}", tuple(duplicates))

    for i in range(n):
        if not (np.isfinite(matrix[i, i]) and abs(matrix[i, i]) <= tol):
            raise NonzeroDiagonal(f"dissim[{i}][{i}] = {matrix[i, i]!r} must be 0", (i, i))
    for i in range(n):
        for j in range(i + 1, n):
            a, b = matrix[i, j], matrix[j, i]
            if not (np.isfinite(a) and np.isfinite(b)):
                raise NonpositiveOffDiagonal(f"dissim[{i}][{j}] is not finite", (i, j))
            if abs(a - b) > tol:
                raise AsymmetricMatrix(f"dissim[{i}][{j}] = {a!r} differs from dissim[{j}][{i}] = {b!r}", (i, j))
            if min(a, b) <= 0.0:
                raise NonpositiveOffDiagonal(f"dissim[{i}][{j}] = {min(a, b)!r} must be > 0", (i, j))

    matrix = (matrix + matrix.T) / 2.0
    np.fill_diagonal(matrix, 0.0)
    matrix.flags.writeable = False
    return Network(labels=labels, dissim=matrix)


def permute_network(net: Network, perm: Sequence[int]) -> Network:
    """Reorder nodes: node ``k`` of the result is node ``perm[k]`` of ``net``."""
    perm = list(perm)
    if sorted(perm) != list(range(net.size)):
        raise DimensionMismatch(f"{perm} is not a permutation of {net.size} nodes")
    index = np.asarray(perm, dtype=np.intp)
    return validate_network(net.dissim[np.ix_(index, index)], [net.labels[k] for k in perm])


def induced_subnetwork(net: Network, nodes: Sequence[int]) -> Network:
    """Restrict ``net`` to ``nodes`` (kept in the given order)."""
    nodes = list(nodes)
    if not nodes or len(set(nodes)) != len(nodes) or not all(0 <= k < net.size for k in nodes):
        raise DimensionMismatch(f"{nodes} is not a non-empty set of distinct nodes of a {net.size}-node network")
    index = np.asarray(nodes, dtype=np.intp)
    return validate_network(net.dissim[np.ix_(index, index)], [net.labels[k] for k in nodes])


def _sorted_weights(net: Network) -> np.ndarray:
    upper = np.triu_indices(net.size, k=1)
    return np.sort(net.dissim[upper])


def are_isomorphic(a: Network, b: Network, tol: float = DEFAULT_TOLERANCE) -> bool:
    """Whether some node bijection matches the two matrices entrywise within ``tol``.

    Raises:
        TooLarge: more than ``DEFAULT_ISOMORPHISM_LIMIT`` nodes
    """
    if a.size != b.size:
        return False
    if a.size > DEFAULT_ISOMORPHISM_LIMIT:
        raise TooLarge("are_isomorphic node count", a.size, DEFAULT_ISOMORPHISM_LIMIT)
    if not np.all(np.abs(_sorted_weights(a) - _sorted_weights(b)) <= tol):
        return False

    n = a.size
    image = [-1] * n
    used = [False] * n

    def extend(i: int) -> bool:
        if i == n:
            return True
        for candidate in range(n):
            if used[candidate]:
                continue
            if all(abs(a.dissim[i, k] - b.dissim[candidate, image[k]]) <= tol for k in range(i)):
                image[i] = candidate
                used[candidate] = True
                if extend(i + 1):
                    return True
                used[candidate] = False
        return False

    return extend(0)


def triangle_violations(net: Network, tol: float = DEFAULT_TOLERANCE) -> list[tuple[int, int, int]]:
    """Triples ``(i, j, k)`` with ``i < j`` where ``r(i, j) > r(i, k) + r(k, j) + tol``."""
    r = net.dissim
    detour = r[:, :, None] + r[None, :, :]  # detour[i, k, j] = r(i, k) + r(k, j)
    violations = []
    for i in range(net.size):
        for j in range(i + 1, net.size):
            for k in np.flatnonzero(r[i, j] > detour[i, :, j] + tol):
                if k not in (i, j):
                    violations.append((i, j, int(k)))
    return violations


def is_metric(net: Network, tol: float = DEFAULT_TOLERANCE) -> bool:
    """Whether the dissimilarities satisfy the triangle inequality."""
    return not triangle_violations(net, tol)
