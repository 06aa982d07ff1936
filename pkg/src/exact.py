"""Exhaustive evaluation of the network distances on small instances.

Every distance here is a bottleneck objective minimised over all node maps
or correspondences. Candidates are enumerated in chunks (constant memory)
in lexicographic order of the assignment array or bitmask; the reduction
keeps the first minimiser, so witnesses are reproducible.
"""

from collections.abc import Iterator, Sequence
from math import prod
from typing import NamedTuple

import numpy as np

from src import DEFAULT_CORRESPONDENCE_LIMIT, DEFAULT_ENUMERATION_LIMIT, DEFAULT_TOLERANCE, get_logger
from src.errors import TooLarge
from src.network import Correspondence, Network, NodeMapping
from src.sampled_space import SampledSpace

LOGGER = get_logger()

CHUNK_SIZE = 1 << 15


class DistanceResult(NamedTuple):
    """Distance value with the map or correspondence attaining it."""

    value: float
    witness: NodeMapping | Correspondence | None


class LemmaTerms(NamedTuple):
    """The three bottleneck terms of the mapping reformulation of ``d_C``."""

    forward: float
    backward: float
    cross: float


# =============================================================================
# Bottleneck Objectives
# =============================================================================


def gamma_diff(a: Network, b: Network, correspondence: Correspondence) -> float:
    """Largest dissimilarity mismatch over all pairs of correspondent pairs.

    Raises:
        InvalidCorrespondence: a node of either network is left uncovered
    """
    correspondence.validate(a.size, b.size)
    pairs = correspondence.sorted_pairs()
    xs = np.asarray([x for x, _ in pairs], dtype=np.intp)
    ys = np.asarray([y for _, y in pairs], dtype=np.intp)
    return float(np.max(np.abs(a.dissim[np.ix_(xs, xs)] - b.dissim[np.ix_(ys, ys)])))


def _map_delta(dx: np.ndarray, dy: np.ndarray, assignment: np.ndarray) -> float:
    return float(np.max(np.abs(dx - dy[np.ix_(assignment, assignment)])))


def delta_map(a: Network, b: Network, mapping: NodeMapping) -> float:
    """Largest mismatch between ``a`` and its image in ``b`` under ``mapping``."""
    mapping.validate(a.size, b.size)
    return _map_delta(a.dissim, b.dissim, mapping.as_array())


def delta_cross(a: Network, b: Network, phi: NodeMapping, psi: NodeMapping) -> float:
    """How far ``phi: a -> b`` and ``psi: b -> a`` are from inverting each other.

    ``max over x, y of |r_a(x, psi(y)) - r_b(phi(x), y)|``.

    Raises:
        DimensionMismatch: a map is sized for the wrong network
    """
    phi.validate(a.size, b.size)
    psi.validate(b.size, a.size)
    return float(np.max(np.abs(a.dissim[:, psi.as_array()] - b.dissim[phi.as_array(), :])))


def lemma_terms(a: Network, b: Network, phi: NodeMapping, psi: NodeMapping) -> LemmaTerms:
    """Both partial-embedding mismatches and the cross term for a pair of maps."""
    return LemmaTerms(
        forward=delta_map(a, b, phi),
        backward=delta_map(b, a, psi),
        cross=delta_cross(a, b, phi, psi),
    )


def is_isometric_embedding(a: Network, b: Network, mapping: NodeMapping, tol: float = DEFAULT_TOLERANCE) -> bool:
    """Whether ``mapping`` preserves every dissimilarity of ``a`` within ``tol``."""
    return delta_map(a, b, mapping) <= tol


# =============================================================================
# Enumeration
# =============================================================================


def _guard(name: str, count: int, limit: int = DEFAULT_ENUMERATION_LIMIT) -> None:
    if count > limit:
        raise TooLarge(name, count, limit)


def _mixed_radix_chunks(radices: Sequence[int], chunk_size: int = CHUNK_SIZE) -> Iterator[tuple[int, np.ndarray]]:
    """Yield ``(offset, assignments)`` covering every digit tuple in lexicographic order.

    Digit ``k`` ranges over ``[0, radices[k])``; the first digit is the most
    significant, so integer order equals lexicographic order.
    """
    total = prod(radices)
    weights = np.ones(len(radices), dtype=np.int64)
    for k in range(len(radices) - 2, -1, -1):
        weights[k] = weights[k + 1] * radices[k + 1]
    radix = np.asarray(radices, dtype=np.int64)
    for offset in range(0, total, chunk_size):
        codes = np.arange(offset, min(offset + chunk_size, total), dtype=np.int64)
        yield offset, ((codes[:, None] // weights[None, :]) % radix[None, :]).astype(np.intp)


def _chunk_deltas(dx: np.ndarray, dy: np.ndarray, assignments: np.ndarray) -> np.ndarray:
    images = dy[assignments[:, :, None], assignments[:, None, :]]
    return np.abs(images - dx[None, :, :]).max(axis=(1, 2))


def _min_over_maps(dx: np.ndarray, dy: np.ndarray, radices: Sequence[int]) -> tuple[float, tuple[int, ...]]:
    """Minimum bottleneck mismatch over all maps with the given per-source ranges."""
    best_value = np.inf
    best_assignment: tuple[int, ...] = ()
    for _, assignments in _mixed_radix_chunks(radices):
        deltas = _chunk_deltas(dx, dy, assignments)
        position = int(np.argmin(deltas))
        if deltas[position] < best_value:
            best_value = float(deltas[position])
            best_assignment = tuple(int(k) for k in assignments[position])
    return best_value, best_assignment


# =============================================================================
# Distances
# =============================================================================


def d_PE_exact(a: Network, b: Network) -> DistanceResult:
    """Partial embedding distance from ``a`` to ``b`` with its minimising map.

    Raises:
        TooLarge: more than ``DEFAULT_ENUMERATION_LIMIT`` candidate maps
    """
    _guard("d_PE candidate maps", b.size**a.size)
    value, assignment = _min_over_maps(a.dissim, b.dissim, [b.size] * a.size)
    return DistanceResult(value, NodeMapping(assignment))


def d_EE_exact(a: Network, b: Network) -> float:
    """Embedding distance: the larger partial embedding distance of the two directions."""
    _guard("d_PE candidate maps", b.size**a.size)
    _guard("d_PE candidate maps", a.size**b.size)
    return max(d_PE_exact(a, b).value, d_PE_exact(b, a).value)


def d_PEQ_exact(qa: SampledSpace, qb: SampledSpace) -> DistanceResult:
    """Partial embedding distance between sampled spaces, originals mapped to originals.

    Raises:
        TooLarge: more than ``DEFAULT_ENUMERATION_LIMIT`` feasible maps
    """
    radices = [qb.base_size] * qa.base_size + [qb.size] * (qa.size - qa.base_size)
    _guard("d_PEQ feasible maps", prod(radices))
    value, assignment = _min_over_maps(qa.dissim, qb.dissim, radices)
    return DistanceResult(value, NodeMapping(assignment))


def _cell_mismatch(a: Network, b: Network) -> np.ndarray:
    """``D[c, c']`` = mismatch between cells ``c = (x, y)`` and ``c' = (x', y')``, cell index ``x*|Y| + y``."""
    mismatch = np.abs(a.dissim[:, None, :, None] - b.dissim[None, :, None, :])
    cells = a.size * b.size
    return mismatch.reshape(cells, cells)


def d_C_exact(a: Network, b: Network) -> DistanceResult:
    """Correspondence distance by enumerating every subset of ``X x Y``.

    Raises:
        TooLarge: ``|X| * |Y|`` exceeds ``DEFAULT_CORRESPONDENCE_LIMIT``
    """
    cells = a.size * b.size
    _guard("d_C cells |X|*|Y|", cells, DEFAULT_CORRESPONDENCE_LIMIT)
    mismatch = _cell_mismatch(a, b)
    cell_rows = np.repeat(np.arange(a.size), b.size)
    cell_cols = np.tile(np.arange(b.size), a.size)
    bit_values = np.int64(1) << np.arange(cells, dtype=np.int64)

    best_value = np.inf
    best_mask = 0
    for offset in range(1, 1 << cells, CHUNK_SIZE):
        masks = np.arange(offset, min(offset + CHUNK_SIZE, 1 << cells), dtype=np.int64)
        bits = (masks[:, None] & bit_values[None, :]) != 0
        covered = np.ones(masks.size, dtype=bool)
        for x in range(a.size):
            covered &= bits[:, cell_rows == x].any(axis=1)
        for y in range(b.size):
            covered &= bits[:, cell_cols == y].any(axis=1)
        if not covered.any():
            continue
        bits = bits[covered]
        gammas = np.zeros(bits.shape[0])
        for c in range(cells):
            row = np.where(bits, mismatch[c][None, :], 0.0).max(axis=1)
            gammas = np.maximum(gammas, np.where(bits[:, c], row, 0.0))
        position = int(np.argmin(gammas))
        if gammas[position] < best_value:
            best_value = float(gammas[position])
            best_mask = int(masks[covered][position])

    pairs = [(int(cell_rows[c]), int(cell_cols[c])) for c in range(cells) if best_mask >> c & 1]
    return DistanceResult(best_value, Correspondence.from_pairs(pairs))


def d_C_lemma(a: Network, b: Network) -> float:
    """Correspondence distance through the map-pair reformulation.

    ``min over phi, psi of max(delta_map(phi), delta_map(psi), delta_cross(phi, psi))``.

    Raises:
        TooLarge: ``|Y|^|X| * |X|^|Y|`` exceeds ``DEFAULT_ENUMERATION_LIMIT``
    """
    _guard("d_C lemma map pairs", b.size**a.size * a.size**b.size)
    psis = next(_mixed_radix_chunks([a.size] * b.size, chunk_size=a.size**b.size))[1]
    psi_deltas = _chunk_deltas(b.dissim, a.dissim, psis)
    a_by_psi = a.dissim[:, psis]  # (|X|, n_psi, |Y|)

    best = np.inf
    for _, phis in _mixed_radix_chunks([b.size] * a.size):
        phi_deltas = _chunk_deltas(a.dissim, b.dissim, phis)
        for phi, phi_delta in zip(phis, phi_deltas, strict=True):
            if phi_delta >= best:
                continue
            cross = np.abs(a_by_psi - b.dissim[phi, :][:, None, :]).max(axis=(0, 2))
            candidate = float(np.min(np.maximum(np.maximum(cross, psi_deltas), phi_delta)))
            best = min(best, candidate)
    return best
