"""Synthetic network generators.

Three random models (uniform weights, Gaussian kernel over points in the
unit disk, Pearson correlation of random features) and the three-node gamma
family. Every random network is drawn from its own stream, keyed by the
experiment seed, the model name and the network's index.
"""

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np
from scipy.spatial.distance import pdist

from src import (
    DEFAULT_FEAT_DIM,
    DEFAULT_GAMMA_OPPOSITE,
    DEFAULT_MIN_WEIGHT,
    DEFAULT_NODES,
    DEFAULT_SEED,
    DEFAULT_SIGMA,
    get_logger,
)
from src.errors import DegenerateFeature, InvalidFeatureDim, InvalidGamma, InvalidN, InvalidSigma
from src.network import Network, validate_network
from src.rng import make_rng

LOGGER = get_logger()

GAMMA_LABELS = ("a", "b", "c")
MAX_FEATURE_RESAMPLES = 8


class Model(str, Enum):
    """Generator model names as used in flags, manifests and output tables."""

    ER = "er"
    CIRCLE = "circle"
    CORR = "corr"
    GAMMA = "gamma"


@dataclass(frozen=True)
class GenSpec:
    """Parameters of one generated network."""

    model: Model
    n: int = DEFAULT_NODES
    sigma: float = DEFAULT_SIGMA
    feat_dim: int = DEFAULT_FEAT_DIM
    gamma: float = 1.0
    seed: int = DEFAULT_SEED

    def validate(self) -> "GenSpec":
        """Check the parameters the selected model uses.

        Raises:
            InvalidN, InvalidSigma, InvalidFeatureDim, InvalidGamma
        """
        if self.model is Model.GAMMA:
            _check_gamma(self.gamma)
            return self
        _check_n(self.n)
        if self.model is Model.CIRCLE:
            _check_sigma(self.sigma)
        if self.model is Model.CORR:
            _check_feat_dim(self.feat_dim)
        return self


class GeneratedNetwork(NamedTuple):
    """A generated network with the model that produced it."""

    name: str
    model: str
    network: Network


def _check_n(n: int) -> None:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 2:
        raise InvalidN(f"node count must be an integer >= 2, got {n!r}")


def _check_sigma(sigma: float) -> None:
    if not (math.isfinite(sigma) and sigma > 0):
        raise InvalidSigma(f"sigma must be positive, got {sigma!r}")


def _check_feat_dim(feat_dim: int) -> None:
    if feat_dim < 2:
        raise InvalidFeatureDim(f"feature dimension must be >= 2, got {feat_dim!r}")


def _check_gamma(gamma: float) -> None:
    if not (math.isfinite(gamma) and gamma > 0):
        raise InvalidGamma(f"gamma must be positive, got {gamma!r}")


def _from_condensed(n: int, weights: np.ndarray) -> Network:
    """Network from upper-triangle weights in row-major order."""
    matrix = np.zeros((n, n))
    upper = np.triu_indices(n, k=1)
    matrix[upper] = weights
    matrix.T[upper] = weights
    return validate_network(matrix)


# =============================================================================
# Random Models
# =============================================================================


def gen_er(n: int, seed: int, index: int = 0) -> Network:
    """Complete network with i.i.d. uniform weights on ``(0, 1]``."""
    _check_n(n)
    rng = make_rng(seed, Model.ER.value, index)
    weights = 1.0 - rng.random(n * (n - 1) // 2)
    return _from_condensed(n, np.maximum(weights, DEFAULT_MIN_WEIGHT))


def rbf_network(points: np.ndarray, sigma: float) -> Network:
    """Gaussian-kernel weights ``exp(-d^2 / 2 sigma^2)`` between planar points."""
    _check_sigma(sigma)
    distances = pdist(np.asarray(points, dtype=np.float64))
    weights = np.exp(-(distances**2) / (2.0 * sigma**2))
    return _from_condensed(len(points), np.maximum(weights, DEFAULT_MIN_WEIGHT))


def gen_circle(n: int, sigma: float, seed: int, index: int = 0) -> Network:
    """Points uniform over the closed unit disk, weighted by a Gaussian kernel."""
    _check_n(n)
    _check_sigma(sigma)
    rng = make_rng(seed, Model.CIRCLE.value, index)
    radius = np.sqrt(rng.random(n))
    angle = 2.0 * np.pi * rng.random(n)
    points = np.column_stack([radius * np.cos(angle), radius * np.sin(angle)])
    return rbf_network(points, sigma)


def correlation_network(features: np.ndarray) -> Network:
    """Weights ``rho / 2 + 0.5`` from the Pearson correlation of feature rows.

    Raises:
        DegenerateFeature: a feature row has zero variance
    """
    features = np.asarray(features, dtype=np.float64)
    if np.any(np.ptp(features, axis=1) == 0.0):
        raise DegenerateFeature("a feature vector is constant, correlation is undefined")
    rho = np.corrcoef(features)
    weights = np.clip(rho / 2.0 + 0.5, DEFAULT_MIN_WEIGHT, 1.0)
    upper = np.triu_indices(features.shape[0], k=1)
    return _from_condensed(features.shape[0], weights[upper])


def gen_corr(n: int, feat_dim: int, seed: int, index: int = 0) -> Network:
    """Correlation network over standard normal feature vectors.

    Raises:
        InvalidN, InvalidFeatureDim
        DegenerateFeature: a constant feature vector survived every resample
    """
    _check_n(n)
    _check_feat_dim(feat_dim)
    rng = make_rng(seed, Model.CORR.value, index)
    features = rng.standard_normal((n, feat_dim))
    for _ in range(MAX_FEATURE_RESAMPLES):
        constant = np.ptp(features, axis=1) == 0.0
        if not constant.any():
            return correlation_network(features)
        LOGGER.debug(f"resampling {int(constant.sum())} constant feature vectors")
        features[constant] = rng.standard_normal((int(constant.sum()), feat_dim))
    return correlation_network(features)


def gen_gamma(gamma: float) -> Network:
    """Three nodes ``a, b, c`` with ``r(a, b) = r(a, c) = gamma`` and ``r(b, c) = 11``.

    Raises:
        InvalidGamma: gamma is not positive
    """
    _check_gamma(gamma)
    g = float(gamma)
    return validate_network(
        [[0.0, g, g], [g, 0.0, DEFAULT_GAMMA_OPPOSITE], [g, DEFAULT_GAMMA_OPPOSITE, 0.0]],
        GAMMA_LABELS,
    )


def gamma_family(gammas: Iterable[float]) -> list[Network]:
    """One gamma network per value, in the given order."""
    return [gen_gamma(gamma) for gamma in gammas]


# =============================================================================
# Dispatch
# =============================================================================


def generate(spec: GenSpec, index: int = 0) -> Network:
    """Network described by ``spec``; ``index`` selects the random stream."""
    spec.validate()
    match spec.model:
        case Model.ER:
            return gen_er(spec.n, spec.seed, index)
        case Model.CIRCLE:
            return gen_circle(spec.n, spec.sigma, spec.seed, index)
        case Model.CORR:
            return gen_corr(spec.n, spec.feat_dim, spec.seed, index)
        case _:
            return gen_gamma(spec.gamma)


def generate_model_set(
    models: Sequence[str],
    per_model: int,
    nodes: tuple[int, int],
    seed: int,
    sigma: float = DEFAULT_SIGMA,
    feat_dim: int = DEFAULT_FEAT_DIM,
) -> list[GeneratedNetwork]:
    """``per_model`` networks for every model and every node count in ``nodes``.

    Networks are ordered by model, then node count, then repetition; the
    stream index counts within each model.
    """
    node_min, node_max = nodes
    generated = []
    for model_name in models:
        model = Model(model_name)
        index = 0
        for n in range(node_min, node_max + 1):
            spec = GenSpec(model=model, n=n, sigma=sigma, feat_dim=feat_dim, seed=seed)
            for _ in range(per_model):
                network = generate(spec, index)
                generated.append(GeneratedNetwork(f"{model.value}_{index:03d}", model.value, network))
                index += 1
    LOGGER.info(f"generated {len(generated)} networks for models {', '.join(models)}")
    return generated
