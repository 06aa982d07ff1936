"""Tests module."""

import os

import numpy as np
from ruamel.yaml import YAML
from scipy.optimize import linprog

from src import ENV_RUN_EXPERIMENTS_KEY
from src.interior import BarycentricPoint
from src.network import Network, validate_network

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")
CONFIG_PATH = os.path.join(DATA_DIR, "test_config.yaml")
TEMP_DIR = os.path.join(os.path.dirname(__file__), "temp")
GAMMA1_PATH = os.path.join(DATA_DIR, "gamma1.json")
GAMMA3_PATH = os.path.join(DATA_DIR, "gamma3.json")
TWO_NODE_PATH = os.path.join(DATA_DIR, "two_node.csv")
ASYMMETRIC_PATH = os.path.join(DATA_DIR, "asymmetric.csv")
MANIFEST_PATH = os.path.join(DATA_DIR, "classify_manifest.json")


def update_config(data):
    """Update config test config path."""
    with open(file=CONFIG_PATH, mode="w", encoding="utf-8") as config_file:
        YAML().dump(data=data, stream=config_file)


def run_experiments() -> bool:
    """Whether the long experiment reproductions are enabled."""
    return os.environ.get(ENV_RUN_EXPERIMENTS_KEY, "") == "1"


def random_network(rng: np.random.Generator, n: int, low: float = 0.1, high: float = 2.0) -> Network:
    """Complete network with uniform weights in ``[low, high]``."""
    matrix = np.zeros((n, n))
    upper = np.triu_indices(n, k=1)
    matrix[upper] = rng.uniform(low, high, size=len(upper[0]))
    return validate_network(matrix + matrix.T)


def random_point(rng: np.random.Generator, n: int) -> BarycentricPoint:
    """Barycentric point with a random support (at least one node)."""
    weights = rng.dirichlet(np.ones(n))
    if n > 1:
        weights[rng.random(n) < 0.3] = 0.0
        if weights.sum() == 0.0:
            weights[rng.integers(n)] = 1.0
    return BarycentricPoint.from_weights(weights / weights.sum())


def lp_transport_oracle(net: Network, p: BarycentricPoint, m: BarycentricPoint) -> tuple[float, float]:
    """Two-stage generic LP over all directed edges: least total flow, then least cost.

    Returns:
        ``(total, cost)`` of an optimal transformation from ``p`` to ``m``
    """
    n = net.size
    edges = [(i, j) for i in range(n) for j in range(n) if i != j]
    if not edges:
        return 0.0, 0.0
    balance = np.zeros((n, len(edges)))
    for k, (i, j) in enumerate(edges):
        balance[i, k] += 1.0
        balance[j, k] -= 1.0
    excess = p.weights - m.weights
    stage_one = linprog(np.ones(len(edges)), A_eq=balance, b_eq=excess, bounds=(0, None), method="highs-ds")
    total = float(stage_one.fun)
    costs = np.array([net.dissim[i, j] for i, j in edges])
    stage_two = linprog(
        costs,
        A_ub=np.ones((1, len(edges))),
        b_ub=[total + 1e-12],
        A_eq=balance,
        b_eq=excess,
        bounds=(0, None),
        method="highs-ds",
    )
    return total, float(stage_two.fun)


def brute_delta_cross(a: Network, b: Network, phi, psi) -> float:
    """Cross term by an explicit double loop."""
    worst = 0.0
    for x in range(a.size):
        for y in range(b.size):
            worst = max(worst, abs(a.dissim[x, psi[y]] - b.dissim[phi[x], y]))
    return worst
