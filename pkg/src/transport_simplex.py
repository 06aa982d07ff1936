"""Balanced transportation problem solver.

Northwest-corner start followed by potential (u-v) pricing and cycle
pivoting over the spanning-tree basis. Entering and leaving cells follow
Bland's rule (lowest index first), which rules out cycling on the
degenerate pivots that direct-shipment problems produce.
"""

from collections import deque

import numpy as np

from src import get_logger

LOGGER = get_logger()

_PRICING_TOL = 1e-12


def northwest_corner(supply: np.ndarray, demand: np.ndarray) -> tuple[np.ndarray, list[tuple[int, int]]]:
    """Initial basic feasible solution with exactly ``m + k - 1`` basic cells.

    When a row and a column are exhausted together the walk moves down one
    row only, keeping a zero-valued basic cell so the basis stays a tree.
    """
    rows, cols = len(supply), len(demand)
    remaining_supply = supply.astype(np.float64).copy()
    remaining_demand = demand.astype(np.float64).copy()
    flow = np.zeros((rows, cols))
    basis = []
    i = j = 0
    while True:
        amount = max(min(remaining_supply[i], remaining_demand[j]), 0.0)
        flow[i, j] = amount
        basis.append((i, j))
        remaining_supply[i] -= amount
        remaining_demand[j] -= amount
        if i == rows - 1 and j == cols - 1:
            break
        if j == cols - 1 or (i < rows - 1 and remaining_supply[i] <= remaining_demand[j]):
            i += 1
        else:
            j += 1
    return flow, basis


def _potentials(cost: np.ndarray, basis: list[tuple[int, int]]) -> tuple[np.ndarray, np.ndarray]:
    """Solve ``u[i] + v[j] = cost[i, j]`` over the basis tree with ``u[0] = 0``."""
    rows, cols = cost.shape
    u = np.full(rows, np.nan)
    v = np.full(cols, np.nan)
    by_row = [[] for _ in range(rows)]
    by_col = [[] for _ in range(cols)]
    for i, j in basis:
        by_row[i].append(j)
        by_col[j].append(i)
    u[0] = 0.0
    queue = deque([("row", 0)])
    while queue:
        kind, index = queue.popleft()
        if kind == "row":
            for j in by_row[index]:
                if np.isnan(v[j]):
                    v[j] = cost[index, j] - u[index]
                    queue.append(("col", j))
        else:
            for i in by_col[index]:
                if np.isnan(u[i]):
                    u[i] = cost[i, index] - v[index]
                    queue.append(("row", i))
    return u, v


def _tree_path(basis: list[tuple[int, int]], row: int, col: int) -> list[tuple[int, int]]:
    """Basic cells on the tree path from row node ``row`` to column node ``col``."""
    adjacency: dict[tuple[str, int], list[tuple[tuple[str, int], tuple[int, int]]]] = {}
    for i, j in basis:
        adjacency.setdefault(("row", i), []).append((("col", j), (i, j)))
        adjacency.setdefault(("col", j), []).append((("row", i), (i, j)))
    start, goal = ("row", row), ("col", col)
    previous = {start: None}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        if node == goal:
            break
        for neighbour, cell in adjacency.get(node, []):
            if neighbour not in previous:
                previous[neighbour] = (node, cell)
                queue.append(neighbour)
    path = []
    node = goal
    while previous[node] is not None:
        node, cell = previous[node]
        path.append(cell)
    path.reverse()
    return path


def solve_transportation(
    supply: np.ndarray,
    demand: np.ndarray,
    cost: np.ndarray,
    max_pivots: int | None = None,
) -> np.ndarray:
    """Minimum-cost flow matrix for a balanced transportation problem.

    Args:
        supply: nonnegative amounts available at each source row
        demand: nonnegative amounts required at each destination column;
            ``demand.sum()`` equals ``supply.sum()`` up to rounding
        cost: per-unit shipping cost, shape ``(len(supply), len(demand))``
        max_pivots: safety cap on simplex pivots

    Returns:
        Flow matrix with row sums ``supply`` and column sums ``demand``
    """
    supply = np.asarray(supply, dtype=np.float64)
    demand = np.asarray(demand, dtype=np.float64)
    cost = np.asarray(cost, dtype=np.float64)
    rows, cols = cost.shape
    if rows == 0 or cols == 0:
        return np.zeros((rows, cols))
    flow, basis = northwest_corner(supply, demand)
    if rows == 1 or cols == 1:
        return flow

    threshold = _PRICING_TOL * max(1.0, float(np.max(np.abs(cost))))
    max_pivots = max_pivots or 50 * rows * cols + 100
    for _ in range(max_pivots):
        u, v = _potentials(cost, basis)
        reduced = cost - u[:, None] - v[None, :]
        basic = set(basis)
        entering = next(
            (
                (i, j)
                for i in range(rows)
                for j in range(cols)
                if (i, j) not in basic and reduced[i, j] < -threshold
            ),
            None,
        )
        if entering is None:
            return flow

        path = _tree_path(basis, entering[0], entering[1])
        length = len(path)
        donors = [cell for k, cell in enumerate(path) if (length - 1 - k) % 2 == 0]
        receivers = [cell for k, cell in enumerate(path) if (length - 1 - k) % 2 == 1]
        theta = min(flow[cell] for cell in donors)
        leaving = min(cell for cell in donors if flow[cell] == theta)

        flow[entering] += theta
        for cell in donors:
            flow[cell] -= theta
        for cell in receivers:
            flow[cell] += theta
        flow[leaving] = 0.0
        basis[basis.index(leaving)] = entering

    LOGGER.warning(f"transportation simplex stopped after {max_pivots} pivots without proving optimality")
    return flow
