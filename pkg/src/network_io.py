"""Reading and writing networks, sampled spaces and result tables.

JSON networks are objects with ``labels`` and ``dissim``; sampled spaces add
a ``points`` array of barycentric tuples. CSV networks and distance
matrices put the labels in the first row and one matrix row per line after
it. Floats are written with ``repr`` so reloading is exact.
"""

import csv
import io
import json
from collections.abc import Sequence

import numpy as np

from src import DEFAULT_TOLERANCE, get_logger
from src.errors import NetmetricError, ParseError
from src.filesystem_utils import write_text
from src.interior import BarycentricPoint
from src.network import Network, validate_network
from src.sampled_space import SampledSpace, augment_with

LOGGER = get_logger()

JSON_EXTENSIONS = (".json",)
CSV_EXTENSIONS = (".csv",)


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as handle:
            return handle.read()
    except OSError as e:
        raise ParseError(f"cannot read file: {e.strerror or e!s}", path=path) from e


def _parse_json(path: str, text: str) -> dict:
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, path=path, line=e.lineno, column=e.colno) from e
    if not isinstance(document, dict) or "dissim" not in document:
        raise ParseError("expected an object with 'labels' and 'dissim'", path=path, line=1, column=1)
    return document


def _parse_csv_matrix(path: str, text: str) -> tuple[list[str], list[list[float]]]:
    rows = [row for row in csv.reader(io.StringIO(text)) if any(cell.strip() for cell in row)]
    if not rows:
        raise ParseError("empty CSV file", path=path, line=1, column=1)
    labels = [cell.strip() for cell in rows[0]]
    matrix = []
    for line, row in enumerate(rows[1:], start=2):
        if len(row) != len(labels):
            raise ParseError(f"expected {len(labels)} columns, found {len(row)}", path=path, line=line, column=1)
        values = []
        for column, cell in enumerate(row, start=1):
            try:
                values.append(float(cell))
            except ValueError as e:
                raise ParseError(f"'{cell}' is not a number", path=path, line=line, column=column) from e
        matrix.append(values)
    if len(matrix) != len(labels):
        raise ParseError(f"expected {len(labels)} matrix rows, found {len(matrix)}", path=path, line=len(rows) + 1)
    return labels, matrix


def _json_labels(path: str, document: dict) -> list | None:
    labels = document.get("labels")
    if labels is not None and not isinstance(labels, list):
        raise ParseError(f"'labels' must be an array, got {type(labels).__name__}", path=path, line=1, column=1)
    return labels


def _format_csv(labels: Sequence[str], rows: Sequence[Sequence]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(labels)
    for row in rows:
        writer.writerow([repr(float(value)) if isinstance(value, (float, np.floating)) else value for value in row])
    return buffer.getvalue()


def _format_json(document: dict) -> str:
    return json.dumps(document, indent=2) + "\n"


# =============================================================================
# Networks
# =============================================================================


def load_network(path: str, tol: float = DEFAULT_TOLERANCE) -> Network:
    """Load a network from ``.json`` or ``.csv``.

    ``tol`` bounds the diagonal and asymmetry that validation lets through.

    Raises:
        ParseError: unreadable or malformed file (with line and column)
        ValidationError: the matrix violates a network invariant
    """
    text = _read(path)
    if path.lower().endswith(CSV_EXTENSIONS):
        labels, matrix = _parse_csv_matrix(path, text)
        return validate_network(matrix, labels, tol)
    document = _parse_json(path, text)
    return validate_network(document["dissim"], _json_labels(path, document), tol)


def save_network(net: Network, path: str) -> str:
    """Write ``net`` as JSON or CSV according to the file extension."""
    if path.lower().endswith(CSV_EXTENSIONS):
        return write_text(path, _format_csv(net.labels, net.dissim.tolist()))
    return write_text(path, _format_json(net.to_dict()))


# =============================================================================
# Sampled Spaces
# =============================================================================


def save_sampled_space(space: SampledSpace, path: str) -> str:
    """Write a sampled space as JSON (network format plus ``points``)."""
    return write_text(path, _format_json(space.to_dict()))


def load_sampled_space(path: str) -> SampledSpace:
    """Load a sampled space written by :func:`save_sampled_space`.

    The leading vertex points define the base network; the induced matrix is
    recomputed from it, so a tampered ``dissim`` block cannot slip through.
    """
    document = _parse_json(path, _read(path))
    if "points" not in document:
        raise ParseError("sampled space needs a 'points' array", path=path, line=1, column=1)
    try:
        points = [BarycentricPoint.from_weights(weights) for weights in document["points"]]
    except (NetmetricError, TypeError, ValueError) as e:
        raise ParseError(f"invalid barycentric point: {e!s}", path=path) from e
    base_size = points[0].size if points else 0
    if base_size == 0 or len(points) < base_size:
        raise ParseError("points array does not start with the base vertices", path=path)
    for index in range(base_size):
        if points[index].vertex_index() != index:
            raise ParseError(f"point {index} is not base vertex {index}", path=path)
    labels = _json_labels(path, document) or [str(k) for k in range(len(points))]
    try:
        dissim = np.asarray(document["dissim"], dtype=np.float64).reshape(len(points), len(points))
    except (TypeError, ValueError) as e:
        raise ParseError(f"dissim is not a {len(points)}x{len(points)} matrix", path=path) from e
    base = validate_network(dissim[:base_size, :base_size], labels[:base_size])
    return augment_with(base, points[base_size:])


# =============================================================================
# Result Tables
# =============================================================================


def save_matrix_csv(labels: Sequence[str], matrix: np.ndarray, path: str) -> str:
    """Write a labelled square matrix (header row of labels, one row per label)."""
    return write_text(path, _format_csv(list(labels), np.asarray(matrix, dtype=np.float64).tolist()))


def load_matrix_csv(path: str) -> tuple[list[str], np.ndarray]:
    """Load a labelled square matrix written by :func:`save_matrix_csv`."""
    labels, matrix = _parse_csv_matrix(path, _read(path))
    return labels, np.asarray(matrix, dtype=np.float64)


EMBEDDING_COLUMNS = ("name", "x", "y", "model")


def save_embedding_csv(names: Sequence[str], coords: np.ndarray, models: Sequence[str], path: str) -> str:
    """Write 2D coordinates with columns ``name, x, y, model``."""
    rows = [
        [name, float(coords[k, 0]), float(coords[k, 1]) if coords.shape[1] > 1 else 0.0, model]
        for k, (name, model) in enumerate(zip(names, models, strict=True))
    ]
    return write_text(path, _format_csv(EMBEDDING_COLUMNS, rows))


def load_embedding_csv(path: str) -> tuple[list[str], np.ndarray, list[str]]:
    """Load an embedding table written by :func:`save_embedding_csv`."""
    rows = list(csv.reader(io.StringIO(_read(path))))
    if not rows or tuple(rows[0]) != EMBEDDING_COLUMNS:
        raise ParseError(f"expected header {','.join(EMBEDDING_COLUMNS)}", path=path, line=1, column=1)
    names, coords, models = [], [], []
    for line, row in enumerate(rows[1:], start=2):
        if len(row) != len(EMBEDDING_COLUMNS):
            raise ParseError(f"expected {len(EMBEDDING_COLUMNS)} columns", path=path, line=line, column=1)
        try:
            coords.append([float(row[1]), float(row[2])])
        except ValueError as e:
            raise ParseError("coordinate is not a number", path=path, line=line, column=2) from e
        names.append(row[0])
        models.append(row[3])
    return names, np.asarray(coords, dtype=np.float64).reshape(-1, 2), models


def save_json(document: dict, path: str) -> str:
    """Write a JSON document with stable formatting."""
    return write_text(path, _format_json(document))


