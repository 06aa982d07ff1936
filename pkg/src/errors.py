"""Exception hierarchy.

Library code raises these; only the command-line front end catches them
and turns them into exit codes.
"""


class NetmetricError(Exception):
    """Base class for every error raised by this package."""


# =============================================================================
# Network Validation
# =============================================================================


class ValidationError(NetmetricError):
    """A dissimilarity matrix or label list violates a network invariant."""

    def __init__(self, message: str, indices: tuple = ()):
        """Keep the offending indices for diagnostics."""
        super().__init__(message)
        self.indices = indices


class ShapeMismatch(ValidationError):
    """Matrix is not square, is empty, or disagrees with the label count."""


class AsymmetricMatrix(ValidationError):
    """``dissim[i][j] != dissim[j][i]``."""


class NonzeroDiagonal(ValidationError):
    """``dissim[i][i] != 0``."""


class NonpositiveOffDiagonal(ValidationError):
    """``dissim[i][j] <= 0`` for ``i != j`` (or not finite)."""


class DuplicateLabel(ValidationError):
    """Two nodes share a label."""


class ParseError(NetmetricError):
    """A network or matrix file could not be parsed."""

    def __init__(self, message: str, path: str = "", line: int = 0, column: int = 0):
        """Record where parsing failed."""
        super().__init__(f"{path}:{line}:{column}: {message}" if path else message)
        self.path = path
        self.line = line
        self.column = column


# =============================================================================
# Points, Maps and Correspondences
# =============================================================================


class DimensionMismatch(NetmetricError):
    """An argument is sized for a different network."""


class InvalidPoint(NetmetricError):
    """Barycentric coordinates are negative or do not sum to one."""


class DuplicatePoint(NetmetricError):
    """A sample point coincides with another point of the same space."""


class InvalidMapping(NetmetricError):
    """A node mapping has an image outside the target node range."""


class InvalidCorrespondence(NetmetricError):
    """A correspondence leaves a source or target node uncovered."""


# =============================================================================
# Computation Guards
# =============================================================================


class TooLarge(NetmetricError):
    """An exhaustive enumeration exceeds its guard."""

    def __init__(self, guard: str, size: float, limit: float):
        """Describe which guard tripped."""
        super().__init__(f"{guard}: {size:g} exceeds the enumeration limit {limit:g}")
        self.guard = guard
        self.size = size
        self.limit = limit


class DegenerateInput(NetmetricError):
    """Input too small or degenerate for the requested computation."""


class InsufficientData(NetmetricError):
    """Not enough classes or samples for an evaluation."""


class ConfigInfeasible(NetmetricError):
    """Requested settings cannot be run."""


# =============================================================================
# Generators
# =============================================================================


class GeneratorError(NetmetricError):
    """Invalid generator parameters."""


class InvalidN(GeneratorError):
    """Node count below the generator minimum."""


class InvalidGamma(GeneratorError):
    """Gamma must be positive."""


class InvalidSigma(GeneratorError):
    """Kernel width must be positive."""


class InvalidFeatureDim(GeneratorError):
    """Feature dimension below two leaves Pearson correlation undefined."""


class DegenerateFeature(GeneratorError):
    """Repeated zero-variance feature draws."""
