"""Exception classes shared across the library and the CLI.

Each class maps to one machine-readable error code; the CLI prints the
class name as the first token on stderr and exits with the matching code.
"""


class ArnfitError(Exception):
    """Base class for all library errors."""


class DimensionMismatchError(ArnfitError):
    """Operand shapes do not conform."""


class RankDeficientError(ArnfitError):
    """The factorization detected a numerically rank-deficient basis."""


class DuplicateNodesError(ArnfitError):
    """Two fitting abscissae compare exactly equal."""


class DegreeTooHighError(ArnfitError):
    """Requested degree needs more data points than were supplied."""


class BreakdownError(ArnfitError):
    """The orthogonalization residual vanished: Krylov space exhausted."""


class SchemaMismatchError(ArnfitError):
    """A model file has an unknown schema version or malformed fields."""


class PointsParseError(ArnfitError):
    """A points/grid CSV failed to parse; carries a 1-based line number."""

    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line
