"""Polynomial and trigonometric least-squares fitting, two ways.

The classical route builds explicit power-basis (Vandermonde) columns and
is exponentially ill-conditioned at higher degrees; the Arnoldi route
orthogonalizes the basis on the fly and stays accurate. Both share one
Householder QR least-squares core, and an experiments module reproduces
four convergence studies contrasting them.
"""

from .arnoldi import (
    ArnoldiDiagnostics,
    ArnoldiModel,
    arnoldi_eval,
    arnoldi_eval_realpart,
    arnoldi_fit,
    arnoldi_fit_realpart,
)
from .errors import (
    ArnfitError,
    BreakdownError,
    DegreeTooHighError,
    DimensionMismatchError,
    DuplicateNodesError,
    PointsParseError,
    RankDeficientError,
    SchemaMismatchError,
)
from .experiments import (
    BlobCurve,
    ConformalModel,
    ConvergenceTable,
    blob_curve,
    chebyshev_runge,
    circle_curve,
    conformal_blob,
    conformal_map_points,
    conformal_table,
    fourier_extension,
    two_interval_sign,
)
from .linalg import lstsq, lstsq_flagged, matvec
from .modelio import load_model, save_model
from .vandermonde import (
    PlainModel,
    build_vandermonde,
    polyfit,
    polyfit_realpart,
    polyval,
    polyval_realpart,
)

__version__ = "0.1.0"

__all__ = [
    "ArnfitError",
    "ArnoldiDiagnostics",
    "ArnoldiModel",
    "BlobCurve",
    "BreakdownError",
    "ConformalModel",
    "ConvergenceTable",
    "DegreeTooHighError",
    "DimensionMismatchError",
    "DuplicateNodesError",
    "PlainModel",
    "PointsParseError",
    "RankDeficientError",
    "SchemaMismatchError",
    "arnoldi_eval",
    "arnoldi_eval_realpart",
    "arnoldi_fit",
    "arnoldi_fit_realpart",
    "blob_curve",
    "build_vandermonde",
    "chebyshev_runge",
    "circle_curve",
    "conformal_blob",
    "conformal_map_points",
    "conformal_table",
    "fourier_extension",
    "load_model",
    "lstsq",
    "lstsq_flagged",
    "matvec",
    "polyfit",
    "polyfit_realpart",
    "polyval",
    "polyval_realpart",
    "save_model",
    "two_interval_sign",
]
