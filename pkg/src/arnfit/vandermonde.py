"""Classical power-basis fitting and evaluation.

This is the textbook route: build the matrix of monomial columns, solve the
least-squares system, evaluate by an explicit power-matrix product. It is
exponentially ill-conditioned for most node sets and is kept that way on
purpose; the stable alternative lives in :mod:`arnfit.arnoldi`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegreeTooHighError, DuplicateNodesError
from .linalg import as_vector, lstsq_flagged


def check_distinct(x: np.ndarray, name: str = "nodes") -> None:
    """Raise :class:`DuplicateNodesError` if two entries compare exactly equal."""
    if np.unique(x).size != x.size:
        raise DuplicateNodesError(f"{name} contain exactly equal entries")


@dataclass(frozen=True)
class PlainModel:
    """Power-basis coefficients c0..cn, lowest degree first.

    ``realpart`` marks models fitted to real data through the stacked
    real system; their evaluations are meant to be taken as Re(p(z)) and
    the constant coefficient has exactly zero imaginary part.
    """

    degree: int
    coeffs: np.ndarray
    realpart: bool = False
    rank_warning: bool = field(default=False, compare=False)

    def __post_init__(self):
        c = as_vector(self.coeffs, "coeffs")
        if c.shape[0] != self.degree + 1:
            raise ValueError(f"expected {self.degree + 1} coefficients, got {c.shape[0]}")
        if self.realpart and (c.dtype.kind != "c" or c[0].imag != 0.0):
            raise ValueError("realpart model requires complex coeffs with Im(c0) == 0")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @property
    def is_complex(self) -> bool:
        return self.coeffs.dtype.kind == "c"


def build_vandermonde(x, degree: int) -> np.ndarray:
    """Matrix with columns x^0, x^1, ..., x^degree (lowest power first).

    Columns are built by cumulative multiplication, one product per column.
    """
    v = as_vector(x, "x")
    if degree < 0:
        raise ValueError("degree must be >= 0")
    A = np.empty((v.shape[0], degree + 1), dtype=v.dtype)
    A[:, 0] = 1.0
    for j in range(1, degree + 1):
        A[:, j] = A[:, j - 1] * v
    return A


def polyfit(x, f, degree: int) -> PlainModel:
    """Least-squares power-basis fit of data ``f`` at nodes ``x``.

    With degree == len(x) - 1 the system is square and the result
    interpolates. Rank deficiency never aborts the fit; it is reported on
    the model's ``rank_warning`` flag so that instability studies can run
    to completion.
    """
    xv = as_vector(x, "x")
    fv = as_vector(f, "f")
    if xv.shape[0] != fv.shape[0]:
        raise ValueError(f"x has {xv.shape[0]} entries but f has {fv.shape[0]}")
    if degree > xv.shape[0] - 1:
        raise DegreeTooHighError(f"degree {degree} needs at least {degree + 1} points, got {xv.shape[0]}")
    check_distinct(xv)
    c, flag = lstsq_flagged(build_vandermonde(xv, degree), fv)
    return PlainModel(degree=degree, coeffs=c, rank_warning=flag)


def polyval(model: PlainModel, s) -> np.ndarray:
    """Evaluate the fitted polynomial at ``s`` via the power-matrix product."""
    sv = as_vector(s, "s")
    if model.is_complex and sv.dtype.kind != "c":
        sv = sv.astype(np.complex128)
    return build_vandermonde(sv, model.degree) @ model.coeffs


def polyfit_realpart(z, f, degree: int) -> PlainModel:
    """Fit real data by the real part of a complex power series.

    Writing c_k = a_k + i*b_k, the target is
    f(z) ~ sum_k (a_k Re z^k - b_k Im z^k), so the solve is the stacked
    real system [Re A | Im A(:, 1:)] for (a; -b), folded back into complex
    coefficients with b_0 = 0. Requires len(z) >= 2*degree + 1.
    """
    zv = as_vector(z, "z")
    fv = as_vector(f, "f")
    if zv.dtype.kind != "c":
        raise ValueError("realpart fit requires complex abscissae")
    if fv.dtype.kind == "c":
        raise ValueError("realpart fit requires real data values")
    if zv.shape[0] != fv.shape[0]:
        raise ValueError(f"z has {zv.shape[0]} entries but f has {fv.shape[0]}")
    if 2 * degree + 1 > zv.shape[0]:
        raise DegreeTooHighError(
            f"degree {degree} needs at least {2 * degree + 1} points, got {zv.shape[0]}"
        )
    check_distinct(zv)
    A = build_vandermonde(zv, degree)
    stacked = np.column_stack([A.real, A[:, 1:].imag])
    sol, flag = lstsq_flagged(stacked, fv)
    c = sol[: degree + 1] - 1j * np.concatenate(([0.0], sol[degree + 1 :]))
    return PlainModel(degree=degree, coeffs=c, realpart=True, rank_warning=flag)


def polyval_realpart(model: PlainModel, s) -> np.ndarray:
    """Real part of the power-basis evaluation at complex points ``s``."""
    return polyval(model, s).real
