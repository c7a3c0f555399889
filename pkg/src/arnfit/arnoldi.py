"""Arnoldi-orthogonalized polynomial fitting and evaluation.

Instead of monomial columns, the basis is built one vector at a time by
modified Gram-Schmidt applied to the Krylov sequence of X = diag(x) with
start vector all-ones. The orthogonalization coefficients land in a
Hessenberg recurrence matrix H which is all that evaluation needs: the
same recurrence replayed at new points rebuilds the basis there. The
columns approximate polynomials orthogonal with respect to the uniform
discrete measure on the nodes, hence a well-conditioned basis even at
degrees where the monomials are numerically dependent.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import BreakdownError, DegreeTooHighError
from .linalg import as_vector, lstsq_flagged
from .vandermonde import check_distinct

# A step whose residual norm falls below this threshold, relative to the
# node scale, has exhausted the Krylov space.
BREAKDOWN_TOL = 1e-14


@dataclass(frozen=True)
class ArnoldiDiagnostics:
    """Optional byproducts of a fit: the basis and its orthogonality defect."""

    basis: np.ndarray
    orthogonality_defect: float
    breakdown: bool = False


@dataclass(frozen=True)
class ArnoldiModel:
    """Coefficients in the orthogonalized basis plus the recurrence matrix.

    ``recurrence`` is the (n+1) x n matrix whose column k holds the
    orthogonalization coefficients of step k+1; entries below the first
    subdiagonal are structural zeros and every subdiagonal entry is a
    positive real norm. ``coeffs`` has length n+1. Together they determine
    evaluation anywhere; the basis itself is not retained unless asked for.
    """

    degree: int
    coeffs: np.ndarray
    recurrence: np.ndarray
    realpart: bool = False
    rank_warning: bool = field(default=False, compare=False)
    diagnostics: ArnoldiDiagnostics | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        d = as_vector(self.coeffs, "coeffs")
        H = np.asarray(self.recurrence)
        if H.shape != (self.degree + 1, self.degree):
            raise ValueError(f"recurrence must be {self.degree + 1}x{self.degree}, got {H.shape}")
        if d.shape[0] != self.degree + 1:
            raise ValueError(f"expected {self.degree + 1} coefficients, got {d.shape[0]}")
        if self.realpart and (d.dtype.kind != "c" or d[0].imag != 0.0):
            raise ValueError("realpart model requires complex coeffs with Im(d0) == 0")
        sub = np.diagonal(H, offset=-1)
        if sub.size and not (np.all(sub.real > 0) and np.all(sub.imag == 0)):
            raise ValueError("recurrence subdiagonal must be real positive")
        d.flags.writeable = False
        H = H.copy()
        H.flags.writeable = False
        object.__setattr__(self, "coeffs", d)
        object.__setattr__(self, "recurrence", H)

    @property
    def is_complex(self) -> bool:
        return self.coeffs.dtype.kind == "c"


def _orthogonalize(x: np.ndarray, degree: int, reorth: int) -> tuple[np.ndarray, np.ndarray]:
    """Run modified Gram-Schmidt on the Krylov sequence of diag(x).

    Returns (Q, H) with Q m x (n+1), columns of 2-norm sqrt(m) so entries
    are O(1), and H the recurrence matrix. Inner products carry the 1/m
    normalization. ``reorth=1`` adds one reorthogonalization sweep per
    column, accumulating the corrections into H so the recurrence stays
    exact for replay.
    """
    m = x.shape[0]
    dtype = np.complex128 if x.dtype.kind == "c" else np.float64
    Q = np.empty((m, degree + 1), dtype=dtype)
    Q[:, 0] = 1.0
    H = np.zeros((degree + 1, degree), dtype=dtype)
    sqrt_m = np.sqrt(m)
    scale = float(np.max(np.abs(x)))
    for k in range(1, degree + 1):
        v = x * Q[:, k - 1]
        for j in range(k):
            h = np.vdot(Q[:, j], v) / m
            H[j, k - 1] = h
            v -= h * Q[:, j]
        if reorth:
            for j in range(k):
                h = np.vdot(Q[:, j], v) / m
                H[j, k - 1] += h
                v -= h * Q[:, j]
        hk = np.linalg.norm(v) / sqrt_m
        if hk <= BREAKDOWN_TOL * scale:
            raise BreakdownError(
                f"orthogonalization residual vanished at step {k} "
                f"(norm {hk:.3e} vs scale {scale:.3e})"
            )
        H[k, k - 1] = hk
        Q[:, k] = v / hk
    return Q, H


def arnoldi_fit(x, f, degree: int, *, reorth: int = 0, keep_basis: bool = False) -> ArnoldiModel:
    """Fit data by least squares in the orthogonalized Krylov basis.

    Parameters
    ----------
    x, f : array_like
        Distinct nodes (real or complex) and data values.
    degree : int
        Polynomial degree, at most len(x) - 1.
    reorth : int
        0 for single-pass modified Gram-Schmidt (default), 1 to add one
        reorthogonalization sweep per column.
    keep_basis : bool
        Retain the basis matrix and its orthogonality defect on
        ``model.diagnostics`` (memory is the only reason not to).
    """
    xv = as_vector(x, "x")
    fv = as_vector(f, "f")
    if xv.shape[0] != fv.shape[0]:
        raise ValueError(f"x has {xv.shape[0]} entries but f has {fv.shape[0]}")
    if degree < 0:
        raise ValueError("degree must be >= 0")
    if degree > xv.shape[0] - 1:
        raise DegreeTooHighError(f"degree {degree} needs at least {degree + 1} points, got {xv.shape[0]}")
    check_distinct(xv)
    Q, H = _orthogonalize(xv, degree, reorth)
    d, flag = lstsq_flagged(Q, fv)
    diagnostics = None
    if keep_basis:
        m = xv.shape[0]
        gram = (Q.conj().T @ Q) / m - np.eye(degree + 1)
        diagnostics = ArnoldiDiagnostics(
            basis=Q, orthogonality_defect=float(np.max(np.abs(gram)))
        )
    return ArnoldiModel(
        degree=degree, coeffs=d, recurrence=H, rank_warning=flag, diagnostics=diagnostics
    )


def arnoldi_eval(model: ArnoldiModel, s) -> np.ndarray:
    """Evaluate by replaying the recurrence at the points ``s``.

    The basis is rebuilt column by column with the stored coefficients,
    using the same operations in the same order as the fit, so evaluating
    at the original nodes reproduces the fitted values bit for bit.
    """
    sv = as_vector(s, "s")
    H = model.recurrence
    dtype = np.promote_types(H.dtype, sv.dtype)
    W = np.empty((sv.shape[0], model.degree + 1), dtype=dtype)
    W[:, 0] = 1.0
    for k in range(1, model.degree + 1):
        w = sv * W[:, k - 1]
        for j in range(k):
            w -= H[j, k - 1] * W[:, j]
        w /= H[k, k - 1]
        W[:, k] = w
    return W @ model.coeffs


def arnoldi_fit_realpart(z, f, degree: int, *, reorth: int = 0, keep_basis: bool = False) -> ArnoldiModel:
    """Fit real data by the real part of a series in the orthogonal basis.

    The basis is built by complex orthogonalization on ``z``; the
    coefficients solve the stacked real system [Re Q | Im Q(:, 1:)], folded
    back into complex form with zero imaginary part on the constant term,
    mirroring :func:`arnfit.vandermonde.polyfit_realpart`. Requires
    len(z) >= 2*degree + 1.
    """
    zv = as_vector(z, "z")
    fv = as_vector(f, "f")
    if zv.dtype.kind != "c":
        raise ValueError("realpart fit requires complex abscissae")
    if fv.dtype.kind == "c":
        raise ValueError("realpart fit requires real data values")
    if zv.shape[0] != fv.shape[0]:
        raise ValueError(f"z has {zv.shape[0]} entries but f has {fv.shape[0]}")
    if degree < 0:
        raise ValueError("degree must be >= 0")
    if 2 * degree + 1 > zv.shape[0]:
        raise DegreeTooHighError(
            f"degree {degree} needs at least {2 * degree + 1} points, got {zv.shape[0]}"
        )
    check_distinct(zv)
    Q, H = _orthogonalize(zv, degree, reorth)
    stacked = np.column_stack([Q.real, Q[:, 1:].imag])
    sol, flag = lstsq_flagged(stacked, fv)
    d = sol[: degree + 1] - 1j * np.concatenate(([0.0], sol[degree + 1 :]))
    diagnostics = None
    if keep_basis:
        m = zv.shape[0]
        gram = (Q.conj().T @ Q) / m - np.eye(degree + 1)
        diagnostics = ArnoldiDiagnostics(
            basis=Q, orthogonality_defect=float(np.max(np.abs(gram)))
        )
    return ArnoldiModel(
        degree=degree,
        coeffs=d,
        recurrence=H,
        realpart=True,
        rank_warning=flag,
        diagnostics=diagnostics,
    )


def arnoldi_eval_realpart(model: ArnoldiModel, s) -> np.ndarray:
    """Real part of the recurrence-replay evaluation at complex points."""
    sv = as_vector(s, "s")
    if sv.dtype.kind != "c":
        sv = sv.astype(np.complex128)
    return arnoldi_eval(model, sv).real
