"""Dense least-squares substrate: Householder QR and a deterministic matvec.

Everything here is numpy-backed, double precision, and pure: no function
mutates its arguments, so results are safe to share across threads and are
bit-reproducible across runs on one platform.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatchError, RankDeficientError

# Relative threshold under which a Householder diagonal flags the basis as
# numerically rank deficient.
RANK_TOL = 1e-14

_EPS = float(np.finfo(np.float64).eps)


def as_vector(v, name: str = "vector") -> np.ndarray:
    """Validate and return a 1-D float64/complex128 copy of ``v``."""
    arr = np.asarray(v)
    if arr.ndim != 1 or arr.size == 0:
        raise DimensionMismatchError(f"{name} must be 1-D and nonempty, got shape {arr.shape}")
    arr = arr.astype(np.complex128 if arr.dtype.kind == "c" else np.float64)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Validate and return a 2-D float64/complex128 copy of ``a``."""
    arr = np.asarray(a)
    if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
        raise DimensionMismatchError(f"{name} must be 2-D and nonempty, got shape {arr.shape}")
    arr = arr.astype(np.complex128 if arr.dtype.kind == "c" else np.float64)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def matvec(a, x) -> np.ndarray:
    """Dense matrix-vector product with a fixed summation order."""
    A = as_matrix(a, "A")
    v = as_vector(x, "x")
    if A.shape[1] != v.shape[0]:
        raise DimensionMismatchError(
            f"matvec: A has {A.shape[1]} columns but x has length {v.shape[0]}"
        )
    return A @ v


def _reflect(R, y, j, normx):
    """Apply the Householder reflector for column j to R[j:, j:] and y[j:]."""
    x = R[j:, j]
    x0 = x[0]
    phase = x0 / abs(x0) if x0 != 0 else 1.0
    v = x.copy()
    v[0] += phase * normx
    vnorm2 = np.vdot(v, v).real
    w = (v.conj() @ R[j:, j:]) * (2.0 / vnorm2)
    R[j:, j:] -= np.outer(v, w)
    y[j:] -= v * (2.0 * np.vdot(v, y[j:]) / vnorm2)
    # the reflector maps column j onto the axis exactly; store that value
    R[j, j] = -phase * normx
    R[j + 1 :, j] = 0.0


def _back_substitute(R, y, rank, k, dtype):
    x = np.zeros(k, dtype=dtype)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        for i in range(rank - 1, -1, -1):
            x[i] = (y[i] - R[i, i + 1 : rank] @ x[i + 1 : rank]) / R[i, i]
    return x


def lstsq_flagged(a, b) -> tuple[np.ndarray, bool]:
    """Least-squares solve returning ``(x, rank_deficient)``.

    Solves min ||A x - b||_2 by Householder QR. A square system is solved
    exactly (to rounding) with no column pivoting and no truncation, the
    diagonal only being monitored for the rank flag. An overdetermined
    system uses greedy column pivoting and drops trailing columns whose
    pivoted diagonal falls below max(m, k) * eps relative to the largest,
    the standard regularizing behavior of dense least-squares backslashes;
    the flag reports whether any truncation (or, for square systems, a
    diagonal below ``RANK_TOL`` relative) occurred.

    The solve always completes; callers that must not proceed on a rank
    deficient basis should use :func:`lstsq`.
    """
    A = as_matrix(a, "A")
    rhs = as_vector(b, "b")
    m, k = A.shape
    if rhs.shape[0] != m:
        raise DimensionMismatchError(f"lstsq: A is {m}x{k} but b has length {rhs.shape[0]}")
    if m < k:
        raise DimensionMismatchError(f"lstsq: underdetermined system ({m} rows, {k} cols)")
    dtype = np.promote_types(A.dtype, rhs.dtype)
    R = A.astype(dtype, copy=True)
    y = rhs.astype(dtype, copy=True)

    if m == k:
        maxdiag = 0.0
        flag = False
        for j in range(k):
            normx = np.linalg.norm(R[j:, j])
            if normx > 0.0:
                _reflect(R, y, j, normx)
            d = abs(R[j, j])
            maxdiag = max(maxdiag, d)
            if d <= RANK_TOL * maxdiag:
                flag = True
        return _back_substitute(R, y, k, k, dtype), flag

    perm = np.arange(k)
    tol = max(m, k) * _EPS
    maxdiag = 0.0
    rank = 0
    flag = False
    for j in range(k):
        norms2 = np.real(np.conj(R[j:, j:]) * R[j:, j:]).sum(axis=0)
        p = int(np.argmax(norms2)) + j
        if p != j:
            R[:, [j, p]] = R[:, [p, j]]
            perm[[j, p]] = perm[[p, j]]
        normx = float(np.sqrt(norms2[p - j]))
        if normx > 0.0:
            _reflect(R, y, j, normx)
        d = abs(R[j, j])
        maxdiag = max(maxdiag, d)
        if d <= tol * maxdiag:
            flag = True
            break
        rank = j + 1
    xs = _back_substitute(R, y, rank, k, dtype)
    out = np.zeros(k, dtype=dtype)
    out[perm] = xs
    return out, flag


def lstsq(a, b) -> np.ndarray:
    """Least-squares solve that raises :class:`RankDeficientError` on a flag.

    Same computation as :func:`lstsq_flagged`; use that variant to keep the
    (regularized) solution together with the warning flag.
    """
    x, flag = lstsq_flagged(a, b)
    if flag:
        raise RankDeficientError(
            "numerically rank-deficient least-squares basis "
            f"(shape {np.asarray(a).shape})"
        )
    return x
