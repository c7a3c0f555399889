import numpy as np
import pytest

from arnfit.errors import DimensionMismatchError, RankDeficientError
from arnfit.linalg import lstsq, lstsq_flagged, matvec


def test_identity_solve():
    x = lstsq(np.eye(3), np.array([1.0, 2.0, 3.0]))
    assert np.allclose(x, [1.0, 2.0, 3.0], rtol=0, atol=0)


def test_single_column_mean():
    x = lstsq(np.ones((2, 1)), np.array([1.0, 3.0]))
    assert x.shape == (1,)
    assert abs(x[0] - 2.0) < 1e-15


def test_matches_normal_equations_oracle():
    rng = np.random.default_rng(42)
    A = rng.standard_normal((8, 3))
    b = rng.standard_normal(8)
    x = lstsq(A, b)
    oracle = np.linalg.solve(A.T @ A, A.T @ b)
    assert np.max(np.abs(x - oracle)) <= 1e-10 * np.max(np.abs(oracle))


@pytest.mark.parametrize("complex_case", [False, True])
def test_square_solve_matches_direct_oracle(complex_case):
    rng = np.random.default_rng(7)
    for _ in range(50):
        n = int(rng.integers(1, 9))
        A = rng.standard_normal((n, n))
        if complex_case:
            A = A + 1j * rng.standard_normal((n, n))
        if np.linalg.cond(A) > 1e6:
            continue
        b = rng.standard_normal(n)
        x = lstsq(A, b)
        oracle = np.linalg.solve(A, b)
        scale = max(np.max(np.abs(oracle)), 1e-30)
        assert np.max(np.abs(x - oracle)) <= 1e-12 * scale


@pytest.mark.parametrize("complex_case", [False, True])
def test_residual_orthogonality(complex_case):
    rng = np.random.default_rng(11)
    for _ in range(200):
        m = int(rng.integers(2, 13))
        k = int(rng.integers(1, m + 1))
        A = rng.standard_normal((m, k))
        b = rng.standard_normal(m)
        if complex_case:
            A = A + 1j * rng.standard_normal((m, k))
            b = b + 1j * rng.standard_normal(m)
        x, flag = lstsq_flagged(A, b)
        assert not flag
        r = A.conj().T @ (A @ x - b)
        bound = 1e-10 * np.max(np.abs(A)) * max(np.max(np.abs(b)), 1e-30)
        assert np.max(np.abs(r)) <= bound


def test_complex_matrix_real_rhs_promotes():
    A = np.array([[1.0 + 1j, 0.0], [0.0, 2.0], [1.0, 1.0]])
    b = np.array([1.0, 2.0, 3.0])
    x = lstsq_flagged(A, b)[0]
    assert x.dtype == np.complex128
    r = A.conj().T @ (A @ x - b)
    assert np.max(np.abs(r)) <= 1e-12


def test_rank_deficient_rectangular_flags_and_strict_raises():
    A = np.zeros((6, 3))
    A[:, 0] = np.arange(1.0, 7.0)
    A[:, 1] = 2.0 * A[:, 0]  # exact multiple: rank 2 at most
    A[:, 2] = np.linspace(0.0, 1.0, 6)
    b = np.ones(6)
    x, flag = lstsq_flagged(A, b)
    assert flag
    assert np.all(np.isfinite(x))
    with pytest.raises(RankDeficientError):
        lstsq(A, b)


def test_rank_deficient_square_flags_but_completes():
    A = np.array([[1.0, 1.0], [1.0, 1.0]])
    x, flag = lstsq_flagged(A, np.array([1.0, 1.0]))
    assert flag
    assert x.shape == (2,)


def test_dimension_errors():
    with pytest.raises(DimensionMismatchError):
        lstsq(np.eye(3), np.ones(2))
    with pytest.raises(DimensionMismatchError):
        lstsq(np.ones((2, 3)), np.ones(2))  # underdetermined
    with pytest.raises(DimensionMismatchError):
        matvec(np.eye(2), np.ones(3))


def test_rejects_non_finite():
    with pytest.raises(ValueError):
        lstsq(np.array([[1.0, np.nan], [0.0, 1.0]]), np.ones(2))
    with pytest.raises(ValueError):
        lstsq(np.eye(2), np.array([1.0, np.inf]))


def test_matvec_examples():
    assert np.array_equal(matvec(np.eye(2), [5.0, 7.0]), [5.0, 7.0])
    assert np.array_equal(matvec([[1.0, 2.0], [3.0, 4.0]], [1.0, 1.0]), [3.0, 7.0])
    assert np.array_equal(matvec(np.zeros((3, 2)), [4.0, 5.0]), np.zeros(3))


def test_matvec_linearity():
    rng = np.random.default_rng(3)
    A = rng.standard_normal((5, 4))
    x = rng.standard_normal(4)
    y = rng.standard_normal(4)
    a, b = 2.5, -1.25
    lhs = matvec(A, a * x + b * y)
    rhs = a * matvec(A, x) + b * matvec(A, y)
    assert np.max(np.abs(lhs - rhs)) <= 1e-13 * np.max(np.abs(rhs) + 1)
