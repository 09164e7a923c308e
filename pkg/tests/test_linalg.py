import numpy as np
import pytest
from numpy.testing import assert_allclose

from multipoint.errors import SingularMatrixError
from multipoint.linalg import rank_basis, solve


def test_solve_identity():
    x = solve(np.eye(2), np.array([3.0, 4.0]))
    assert_allclose(x, [3.0, 4.0])


def test_solve_2x2():
    m = np.array([[1.0, 1.0], [1.0, -1.0]])
    x = solve(m, np.array([1.0, 1.0]))
    assert_allclose(x, [1.0, 0.0], atol=1e-14)


def test_solve_singular_reports_pivot():
    m = np.array([[1.0, 1.0], [1.0, 1.0]])
    with pytest.raises(SingularMatrixError) as exc:
        solve(m, np.array([1.0, 2.0]))
    assert exc.value.pivot <= 1e-12


def test_solve_rejects_non_square():
    with pytest.raises(ValueError):
        solve(np.ones((2, 3)), np.ones(2))


def test_solve_empty():
    out = solve(np.zeros((0, 0)), np.zeros(0))
    assert out.shape == (0,)


def test_solve_residual_random_well_conditioned():
    rng = np.random.default_rng(11)
    checked = 0
    while checked < 25:
        n = int(rng.integers(2, 9))
        m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        if np.linalg.cond(m) > 1e6:
            continue
        b = rng.normal(size=n) + 1j * rng.normal(size=n)
        x = solve(m, b)
        resid = np.max(np.abs(m @ x - b))
        assert resid <= 1e-9 * np.max(np.abs(b))
        checked += 1


def test_rank_basis_example():
    cols = [np.array([1.0, 0.0]), np.array([2.0, 0.0]), np.array([0.0, 1.0])]
    idx, coords = rank_basis(cols)
    assert idx == [0, 2]
    assert_allclose(coords[:, 1], [2.0, 0.0], atol=1e-12)


def test_rank_basis_zero_column():
    idx, coords = rank_basis([np.zeros(3)])
    assert idx == []
    assert coords.shape == (0, 1)


def test_rank_basis_recovers_full_rank():
    rng = np.random.default_rng(5)
    while True:
        m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        if abs(np.linalg.det(m)) > 1e-3:
            break
    cols = [m[:, j] for j in range(4)]
    cols += [m[:, 0] + m[:, 1], m[:, 2] + m[:, 3]]
    idx, coords = rank_basis(cols)
    assert idx == [0, 1, 2, 3]
    stacked = np.column_stack(cols)
    assert_allclose(stacked[:, idx] @ coords, stacked, atol=1e-9)


def test_rank_basis_empty():
    idx, coords = rank_basis([])
    assert idx == [] and coords.shape == (0, 0)
