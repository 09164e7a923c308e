"""Dense complex linear algebra: pivoted solves and greedy basis extraction."""

from __future__ import annotations

import numpy as np
import scipy.linalg

from .errors import SingularMatrixError

# A pivot this small relative to the largest is treated as singular.
PIVOT_REL_TOL = 1e-12


def solve(M: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve M @ X = b for square M via pivoted LU.

    Raises SingularMatrixError (with the offending pivot magnitude) when
    the elimination produces a pivot at or below PIVOT_REL_TOL times the
    largest pivot.
    """
    M = np.asarray(M, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    if M.shape[0] == 0:
        return np.zeros_like(b)
    lu, piv = scipy.linalg.lu_factor(M, check_finite=False)
    pivots = np.abs(np.diag(lu))
    top = float(np.max(pivots)) if pivots.size else 0.0
    worst = float(np.min(pivots))
    if top == 0.0 or worst <= PIVOT_REL_TOL * top:
        raise SingularMatrixError(worst)
    return scipy.linalg.lu_solve((lu, piv), b, check_finite=False)


def rank_basis(columns, tol: float = 1e-9) -> tuple[list[int], np.ndarray]:
    """Greedy maximal-independent-subset selection, scanning in input order.

    ``columns`` is a sequence of equal-length 1-D complex vectors (or a 2-D
    array whose columns are the vectors). A column joins the basis when its
    orthogonal residual against the columns already selected exceeds
    ``tol`` times its own norm. Returns the selected indices and a
    coordinate matrix X (len(selected) x n_columns) with
    ``columns[:, selected] @ X ~= columns``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if isinstance(columns, np.ndarray) and columns.ndim == 2:
        cols = np.asarray(columns, dtype=complex)
    else:
        seq = [np.asarray(c, dtype=complex).ravel() for c in columns]
        if not seq:
            return [], np.zeros((0, 0), dtype=complex)
        cols = np.column_stack(seq)
    height, ncols = cols.shape
    selected: list[int] = []
    ortho = np.zeros((height, 0), dtype=complex)
    for i in range(ncols):
        v = cols[:, i]
        norm = float(np.linalg.norm(v))
        if norm == 0.0:
            continue
        r = v - ortho @ (ortho.conj().T @ v)
        # second orthogonalization pass keeps the basis numerically clean
        r = r - ortho @ (ortho.conj().T @ r)
        if float(np.linalg.norm(r)) > tol * norm:
            selected.append(i)
            ortho = np.column_stack([ortho, r / np.linalg.norm(r)])
    if not selected:
        return [], np.zeros((0, ncols), dtype=complex)
    basis = cols[:, selected]
    coords, *_ = np.linalg.lstsq(basis, cols, rcond=None)
    return selected, coords
