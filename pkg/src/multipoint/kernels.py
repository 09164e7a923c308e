"""Finite-rank positive-definite kernels and their node-polynomial factorization.

A kernel K(z, w) = C(z) C(w)* with a polynomial row C is positive by
construction. Decomposing each entry of C yields a matrix factor E with
C(z) = Z(z) E(p(z)), so K factors through the node polynomial as
Z(z) L(p(z), p(w)) Z(w)* with L(lam, mu) = E(lam) E(mu)*.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .decompose import decompose_polynomial
from .errors import PreconditionError
from .nodes import NodeSet, monomial_row
from .operators import CheckReport
from .poly import Polynomial


@dataclass(frozen=True)
class FiniteRankKernel:
    """K(z, w) = sum_t C_t(z) * conj(C_t(w)) for a polynomial row C."""

    factors: tuple[Polynomial, ...]

    def __init__(self, factors):
        factors = tuple(
            f if isinstance(f, Polynomial) else Polynomial((complex(f),))
            for f in factors
        )
        object.__setattr__(self, "factors", factors)

    @property
    def rank_bound(self) -> int:
        return len(self.factors)

    def row_at(self, z) -> np.ndarray:
        return np.array([f(z) for f in self.factors])

    def __call__(self, z, w) -> complex:
        return complex(self.row_at(z) @ self.row_at(w).conj())


@dataclass(frozen=True)
class KernelFactor:
    """Matrix factor E over a node set; L(lam, mu) = E(lam) E(mu)*."""

    entries: np.ndarray                            # (total_degree, rank) of Polynomial
    nodes: NodeSet

    def factor_at(self, lam) -> np.ndarray:
        size, rank = self.entries.shape
        out = np.empty((size, rank), dtype=complex)
        for i in range(size):
            for t in range(rank):
                out[i, t] = self.entries[i, t](lam)
        return out

    def kernel_at(self, lam, mu) -> np.ndarray:
        """L(lam, mu), an (total_degree x total_degree) matrix."""
        return self.factor_at(lam) @ self.factor_at(mu).conj().T


def kernel_eval(kernel: FiniteRankKernel, z, w) -> complex:
    """K(z, w) from the factored form."""
    return kernel(z, w)


def factor_kernel(kernel: FiniteRankKernel, nodes: NodeSet) -> KernelFactor:
    """Push the kernel factor row through the decomposition."""
    size = nodes.total_degree
    rank = kernel.rank_bound
    entries = np.empty((size, rank), dtype=object)
    for t, c in enumerate(kernel.factors):
        comps = decompose_polynomial(c, nodes).components
        for i in range(size):
            entries[i, t] = comps[i]
    entries.setflags(write=False)
    return KernelFactor(entries, nodes)


def verify_kernel_identity(kernel: FiniteRankKernel, factor: KernelFactor,
                           grid, tol: float = 1e-9) -> CheckReport:
    """Max residual of K(z,w) = Z(z) L(p(z), p(w)) Z(w)* over grid pairs."""
    grid = np.asarray(grid, dtype=complex).ravel()
    nodes = factor.nodes
    size = nodes.total_degree
    p = nodes.polynomial()
    lams = p(grid)
    rows = monomial_row(grid, size)                # (g, size)
    efacs = np.array([factor.factor_at(lam) for lam in lams])   # (g, size, rank)
    kernel_rows = np.array([kernel.row_at(z) for z in grid])    # (g, rank)
    worst = 0.0
    count = 0
    for i in range(grid.size):
        for j in range(grid.size):
            left = kernel_rows[i] @ kernel_rows[j].conj()
            lmat = efacs[i] @ efacs[j].conj().T
            right = rows[i] @ lmat @ rows[j].conj()
            worst = max(worst, abs(left - right))
            count += 1
    return CheckReport("kernel_factorization_identity", worst, count, tol)


def psd_check(factor: KernelFactor, grid, tol: float = 1e-9) -> CheckReport:
    """Smallest eigenvalue of the block Gram matrix of L over the grid.

    Passes when the smallest eigenvalue is above -tol times the largest;
    the factored form makes the Gram matrix positive semidefinite up to
    rounding.
    """
    grid = np.asarray(grid, dtype=complex).ravel()
    if grid.size == 0:
        raise PreconditionError("psd check needs a nonempty grid")
    nodes = factor.nodes
    size = nodes.total_degree
    lams = nodes.polynomial()(grid)
    efacs = np.array([factor.factor_at(lam) for lam in lams])   # (g, size, rank)
    g = grid.size
    gram = np.empty((g * size, g * size), dtype=complex)
    for i in range(g):
        for j in range(g):
            gram[i * size:(i + 1) * size, j * size:(j + 1) * size] = (
                efacs[i] @ efacs[j].conj().T
            )
    gram = 0.5 * (gram + gram.conj().T)
    eigs = np.linalg.eigvalsh(gram)
    top = float(max(eigs[-1], 0.0))
    smallest = float(eigs[0])
    # negative excursion relative to the top eigenvalue
    residual = max(0.0, -smallest) / max(top, 1e-300) if top > 0.0 else 0.0
    return CheckReport("kernel_gram_psd", residual, g * size, tol)


def default_grid(nodes: NodeSet, count: int = 20, radius: float = 1.5,
                 exclusion: float = 0.1) -> np.ndarray:
    """Circle of points around the node centroid, away from the nodes."""
    center = complex(np.mean(nodes.nodes))
    angles = 2.0 * np.pi * np.arange(count) / count
    pts = center + radius * np.exp(1j * angles)
    keep = np.array([
        bool(np.min(np.abs(nodes.nodes - z)) > exclusion) for z in pts
    ])
    return pts[keep]
