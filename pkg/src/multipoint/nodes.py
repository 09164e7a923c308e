"""Node sets and the structures they induce.

A NodeSet is an ordered list of distinct nodes with multiplicities. It
induces the monic node polynomial p(z) = prod (z - w_j)^mu_j, the row of
monomials below its degree, the confluent (generalized) Vandermonde
matrix of derivative rows at the nodes, and the confluent evaluation
that stacks values and derivatives of a function at the nodes.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import linalg
from .errors import PreconditionError
from .poly import Polynomial, series_inverse

# Below this pairwise separation the Vandermonde matrix is close to
# singular and results carry a ConditioningWarning.
SEPARATION_WARN = 1e-3


class ConditioningWarning(UserWarning):
    """Nodes are so close that induced linear systems are ill-conditioned."""


@dataclass(frozen=True)
class NodeSet:
    """Ordered distinct nodes with multiplicities; order fixes all block layouts."""

    entries: tuple[tuple[complex, int], ...]

    def __init__(self, entries):
        normalized = tuple((complex(w), int(mu)) for w, mu in entries)
        if not normalized:
            raise PreconditionError("a node set needs at least one node")
        if any(mu < 1 for _, mu in normalized):
            raise PreconditionError("node multiplicities must be >= 1")
        ws = np.array([w for w, _ in normalized])
        if not np.all(np.isfinite(ws.view(float))):
            raise PreconditionError("nodes must be finite")
        if len(normalized) > 1:
            sep = min(
                abs(ws[i] - ws[j])
                for i in range(len(ws))
                for j in range(i + 1, len(ws))
            )
            if sep == 0.0:
                raise PreconditionError("nodes must be pairwise distinct")
            if sep < SEPARATION_WARN:
                warnings.warn(
                    f"node separation {sep:.2e} is below {SEPARATION_WARN:.0e}; "
                    "induced systems may be ill-conditioned",
                    ConditioningWarning,
                    stacklevel=2,
                )
        object.__setattr__(self, "entries", normalized)

    @property
    def n(self) -> int:
        """Number of distinct nodes."""
        return len(self.entries)

    @property
    def total_degree(self) -> int:
        """Sum of multiplicities; degree of the node polynomial."""
        return sum(mu for _, mu in self.entries)

    @property
    def nodes(self) -> np.ndarray:
        return np.array([w for w, _ in self.entries])

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(mu for _, mu in self.entries)

    @property
    def min_separation(self) -> float:
        if self.n == 1:
            return float("inf")
        ws = self.nodes
        return min(abs(ws[i] - ws[j]) for i in range(self.n) for j in range(i + 1, self.n))

    def polynomial(self) -> Polynomial:
        """The monic node polynomial prod_j (z - w_j)^mu_j."""
        c = np.array([1.0 + 0.0j])
        for w, mu in self.entries:
            for _ in range(mu):
                c = np.convolve(c, np.array([-w, 1.0 + 0.0j]))
        return Polynomial(c)

    def __str__(self):
        return "{" + ", ".join(f"({w.real:g}{w.imag:+g}j, {mu})" for w, mu in self.entries) + "}"


def monomial_row(z: complex, size: int):
    """Row (1, z, ..., z**(size-1)); accepts scalar or array z."""
    if size < 1:
        raise ValueError("size must be >= 1")
    z = np.asarray(z, dtype=complex)
    return z[..., None] ** np.arange(size)


def monomial_row_derivative(z: complex, size: int, order: int) -> np.ndarray:
    """order-th derivative of the monomial row at z (raw, no factorial scaling)."""
    t = np.arange(size)
    falling = np.ones(size)
    for i in range(order):
        falling *= np.maximum(t - i, 0)
    row = np.zeros(size, dtype=complex)
    idx = t >= order
    row[idx] = falling[idx] * np.asarray(z, dtype=complex) ** (t[idx] - order)
    return row


def confluent_vandermonde(nodes: NodeSet) -> np.ndarray:
    """Stacked derivative rows of the monomial row at each node.

    Block j holds rows of derivative orders 0..mu_j-1 at node w_j; the
    matrix is square of size total_degree and invertible for distinct
    nodes.
    """
    size = nodes.total_degree
    rows = []
    for w, mu in nodes.entries:
        for k in range(mu):
            rows.append(monomial_row_derivative(w, size, k))
    return np.array(rows)


def confluent_values(f, nodes: NodeSet) -> np.ndarray:
    """Stack (f(w_j), f'(w_j), ..., f^(mu_j-1)(w_j)) over the nodes.

    ``f`` must expose ``derivatives_at(z, count)``; a bare callable is
    accepted when every multiplicity is 1. Scalar-valued f gives a vector
    of length total_degree; matrix-valued f (entries of shape (r, s))
    gives shape (total_degree * r, s), stacked in r-blocks per node and
    derivative order.
    """
    blocks = []
    for w, mu in nodes.entries:
        if hasattr(f, "derivatives_at"):
            d = f.derivatives_at(w, mu)
        elif mu == 1:
            d = np.asarray([f(w)])
        else:
            raise TypeError(
                "function must provide derivatives_at(z, count) for multiplicities > 1"
            )
        blocks.append(np.asarray(d, dtype=complex))
    stacked = np.concatenate(blocks, axis=0)
    if stacked.ndim == 1:
        return stacked
    return stacked.reshape(-1, stacked.shape[-1])


class PartialFractionTerm(NamedTuple):
    node_index: int
    order: int
    coefficient: complex


@dataclass(frozen=True)
class PartialFractionTable:
    """Coefficients c_{j,k} with 1/p(z) = sum c_{j,k} / (z - w_j)**k."""

    nodes: NodeSet
    terms: tuple[PartialFractionTerm, ...]

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        ws = self.nodes.nodes
        total = np.zeros(z.shape, dtype=complex)
        for j, k, c in self.terms:
            total = total + c / (z - ws[j]) ** k
        return total if total.ndim else complex(total)


def reciprocal_partial_fractions(nodes: NodeSet) -> PartialFractionTable:
    """Expand 1/p(z) into partial fractions over the node set.

    Per node the coefficients come from the local Taylor expansion of
    p(z) * (z - w_j)^(-mu_j) inverted as a power series, which respects
    the multiplicity structure without a global linear solve.
    """
    terms = []
    for j, (w, mu) in enumerate(nodes.entries):
        cofactor = np.array([1.0 + 0.0j])
        for i, (wi, mui) in enumerate(nodes.entries):
            if i == j:
                continue
            for _ in range(mui):
                cofactor = np.convolve(cofactor, np.array([-wi, 1.0 + 0.0j]))
        local = Polynomial(cofactor).taylor(w, mu)
        inv = series_inverse(local, mu)
        for k in range(1, mu + 1):
            terms.append(PartialFractionTerm(j, k, complex(inv[mu - k])))
    return PartialFractionTable(nodes, tuple(terms))


def hermite_interpolant(f, nodes: NodeSet) -> Polynomial:
    """Unique polynomial of degree < total_degree matching f confluently.

    For matrix-valued f the per-entry interpolants are returned as an
    object array of Polynomial of the entry shape.
    """
    v = confluent_vandermonde(nodes)
    cw = confluent_values(f, nodes)
    size = nodes.total_degree
    if cw.ndim == 1:
        return Polynomial(linalg.solve(v, cw))
    r = cw.shape[0] // size
    s = cw.shape[1]
    coeffs = linalg.solve(v, cw.reshape(size, r * s))
    out = np.empty((r, s), dtype=object)
    for a in range(r):
        for b in range(s):
            out[a, b] = Polynomial(coeffs[:, a * s + b])
    return out


def interpolate_confluent(nodes: NodeSet, targets) -> Polynomial:
    """Polynomial of degree < total_degree whose confluent values equal ``targets``."""
    v = confluent_vandermonde(nodes)
    t = np.asarray(targets, dtype=complex).ravel()
    if t.size != nodes.total_degree:
        raise ValueError("target vector length must equal the total degree")
    return Polynomial(linalg.solve(v, t))


def node_circle_points(nodes: NodeSet, count: int, radius_cap: float = 0.35,
                       rng: np.random.Generator | None = None) -> np.ndarray:
    """Sample points on disjoint circles around the nodes.

    This is the region where the decomposition is constructed and where
    its evaluation is numerically meaningful; verification sweeps sample
    here. Angles are uniform without an rng, random with one.
    """
    sep = nodes.min_separation
    radius = radius_cap if sep == float("inf") else min(0.45 * sep, radius_cap)
    ws = nodes.nodes
    if rng is None:
        angles = 2.0 * np.pi * np.arange(count) / count
        radii = np.full(count, radius)
    else:
        angles = 2.0 * np.pi * rng.uniform(size=count)
        radii = radius * np.sqrt(rng.uniform(0.25, 1.0, size=count))
    centers = ws[np.arange(count) % len(ws)]
    return centers + radii * np.exp(1j * angles)
