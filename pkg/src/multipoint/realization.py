"""State-space realizations f(z) = (Z(z) (x) I_r) C (I - p(z) A)^(-1) B.

The state space is the span of the backward-shift iterates of the
columns of f. Because the shift keeps the common denominator fixed and
acts on numerators alone, every iterate lives in a finite-dimensional
coefficient space; a greedy rank sweep over the iterates (columns first,
then their shift images breadth-first) picks a deterministic basis. A is
the shift in that basis, B embeds the columns, and C reads off the
Vandermonde-solved confluent values.
"""

from __future__ import annotations

import numpy as np

from . import linalg
from .errors import ConvergenceError, SingularMatrixError, ToleranceError
from .nodes import (
    NodeSet,
    confluent_values,
    confluent_vandermonde,
    monomial_row,
    node_circle_points,
)
from .poly import Polynomial
from .rational import RationalMatrix, coerce_rational

# Residual threshold for dropping a Krylov candidate as dependent.
BASIS_TOL = 1e-9
# Construction-time fidelity contract for the realization.
FIDELITY_TOL = 1e-7


class Realization:
    """Constant matrices (A, B, C) over a node set realizing a rational matrix."""

    __slots__ = ("nodes", "A", "B", "C", "r", "s", "fidelity_residual",
                 "shift_terminates")

    def __init__(self, nodes: NodeSet, A, B, C, r: int, s: int,
                 fidelity_residual: float = 0.0,
                 shift_terminates: bool | None = None):
        A = np.asarray(A, dtype=complex)
        B = np.asarray(B, dtype=complex)
        C = np.asarray(C, dtype=complex)
        m = A.shape[0] if A.size else 0
        size = nodes.total_degree
        if A.shape not in ((0,), (m, m)) or B.shape != (m, s) or C.shape != (r * size, m):
            raise ValueError(
                f"inconsistent realization shapes A{A.shape} B{B.shape} C{C.shape}"
            )
        self.nodes = nodes
        self.A = A.reshape(m, m)
        self.B = B
        self.C = C
        self.r = r
        self.s = s
        self.fidelity_residual = float(fidelity_residual)
        # set by realize(): whether the backward-shift chains from the
        # source columns reached the exact zero function (= A nilpotent,
        # decided structurally rather than through matrix powers)
        self.shift_terminates = shift_terminates

    @property
    def state_dim(self) -> int:
        return self.A.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.r, self.s)

    def transfer_at(self, lam: complex) -> np.ndarray:
        """C (I - lam A)^(-1) B, shape (r * total_degree, s)."""
        m = self.state_dim
        if m == 0:
            return np.zeros((self.r * self.nodes.total_degree, self.s), dtype=complex)
        x = linalg.solve(np.eye(m) - complex(lam) * self.A, self.B)
        return self.C @ x

    def eval(self, z: complex) -> np.ndarray:
        """(Z(z) (x) I_r) C (I - p(z) A)^(-1) B, shape (r, s)."""
        size = self.nodes.total_degree
        if self.state_dim == 0:
            return np.zeros((self.r, self.s), dtype=complex)
        lam = self.nodes.polynomial()(z)
        y = self.transfer_at(lam).reshape(size, self.r, self.s)
        zrow = monomial_row(complex(z), size)
        return np.tensordot(zrow, y, axes=(0, 0))

    def __repr__(self):
        return (f"Realization(m={self.state_dim}, shape=({self.r}, {self.s}), "
                f"nodes={self.nodes}, fidelity={self.fidelity_residual:.2e})")


def _stack_coeffs(nums: np.ndarray, width: int) -> np.ndarray:
    """Flatten an (r, 1) object array of polynomials into one coefficient vector."""
    out = np.zeros(nums.shape[0] * width, dtype=complex)
    for i in range(nums.shape[0]):
        c = nums[i, 0].coeffs
        out[i * width : i * width + c.size] = c
    return out


def _unstack_coeffs(vec: np.ndarray, r: int, width: int, den: Polynomial) -> RationalMatrix:
    nums = np.empty((r, 1), dtype=object)
    for i in range(r):
        nums[i, 0] = Polynomial(vec[i * width : (i + 1) * width])
    return RationalMatrix(nums, den)


def realize(f, nodes: NodeSet, basis_tol: float = BASIS_TOL,
            iteration_cap: int | None = None) -> Realization:
    """Build the realization of a rational matrix with no poles at the nodes.

    The state space is the shift-invariant span of the columns of f. All
    iterates keep the common denominator and their numerator degrees stay
    below a fixed width, so the span lives in one coefficient space; the
    basis is built by Gram-Schmidt over the candidates in seeding order
    (columns first, then shift images breadth-first), making coordinate
    extraction orthogonal and well conditioned. Exceeding the iteration
    cap means the span failed to close numerically.
    """
    from .decompose import backward_shift

    fm = coerce_rational(f)
    fm.check_no_poles_at(nodes)
    r, s = fm.shape
    size = nodes.total_degree
    v = confluent_vandermonde(nodes)

    degrees = fm.numerator_degrees()
    sum_degrees = int(np.sum(np.maximum(degrees, 0))) + max(fm.den.degree, 0)
    cap = iteration_cap if iteration_cap is not None else 4 * sum_degrees + 8

    # The shift maps numerators of degree < width to numerators of degree
    # < width whenever width > max(initial numerator degree, den degree
    # + total_degree - 1), so one padded coefficient space holds every iterate.
    width = int(max(np.max(degrees), fm.den.degree + size - 1, 0)) + 1

    queue: list[RationalMatrix] = [fm.column(j) for j in range(s)]
    initial = queue[:]
    basis: list[RationalMatrix] = []
    ortho: list[np.ndarray] = []
    head = 0
    while head < len(queue):
        g = queue[head]
        head += 1
        if g.is_zero():
            continue
        vec = _stack_coeffs(g.nums, width)
        norm = float(np.linalg.norm(vec))
        resid = vec.copy()
        for q in ortho:
            resid -= (q.conj() @ resid) * q
        for q in ortho:                            # second pass for orthogonality
            resid -= (q.conj() @ resid) * q
        rnorm = float(np.linalg.norm(resid))
        if rnorm > basis_tol * norm:
            q = resid / rnorm
            ortho.append(q)
            member = _unstack_coeffs(q, r, width, fm.den)
            basis.append(member)
            if len(basis) > cap:
                raise ConvergenceError(
                    f"shift iteration did not close within {cap} basis vectors"
                )
            queue.append(backward_shift(member, nodes))

    m = len(basis)
    if m == 0:
        return Realization(nodes, np.zeros((0, 0)), np.zeros((0, s)),
                           np.zeros((r * size, 0)), r, s, shift_terminates=True)

    qmat = np.column_stack(ortho)

    def coords(g: RationalMatrix) -> np.ndarray:
        vec = _stack_coeffs(g.nums, width)
        c = qmat.conj().T @ vec
        resid = float(np.linalg.norm(vec - qmat @ c))
        if resid > 1e-7 * max(1.0, float(np.linalg.norm(vec))):
            raise ConvergenceError(
                f"element left the computed invariant span (residual {resid:.3e})"
            )
        return c

    A = np.column_stack([coords(backward_shift(b, nodes)) for b in basis])
    B = np.column_stack([coords(col) for col in initial])
    C = np.empty((r * size, m), dtype=complex)
    for i, b in enumerate(basis):
        cw = confluent_values(b, nodes)           # (size*r, 1)
        solved = linalg.solve(v, cw.reshape(size, r))
        C[:, i] = solved.reshape(size * r)

    real = Realization(nodes, A, B, C, r, s)
    residual = _fidelity_check(real, fm)
    if residual > FIDELITY_TOL:
        raise ToleranceError(
            f"realization reproduces the input only to {residual:.3e} (> {FIDELITY_TOL:g})"
        )
    terminates = _shift_chains_die(initial, nodes, m, backward_shift)
    return Realization(nodes, A, B, C, r, s, fidelity_residual=residual,
                       shift_terminates=terminates)


def _fidelity_check(real: Realization, fm: RationalMatrix, samples: int = 10) -> float:
    """Max relative error against direct evaluation, on the node circles."""
    rng = np.random.default_rng(20240801)
    worst = 0.0
    checked = 0
    for z in node_circle_points(real.nodes, 3 * samples, rng=rng):
        if checked >= samples:
            break
        if abs(fm.den(z)) < 1e-6 * max(1.0, fm.den.coeff_norm()):
            continue
        try:
            got = real.eval(z)
        except SingularMatrixError:
            continue
        want = fm(z)
        err = float(np.max(np.abs(got - want) / (1.0 + np.abs(want))))
        worst = max(worst, err)
        checked += 1
    if checked < samples:
        raise ConvergenceError("could not find enough non-singular fidelity sample points")
    return worst


def _shift_chains_die(columns, nodes: NodeSet, m: int, shift) -> bool:
    """Whether iterating the backward shift m times annihilates every column.

    The state space is generated by the shift images of the columns, so
    this decides nilpotency of A structurally. The zero detection is the
    shift's own relative-cancellation test, which stays reliable when the
    iterates merely decay geometrically (poles far from the nodes) and
    matrix powers of A would be numerically indistinguishable from zero.
    """
    for col in columns:
        g = col
        for _ in range(m):
            if g.is_zero():
                break
            g = shift(g, nodes)
        if not g.is_zero():
            return False
    return True


def eval_realization(real: Realization, z: complex) -> np.ndarray:
    """Evaluate the realized function at z; raises at resolvent singularities."""
    return real.eval(z)


def is_nilpotent(real: Realization, tol: float = 1e-8) -> bool:
    """True when the realized function is a polynomial (A nilpotent).

    Realizations built by realize() carry a structural flag: nilpotency
    holds exactly when the backward-shift chains of the source columns
    die out. Without the flag (deserialized realizations) the check
    falls back to the matrix-power test |A^m| <= tol * max(1, |A|^m),
    which can mistake strongly stable A for nilpotent.
    """
    if real.shift_terminates is not None:
        return real.shift_terminates
    m = real.state_dim
    if m == 0:
        return True
    power = np.linalg.matrix_power(real.A, m)
    norm_a = float(np.linalg.norm(real.A, 2))
    return float(np.linalg.norm(power, 2)) <= tol * max(1.0, norm_a**m)


def transfer_equiv(r1: Realization, r2: Realization, trials: int = 20,
                   tol: float = 1e-7, seed: int = 7) -> bool:
    """Compare transfer values at random points; realizations of the same
    function agree regardless of basis choice or state dimension."""
    if r1.nodes.entries != r2.nodes.entries or r1.shape != r2.shape:
        return False
    rng = np.random.default_rng(seed)
    checked = 0
    for z in node_circle_points(r1.nodes, 5 * trials, rng=rng):
        if checked >= trials:
            break
        try:
            a = r1.eval(z)
            b = r2.eval(z)
        except SingularMatrixError:
            continue
        if np.max(np.abs(a - b) / (1.0 + np.abs(a))) > tol:
            return False
        checked += 1
    if checked < trials:
        raise ConvergenceError("could not find enough non-singular comparison points")
    return True


def _resolvent_polynomials(A: np.ndarray) -> tuple[list[np.ndarray], np.ndarray]:
    """Faddeev-LeVerrier data for (I - lam A)^(-1) = P(lam) / d(lam).

    Returns the matrix coefficients of P (degree m-1) and the scalar
    coefficients of d (degree m, d(0) = 1), ascending in lam.
    """
    m = A.shape[0]
    adj = []                                      # coefficients of adj(mu I - A)
    coeffs = np.zeros(m + 1, dtype=complex)       # char poly in mu, ascending later
    N = np.eye(m, dtype=complex)
    a = np.zeros(m + 1, dtype=complex)
    a[0] = 1.0                                    # leading coefficient of mu^m
    adj.append(N)
    for k in range(1, m + 1):
        AN = A @ N
        a[k] = -np.trace(AN) / k
        if k < m:
            N = AN + a[k] * np.eye(m)
            adj.append(N)
    # char(mu) = sum_k a[k] mu^(m-k); substitute mu = 1/lam and clear powers:
    # d(lam) = sum_k a[k] lam^k,  P(lam) = sum_k adj[k] lam^k
    den = np.array(a)
    return adj, den


def transfer_function(real: Realization) -> RationalMatrix:
    """F(lam) = C (I - lam A)^(-1) B as a rational matrix in lam."""
    m = real.state_dim
    size = real.nodes.total_degree
    if m == 0:
        zeros = np.empty((real.r * size, real.s), dtype=object)
        for idx in np.ndindex(zeros.shape):
            zeros[idx] = Polynomial.zero()
        return RationalMatrix(zeros, Polynomial.one())
    adj, den = _resolvent_polynomials(real.A)
    nums = np.empty((real.r * size, real.s), dtype=object)
    terms = [real.C @ adj[k] @ real.B for k in range(m)]
    for i in range(real.r * size):
        for j in range(real.s):
            nums[i, j] = Polynomial([terms[k][i, j] for k in range(m)])
    return RationalMatrix(nums, Polynomial(den))


def realization_to_rational(real: Realization) -> RationalMatrix:
    """Recover f(z) = (Z(z) (x) I_r) F(p(z)) as an explicit rational matrix."""
    size = real.nodes.total_degree
    p = real.nodes.polynomial()
    F = transfer_function(real)
    den_z = F.den.compose(p)
    nums = np.empty((real.r, real.s), dtype=object)
    for a in range(real.r):
        for b in range(real.s):
            acc = Polynomial.zero()
            for j in range(size):
                acc = acc + Polynomial.monomial(j) * F.nums[j * real.r + a, b].compose(p)
            nums[a, b] = acc
    return RationalMatrix(nums, den_z)
