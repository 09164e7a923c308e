"""Linear combination interpolation with derivatives.

One scalar constraint sum_{j,k} a_{j,k} f^(k)(w_j) = c on functions
analytic near the nodes. Through the decomposition the constraint
becomes a single condition on the coordinate vector at the origin, so
the solution set is an affine family: a minimal particular solution plus
a rank-one projector acting on a free analytic parameter.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .decompose import ComposedFunction, decompose_polynomial
from .errors import PreconditionError
from .nodes import NodeSet, confluent_values, confluent_vandermonde
from .poly import Polynomial
from .rational import RationalFunction

PROJECTOR_TOL = 1e-9


@dataclass(frozen=True)
class LCIProblem:
    """Nodes, coefficient row (in node-set block order) and target value."""

    nodes: NodeSet
    a: np.ndarray
    c: complex

    def __init__(self, nodes: NodeSet, a, c):
        a = np.asarray(a, dtype=complex).ravel()
        if a.size != nodes.total_degree:
            raise PreconditionError(
                f"coefficient row has length {a.size}, expected {nodes.total_degree}"
            )
        if not np.any(np.abs(a) > 0.0):
            raise PreconditionError("coefficient row must be nonzero")
        a = a.copy()
        a.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "c", complex(c))


@dataclass(frozen=True)
class LCISolution:
    """Particular solution plus the projector generating the full family."""

    particular: Polynomial
    projector: np.ndarray
    nodes: NodeSet


def _constraint_row(prob: LCIProblem) -> np.ndarray:
    """The row a.V acting on coordinate vectors at the origin."""
    return prob.a @ confluent_vandermonde(prob.nodes)


def lci_solution(prob: LCIProblem) -> LCISolution:
    """Particular coordinate vector and projector for the constraint family.

    With row u = a.V, the particular coordinate vector is u* c / |u|^2
    and the projector is u* u / |u|^2; u annihilates its complement, so
    every parameter choice keeps the constraint.
    """
    u = _constraint_row(prob)
    denom = float(np.real(u @ u.conj()))
    if denom <= 0.0 or not np.isfinite(denom):
        raise PreconditionError("constraint row collapsed; node matrix is singular")
    f0 = u.conj() * (prob.c / denom)
    projector = np.outer(u.conj(), u) / denom
    return LCISolution(Polynomial(f0), projector, prob.nodes)


def lci_particular(prob: LCIProblem) -> Polynomial:
    """Minimal-degree particular solution (degree < total degree)."""
    return lci_solution(prob).particular


def lci_solve(prob: LCIProblem, parameter=None) -> ComposedFunction:
    """Family member for a free parameter vector G of total_degree components.

    Components may be Polynomial or RationalFunction (in the composed
    variable, analytic at the origin). The result is returned in composed
    form, whose components are F0 + (I + (lam - 1) Pi) G(lam); it
    satisfies the constraint for every parameter choice. Omitting the
    parameter gives the particular solution's family form.
    """
    sol = lci_solution(prob)
    size = prob.nodes.total_degree
    f0 = sol.particular.coeffs
    if parameter is None:
        parameter = [Polynomial.zero()] * size
    comps = list(parameter)
    if len(comps) != size:
        raise PreconditionError(f"parameter needs {size} components, got {len(comps)}")
    nums: list[Polynomial] = []
    dens: list[Polynomial] = []
    for g in comps:
        if isinstance(g, RationalFunction):
            nums.append(g.num)
            dens.append(g.den)
        elif isinstance(g, Polynomial):
            nums.append(g)
            dens.append(Polynomial.one())
        else:
            nums.append(Polynomial((complex(g),)))
            dens.append(Polynomial.one())
    for d in dens:
        if abs(d(0.0)) <= 1e-12 * max(1.0, d.coeff_norm()):
            raise PreconditionError("parameter components must be analytic at the origin")
    # common denominator D = prod dens; scaled numerators n_j * (D / d_j)
    common = Polynomial.one()
    for d in dens:
        common = common * d
    scaled = []
    for j in range(size):
        cof = Polynomial.one()
        for i, d in enumerate(dens):
            if i != j:
                cof = cof * d
        scaled.append(nums[j] * cof)

    lam_minus_one = Polynomial((-1.0, 1.0))
    out = []
    for i in range(size):
        proj = Polynomial.zero()
        for j in range(size):
            proj = proj + sol.projector[i, j] * scaled[j]
        base = Polynomial((f0[i],)) * common if i < f0.size else Polynomial.zero()
        numerator = base + scaled[i] + lam_minus_one * proj
        if common.degree == 0:
            out.append(numerator * (1.0 / common.coeffs[0]))
        else:
            out.append(RationalFunction(numerator, common))
    return ComposedFunction(prob.nodes, out)


def lci_recover_parameter(prob: LCIProblem, target: Polynomial,
                          constraint_tol: float = 1e-6) -> list[Polynomial]:
    """Parameter G whose solution reproduces a given constrained polynomial.

    Inverts the affine family: with coordinate components T of the target
    and particular vector F0, G = (T - F0) - (lam - 1) * Pi (T - F0) / lam.
    The division by lam is exact because the constraint pins the
    projected value at the origin.
    """
    residual = verify_lci(target, prob)
    if residual > constraint_tol * (1.0 + abs(prob.c)):
        raise PreconditionError(
            f"target violates the constraint (residual {residual:.3e}); "
            "only constrained functions lie in the family"
        )
    sol = lci_solution(prob)
    size = prob.nodes.total_degree
    comps = decompose_polynomial(target, prob.nodes).components
    f0 = sol.particular.coeffs
    diff = []
    for j in range(size):
        base = comps[j]
        if j < f0.size:
            base = base - Polynomial((f0[j],))
        diff.append(base)
    out = []
    lam_minus_one = Polynomial((-1.0, 1.0))
    for i in range(size):
        proj = Polynomial.zero()
        for j in range(size):
            proj = proj + sol.projector[i, j] * diff[j]
        # the constant term of proj is the constraint residual; drop it
        # and divide by lam
        proj_over_lam = Polynomial(proj.coeffs[1:]) if proj.coeffs.size > 1 \
            else Polynomial.zero()
        out.append(diff[i] - lam_minus_one * proj_over_lam)
    return out


def verify_lci(f, prob: LCIProblem) -> float:
    """|sum a_{j,k} f^(k)(w_j) - c| for any function exposing derivatives."""
    cw = confluent_values(f, prob.nodes)
    return float(abs(prob.a @ cw - prob.c))
