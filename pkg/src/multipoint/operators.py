"""Composition/extraction operator pairs and the resolvent family.

The pair (S_j, T_j) multiplies by z^(j-1) after composing with the node
polynomial, and reads the j-th decomposition component back; together
they satisfy the Cuntz relations on polynomials. The resolvent shifts
the node polynomial by a scalar and is built from the simple roots of
that shifted polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .decompose import decompose_polynomial
from .errors import PoleError, PreconditionError, RootSeparationError
from .nodes import NodeSet
from .poly import Polynomial, divide
from .rational import RationalFunction

ROOT_SEPARATION_TOL = 1e-6
ROOT_DERIVATIVE_TOL = 1e-8


@dataclass(frozen=True)
class CheckReport:
    """Outcome of a relation check: residual against tolerance over samples."""

    name: str
    max_residual: float
    samples: int
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tolerance

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{status} {self.name}: max residual {self.max_residual:.3e} "
                f"(tolerance {self.tolerance:.1e}, samples {self.samples})")


def cuntz_compose(j: int, g: Polynomial, nodes: NodeSet) -> Polynomial:
    """S_j: z^(j-1) * g(p(z)) for 1 <= j <= total_degree."""
    size = nodes.total_degree
    if not 1 <= j <= size:
        raise PreconditionError(f"index {j} out of range 1..{size}")
    return Polynomial.monomial(j - 1) * g.compose(nodes.polynomial())


def cuntz_extract(j: int, f: Polynomial, nodes: NodeSet) -> Polynomial:
    """T_j: the j-th component of the decomposition of f."""
    size = nodes.total_degree
    if not 1 <= j <= size:
        raise PreconditionError(f"index {j} out of range 1..{size}")
    return decompose_polynomial(f, nodes).components[j - 1]


def verify_cuntz(nodes: NodeSet, maxdeg: int, tol: float = 1e-10) -> CheckReport:
    """Check T_i S_j = delta_ij and sum_j S_j T_j = I on monomials.

    Residuals are coefficientwise: T_i S_j applied to each monomial in
    the composed variable up to maxdeg, and the completeness sum on each
    monomial in z up to maxdeg.
    """
    if maxdeg < 0:
        raise PreconditionError("maxdeg must be >= 0")
    size = nodes.total_degree
    worst = 0.0
    samples = 0
    for d in range(maxdeg + 1):
        g = Polynomial.monomial(d)
        for j in range(1, size + 1):
            comps = decompose_polynomial(cuntz_compose(j, g, nodes), nodes).components
            for i in range(1, size + 1):
                expect = g if i == j else Polynomial.zero()
                worst = max(worst, _coeff_distance(comps[i - 1], expect))
                samples += 1
    for d in range(maxdeg + 1):
        f = Polynomial.monomial(d)
        comps = decompose_polynomial(f, nodes).components
        total = Polynomial.zero()
        for j in range(1, size + 1):
            total = total + cuntz_compose(j, comps[j - 1], nodes)
        worst = max(worst, _coeff_distance(total, f))
        samples += 1
    return CheckReport("cuntz_relations", worst, samples, tol)


def _coeff_distance(a: Polynomial, b: Polynomial) -> float:
    return (a - b).coeff_norm()


def polynomial_roots(p: Polynomial) -> np.ndarray:
    """All roots of p via companion-matrix eigenvalues, sorted for determinism."""
    if p.degree < 1:
        raise PreconditionError("root finding needs degree >= 1")
    roots = np.polynomial.polynomial.polyroots(p.coeffs)
    order = np.lexsort((roots.imag, roots.real))
    return roots[order]


def resolvent_roots(nodes: NodeSet, alpha: complex) -> np.ndarray:
    """Simple, distinct roots of p(z) = alpha; clustered roots are rejected."""
    p = nodes.polynomial()
    shifted = p - Polynomial((complex(alpha),))
    roots = polynomial_roots(shifted)
    scale = 1.0 + float(np.max(np.abs(roots)))
    n = roots.size
    for i in range(n):
        for j in range(i + 1, n):
            if abs(roots[i] - roots[j]) < ROOT_SEPARATION_TOL * scale:
                raise RootSeparationError(
                    f"roots of the shifted node polynomial cluster at {roots[i]:.6g}"
                )
    dp = p.derivative()
    dnorm = max(dp.coeff_norm(), 1e-300)
    for root in roots:
        if abs(dp(root)) < ROOT_DERIVATIVE_TOL * dnorm:
            raise RootSeparationError(
                f"shifted node polynomial has a near-multiple root at {root:.6g}"
            )
    return roots


def resolvent_apply(f, alpha: complex, nodes: NodeSet, z: complex) -> complex:
    """Pointwise resolvent value at z.

    f(z)/(p(z) - alpha) minus the simple-pole corrections at the roots of
    p = alpha; f only needs pointwise evaluation.
    """
    roots = resolvent_roots(nodes, alpha)
    p = nodes.polynomial()
    dp = p.derivative()
    z = complex(z)
    scale = 1.0 + float(np.max(np.abs(roots)))
    if np.min(np.abs(roots - z)) < ROOT_SEPARATION_TOL * scale:
        raise PoleError(f"evaluation point {z:.6g} coincides with a resolvent root")
    if isinstance(f, RationalFunction):
        for root in roots:
            if f.has_pole_near(root):
                raise PoleError(f"function has a pole at resolvent root {root:.6g}")
    total = f(z) / (p(z) - alpha)
    for root in roots:
        total -= f(root) / (dp(root) * (z - root))
    return complex(total)


def resolvent_rational(f, alpha: complex, nodes: NodeSet) -> RationalFunction:
    """The resolvent applied to a rational f, materialized as num/den.

    The shifted node polynomial factors exactly over the computed roots,
    so the corrections share the denominator den(z) * (p(z) - alpha).
    """
    if isinstance(f, Polynomial):
        f = RationalFunction(f)
    if not isinstance(f, RationalFunction):
        raise PreconditionError("resolvent materialization needs a rational function")
    roots = resolvent_roots(nodes, alpha)
    p = nodes.polynomial()
    dp = p.derivative()
    shifted = p - Polynomial((complex(alpha),))
    for root in roots:
        if f.has_pole_near(root):
            raise PoleError(f"function has a pole at resolvent root {root:.6g}")
    numer = Polynomial(f.num.coeffs)
    for root in roots:
        deflated, _ = divide(shifted, Polynomial.from_roots([root]))
        numer = numer - (f(root) / dp(root)) * deflated * f.den
    return RationalFunction(numer, f.den * shifted)


def verify_resolvent_identity(f, alpha: complex, beta: complex, nodes: NodeSet,
                              samples: int = 20, tol: float = 1e-7,
                              seed: int = 11) -> CheckReport:
    """Residual of R_alpha - R_beta = (alpha - beta) R_alpha R_beta on f.

    The inner application is materialized as a rational function so the
    outer one can evaluate it at its own roots. Sample points are drawn
    away from all roots and poles.
    """
    alpha = complex(alpha)
    beta = complex(beta)
    if alpha == beta:
        # both sides vanish identically; nothing to sample
        resolvent_roots(nodes, alpha)
        return CheckReport("resolvent_identity", 0.0, 0, tol)
    ra = resolvent_roots(nodes, alpha)
    rb = resolvent_roots(nodes, beta)
    scale = 1.0 + max(float(np.max(np.abs(ra))), float(np.max(np.abs(rb))))
    if np.min(np.abs(ra[:, None] - rb[None, :])) < ROOT_SEPARATION_TOL * scale:
        raise RootSeparationError("root sets of the two resolvents intersect")
    inner = resolvent_rational(f, beta, nodes)
    rng = np.random.default_rng(seed)
    avoid = np.concatenate([ra, rb])
    worst = 0.0
    done = 0
    attempts = 0
    while done < samples and attempts < 50 * samples:
        attempts += 1
        z = complex(rng.normal(scale=1.5), rng.normal(scale=1.5))
        if np.min(np.abs(avoid - z)) < 0.2:
            continue
        if isinstance(f, RationalFunction) and abs(f.den(z)) < 0.1:
            continue
        lhs = resolvent_apply(f, alpha, nodes, z) - resolvent_apply(f, beta, nodes, z)
        rhs = (alpha - beta) * resolvent_apply(inner, alpha, nodes, z)
        worst = max(worst, abs(lhs - rhs))
        done += 1
    return CheckReport("resolvent_identity", worst, done, tol)


def anchor_identity_residual(alpha: complex, nodes: NodeSet, zs) -> float:
    """Max residual of 1/(p(z)-alpha) = sum_u 1/(p'(w_u)(z-w_u)) over zs."""
    roots = resolvent_roots(nodes, alpha)
    p = nodes.polynomial()
    dp = p.derivative()
    worst = 0.0
    for z in np.asarray(zs, dtype=complex).ravel():
        lhs = 1.0 / (p(z) - alpha)
        rhs = np.sum(1.0 / (dp(roots) * (z - roots)))
        worst = max(worst, abs(lhs - rhs))
    return worst
