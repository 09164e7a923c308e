"""Decomposition f(z) = (1, z, ..., z^(N-1)) . F(p(z)) over a node set.

The generalized backward shift subtracts the confluent (Hermite)
interpolant and divides by the node polynomial; iterating it yields the
Taylor coefficients of the coordinate function F. Polynomial inputs
terminate exactly; rational inputs go through the state-space
realization. A contour-integral oracle recomputes F independently for
cross-verification.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import (
    AdmissibilityError,
    ConvergenceError,
    ExactnessError,
    PoleError,
    PreconditionError,
)
from .nodes import (
    NodeSet,
    confluent_values,
    confluent_vandermonde,
    monomial_row,
    node_circle_points,
)
from .poly import Polynomial, difference_quotient_vector, divide
from .rational import RationalMatrix, coerce_rational

# Remainder tolerance for the division by the node polynomial, relative
# to the numerator's coefficient norm. The division is exact in theory;
# anything above this signals a pole at a node or severe conditioning.
SHIFT_EXACT_TOL = 1e-8


def backward_shift(f, nodes: NodeSet):
    """Subtract the confluent interpolant of f and divide by the node polynomial.

    Reduces to (f(z) - f(0)) / z when the node set is the origin with
    multiplicity one. Polynomial in, polynomial out; rational matrices
    are shifted entrywise, keeping their common denominator.
    """
    p = nodes.polynomial()
    v = confluent_vandermonde(nodes)
    if isinstance(f, Polynomial):
        cw = confluent_values(f, nodes)
        h = Polynomial(linalg.solve(v, cw))
        return _shift_numerator(f, h, Polynomial.one(), p)
    fm = coerce_rational(f)
    fm.check_no_poles_at(nodes)
    size = nodes.total_degree
    r, s = fm.shape
    cw = confluent_values(fm, nodes)              # (size*r, s)
    coeffs = linalg.solve(v, cw.reshape(size, r * s))
    nums = np.empty((r, s), dtype=object)
    for i in range(r):
        for j in range(s):
            h_ij = Polynomial(coeffs[:, i * s + j])
            nums[i, j] = _shift_numerator(fm.nums[i, j], h_ij, fm.den, p)
    return RationalMatrix(nums, fm.den)


def _shift_numerator(num: Polynomial, h: Polynomial, den: Polynomial,
                     p: Polynomial) -> Polynomial:
    """(num - h*den) / p with the division required to be exact.

    The remainder tolerance is taken relative to the magnitudes entering
    the subtraction, not to the difference itself: when num and h*den
    cancel to rounding noise, the true result is the zero polynomial.
    """
    prod = h * den
    numer = num - prod
    scale = max(num.coeff_norm(), prod.coeff_norm(), 1e-300)
    if numer.coeff_norm() <= 1e-12 * scale:
        return Polynomial.zero()
    q, rem = divide(numer, p)
    if rem.coeff_norm() > SHIFT_EXACT_TOL * scale:
        raise ExactnessError(
            f"backward shift division left remainder {rem.coeff_norm():.3e} "
            f"against scale {scale:.3e}; this signals a pole at a node or an "
            "ill-conditioned node set"
        )
    return q


class ComposedFunction:
    """A function carried in the composed form sum_j z^j F_j(p(z)).

    The component functions F_j (polynomial or rational in the composed
    variable) are the numerically faithful representation: expanding to
    monomial coefficients can lose many digits for larger node sets,
    while values and confluent derivatives evaluate stably through local
    power series. Used for interpolation-family members and anywhere a
    decomposition has to act as an evaluable function.
    """

    __slots__ = ("nodes", "components")

    def __init__(self, nodes: NodeSet, components):
        components = tuple(components)
        if len(components) != nodes.total_degree:
            raise PreconditionError(
                f"need {nodes.total_degree} components, got {len(components)}"
            )
        self.nodes = nodes
        self.components = components

    def is_polynomial(self) -> bool:
        from .rational import RationalFunction

        return all(not isinstance(c, RationalFunction) or c.is_polynomial()
                   for c in self.components)

    def __call__(self, z):
        lam = self.nodes.polynomial()(z)
        zrow = monomial_row(z, self.nodes.total_degree)
        vals = np.array([c(lam) for c in self.components])
        out = zrow @ vals
        return complex(out) if np.ndim(out) == 0 else out

    def derivatives_at(self, z: complex, count: int) -> np.ndarray:
        """(f(z), ..., f^(count-1)(z)) via truncated power series at z."""
        from .poly import series_compose_poly, series_divide, series_mul
        from .rational import RationalFunction

        z = complex(z)
        lam = self.nodes.polynomial().taylor(z, count)
        total = np.zeros(count, dtype=complex)
        zpow = np.zeros(count, dtype=complex)
        zpow[0] = 1.0
        zlin = np.zeros(count, dtype=complex)
        zlin[0] = z
        if count > 1:
            zlin[1] = 1.0
        for j, comp in enumerate(self.components):
            if j > 0:
                zpow = series_mul(zpow, zlin, count)
            if isinstance(comp, RationalFunction):
                num = series_compose_poly(comp.num, lam, count)
                den = series_compose_poly(comp.den, lam, count)
                if abs(den[0]) <= 1e-300:
                    raise PoleError("composed component has a pole at the point")
                series = series_divide(num, den, count)
            else:
                series = series_compose_poly(comp, lam, count)
            total += series_mul(zpow, series, count)
        fact = np.ones(count)
        for k in range(2, count):
            fact[k] = fact[k - 1] * k
        return total * fact

    def to_polynomial(self) -> Polynomial:
        """Expanded monomial form; can lose accuracy for large node sets."""
        from .rational import RationalFunction

        if not self.is_polynomial():
            raise ValueError("components are not all polynomial")
        p = self.nodes.polynomial()
        total = Polynomial.zero()
        for j, comp in enumerate(self.components):
            if isinstance(comp, RationalFunction):
                comp = comp.num * (1.0 / comp.den.coeffs[0])
            total = total + Polynomial.monomial(j) * comp.compose(p)
        return total

    def to_rational(self):
        """Expanded num/den form; can lose accuracy for large node sets."""
        from .rational import RationalFunction

        p = self.nodes.polynomial()
        dens = [c.den if isinstance(c, RationalFunction) else Polynomial.one()
                for c in self.components]
        common = Polynomial.one()
        for d in dens:
            common = common * d
        num_total = Polynomial.zero()
        for j, comp in enumerate(self.components):
            n = comp.num if isinstance(comp, RationalFunction) else comp
            cof = Polynomial.one()
            for i, d in enumerate(dens):
                if i != j:
                    cof = cof * d
            num_total = num_total + Polynomial.monomial(j) * (n * cof).compose(p)
        return RationalFunction(num_total, common.compose(p))

    def __str__(self):
        return " + ".join(f"z^{j}*({c})" for j, c in enumerate(self.components))


@dataclass(frozen=True)
class Decomposition:
    """Coordinate function F with its node set; f(z) reconstructs as Z(z).F(p(z)).

    ``kind`` is "polynomial" (components: list of total_degree
    polynomials in the composed variable) or "rational" (backed by a
    state-space realization). ``shape`` is the value shape of the source
    function; scalars are (1, 1). ``residual`` records the reconstruction
    check performed at construction.
    """

    nodes: NodeSet
    kind: str
    shape: tuple[int, int]
    components: tuple | None = None
    realization: object | None = None
    residual: float = field(default=0.0, compare=False)

    @property
    def scalar(self) -> bool:
        return self.shape == (1, 1)

    def coordinate_at(self, lam) -> np.ndarray:
        """F(lam): shape (total_degree,) for scalar sources, else (total_degree*r, s)."""
        if self.kind == "polynomial":
            return np.array([c(lam) for c in self.components])
        return self.realization.transfer_at(lam)

    def reconstruct(self, z):
        """Z(z) . F(p(z)); complex for scalar sources, (r, s) array otherwise."""
        if self.kind == "rational":
            value = self.realization.eval(z)
            return value[0, 0] if self.scalar else value
        p = self.nodes.polynomial()
        lam = p(z)
        zrow = monomial_row(z, self.nodes.total_degree)
        return complex(zrow @ self.coordinate_at(lam))

    def to_polynomial(self) -> Polynomial:
        """Exact polynomial Z(z).F(p(z)) (polynomial kind only)."""
        if self.kind != "polynomial":
            raise ValueError("only polynomial decompositions reconstruct exactly")
        p = self.nodes.polynomial()
        total = Polynomial.zero()
        for j, comp in enumerate(self.components):
            total = total + Polynomial.monomial(j) * comp.compose(p)
        return total

    def max_component_degree(self) -> int:
        if self.kind != "polynomial":
            raise ValueError("degree only defined for polynomial decompositions")
        return max((c.degree for c in self.components), default=-1)


def decompose_polynomial(f: Polynomial, nodes: NodeSet) -> Decomposition:
    """Decompose a polynomial; terminates after ~deg(f)/total_degree shifts.

    The k-th Taylor coefficient vector of F is the Vandermonde solve of
    the confluent values of the k-th backward-shift iterate; once the
    iterate's degree drops below the total degree its own shift is
    exactly zero, so the loop stops there.
    """
    if not isinstance(f, Polynomial):
        raise PreconditionError("decompose_polynomial expects a polynomial")
    size = nodes.total_degree
    v = confluent_vandermonde(nodes)
    rows = []
    g = f
    while not g.is_zero():
        rows.append(linalg.solve(v, confluent_values(g, nodes)))
        if g.degree < size:
            break
        g = backward_shift(g, nodes)
    if rows:
        table = np.array(rows)                    # (terms, size)
        components = tuple(Polynomial(table[:, j]) for j in range(size))
    else:
        components = tuple(Polynomial.zero() for _ in range(size))
    d = Decomposition(nodes, "polynomial", (1, 1), components=components)
    return dataclasses.replace(d, residual=_verify_reconstruction(d, f))


def decompose_rational(f, nodes: NodeSet) -> Decomposition:
    """Decompose a rational matrix through its state-space realization."""
    from .realization import realize

    fm = coerce_rational(f)
    real = realize(fm, nodes)
    d = Decomposition(nodes, "rational", fm.shape, realization=real,
                      residual=real.fidelity_residual)
    return d


def reconstruct(d: Decomposition, z):
    """Evaluate the decomposed function at z."""
    return d.reconstruct(z)


def _verify_reconstruction(d: Decomposition, f: Polynomial, samples: int = 10) -> float:
    worst = 0.0
    for z in node_circle_points(d.nodes, samples):
        fz = f(z)
        worst = max(worst, abs(d.reconstruct(z) - fz) / (1.0 + abs(fz)))
    return worst


@dataclass(frozen=True)
class ContourConfig:
    """Quadrature setup: one circle per node, trapezoidal samples on each.

    The radius is min(0.45 * min pairwise node separation, radius_cap),
    which keeps the circles pairwise disjoint and away from the other
    nodes. The function must be analytic on and inside every circle.
    """

    radius_cap: float = 0.35
    samples: int = 512

    def radius(self, nodes: NodeSet) -> float:
        sep = nodes.min_separation
        r = self.radius_cap if sep == float("inf") else min(0.45 * sep, self.radius_cap)
        if r <= 0.0:
            raise PreconditionError("contour radius collapsed to zero")
        return r


def contour_radius_floor(nodes: NodeSet, cfg: ContourConfig | None = None) -> float:
    """Computed admissibility bound: min |p(s)| over the quadrature nodes."""
    cfg = cfg or ContourConfig()
    s, _ = _quadrature_points(nodes, cfg.radius(nodes), 2 * cfg.samples)
    return float(np.min(np.abs(nodes.polynomial()(s))))


def _quadrature_points(nodes: NodeSet, radius: float, samples: int):
    angles = 2.0 * np.pi * np.arange(samples) / samples
    unit = np.exp(1j * angles)
    pts = []
    weights = []
    for w, _ in nodes.entries:
        pts.append(w + radius * unit)
        # d s = i * radius * e^{i t} dt; the 1/(2 pi i) cancels the i
        weights.append(radius * unit / samples)
    return np.concatenate(pts), np.concatenate(weights)


def contour_oracle(f, nodes: NodeSet, lam: complex,
                   cfg: ContourConfig | None = None) -> np.ndarray:
    """Quadrature value of the coordinate function F at lam.

    Integrates Q(s) f(s) / (p(s) - lam) over the node circles, where Q is
    the difference-quotient vector of the node polynomial. ``lam`` must
    satisfy |lam| < min |p| over the contours (computed, not assumed).
    The result is accepted only if doubling the sample count moves it by
    at most 1e-6.
    """
    cfg = cfg or ContourConfig()
    lam = complex(lam)
    p = nodes.polynomial()
    qvec = difference_quotient_vector(p)
    radius = cfg.radius(nodes)

    def run(samples: int) -> np.ndarray:
        s, wts = _quadrature_points(nodes, radius, samples)
        ps = p(s)
        rho = float(np.min(np.abs(ps)))
        if abs(lam) >= rho:
            raise AdmissibilityError(
                f"|lam| = {abs(lam):.4g} is not below the computed bound {rho:.4g}"
            )
        fs = np.array([f(x) for x in s]) if not _vector_safe(f) else np.asarray(f(s))
        kernel = wts * fs / (ps - lam)
        return np.array([np.sum(q(s) * kernel) for q in qvec])

    coarse = run(cfg.samples)
    fine = run(2 * cfg.samples)
    drift = float(np.max(np.abs(fine - coarse)))
    if drift > 1e-6:
        raise ConvergenceError(
            f"quadrature not converged: doubling samples moved the result by {drift:.3e}"
        )
    return fine


def _vector_safe(f) -> bool:
    from .rational import RationalFunction

    return isinstance(f, (Polynomial, RationalFunction))
