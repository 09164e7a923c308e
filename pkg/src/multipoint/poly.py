"""Dense univariate polynomials over complex doubles.

Coefficients are stored ascending; the zero polynomial has an empty
coefficient array and degree -1. Trailing coefficients at or below
``TRIM_REL`` times the largest magnitude are trimmed so equal
polynomials get identical coefficient lists.
"""

from __future__ import annotations

import numpy as np

from .errors import ExactnessError

# Relative magnitude below which trailing coefficients are dropped.
TRIM_REL = 1e-12


class Polynomial:
    """Immutable dense polynomial with complex coefficients, ascending order."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = np.atleast_1d(np.asarray(coeffs, dtype=complex)).ravel()
        if c.size and not np.all(np.isfinite(c.view(float))):
            raise ValueError("non-finite polynomial coefficient")
        if c.size:
            top = np.max(np.abs(c))
            keep = np.abs(c) > TRIM_REL * top if top > 0.0 else np.zeros(c.size, bool)
            last = int(np.max(np.nonzero(keep)[0])) + 1 if keep.any() else 0
            c = c[:last]
        c = c.copy()
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- construction helpers -------------------------------------------

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls(())

    @classmethod
    def one(cls) -> "Polynomial":
        return cls((1.0,))

    @classmethod
    def monomial(cls, k: int, scale: complex = 1.0) -> "Polynomial":
        """scale * z**k"""
        c = np.zeros(k + 1, dtype=complex)
        c[k] = scale
        return cls(c)

    @classmethod
    def from_roots(cls, roots) -> "Polynomial":
        """Monic polynomial with the given roots (with repetition)."""
        c = np.array([1.0 + 0.0j])
        for r in np.asarray(roots, dtype=complex).ravel():
            c = np.convolve(c, np.array([-r, 1.0 + 0.0j]))
        return cls(c)

    # -- basic queries ---------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return self.coeffs.size - 1

    def is_zero(self) -> bool:
        return self.coeffs.size == 0

    def coeff_norm(self) -> float:
        """Largest coefficient magnitude (0 for the zero polynomial)."""
        return float(np.max(np.abs(self.coeffs))) if self.coeffs.size else 0.0

    def __call__(self, z):
        """Horner evaluation; accepts scalars or arrays."""
        if self.coeffs.size == 0:
            zero = np.zeros_like(np.asarray(z, dtype=complex))
            return zero if zero.ndim else complex(0)
        z = np.asarray(z, dtype=complex)
        acc = np.full(z.shape, self.coeffs[-1])
        for c in self.coeffs[-2::-1]:
            acc = acc * z + c
        return acc if acc.ndim else complex(acc)

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        n = max(self.coeffs.size, other.coeffs.size)
        c = np.zeros(n, dtype=complex)
        c[: self.coeffs.size] += self.coeffs
        c[: other.coeffs.size] += other.coeffs
        return Polynomial(c)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-self.coeffs)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return Polynomial.zero()
        return Polynomial(np.convolve(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __divmod__(self, other):
        return divide(self, _coerce(other))

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs.size == other.coeffs.size and bool(np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash(self.coeffs.tobytes())

    def derivative(self, order: int = 1) -> "Polynomial":
        """order-th formal derivative (order >= 0)."""
        if order < 0:
            raise ValueError("derivative order must be >= 0")
        c = self.coeffs
        for _ in range(order):
            if c.size <= 1:
                return Polynomial.zero()
            c = c[1:] * np.arange(1, c.size)
        return Polynomial(c)

    def compose(self, inner: "Polynomial") -> "Polynomial":
        """self(inner(z)) by Horner over polynomial arithmetic."""
        acc = Polynomial.zero()
        for c in self.coeffs[::-1]:
            acc = acc * inner + Polynomial((c,))
        return acc

    def taylor(self, center: complex, count: int) -> np.ndarray:
        """First ``count`` Taylor coefficients at ``center``.

        Entry k is the coefficient of (z - center)**k, i.e. the k-th
        derivative divided by k!. Computed by repeated synthetic division,
        which is stable for the desk-scale degrees used here.
        """
        out = np.zeros(count, dtype=complex)
        c = np.array(self.coeffs)
        for k in range(count):
            if c.size == 0:
                break
            # one synthetic-division pass by (z - center); the remainder is
            # the next Taylor coefficient and the quotient carries on
            q = np.zeros(max(c.size - 1, 0), dtype=complex)
            acc = complex(0)
            for j in range(c.size - 1, 0, -1):
                acc = c[j] + center * acc
                q[j - 1] = acc
            out[k] = c[0] + center * acc if c.size > 1 else complex(c[0])
            c = q
        return out

    def derivatives_at(self, z: complex, count: int) -> np.ndarray:
        """Values (f(z), f'(z), ..., f^(count-1)(z))."""
        t = self.taylor(z, count)
        return t * _factorials(count)

    def shift_down(self, k: int = 1) -> "Polynomial":
        """Exact division by z**k; requires the low k coefficients to vanish."""
        if self.is_zero():
            return self
        low = self.coeffs[:k]
        if low.size and np.max(np.abs(low)) > 1e-9 * max(1.0, self.coeff_norm()):
            raise ExactnessError("polynomial not divisible by z**%d" % k)
        return Polynomial(self.coeffs[k:])

    def __repr__(self):
        return f"Polynomial({self.coeffs.tolist()!r})"

    def __str__(self):
        return format_poly(self)


def _coerce(value) -> Polynomial:
    if isinstance(value, Polynomial):
        return value
    return Polynomial((complex(value),))


def _factorials(count: int) -> np.ndarray:
    out = np.ones(count)
    for k in range(2, count):
        out[k] = out[k - 1] * k
    return out


def divide(f: Polynomial, g: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Quotient and remainder with deg(remainder) < deg(g), by synthetic division."""
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if f.degree < g.degree:
        return Polynomial.zero(), f
    rem = np.array(f.coeffs)
    dg = g.degree
    lead = g.coeffs[-1]
    q = np.zeros(f.degree - dg + 1, dtype=complex)
    for k in range(f.degree - dg, -1, -1):
        q[k] = rem[k + dg] / lead
        rem[k : k + dg + 1] -= q[k] * g.coeffs
    return Polynomial(q), Polynomial(rem[:dg])


def exact_divide(f: Polynomial, g: Polynomial, rel_tol: float = 1e-8) -> Polynomial:
    """Division that must be exact; large remainders raise ExactnessError."""
    q, r = divide(f, g)
    scale = max(f.coeff_norm(), 1e-300)
    if r.coeff_norm() > rel_tol * scale:
        raise ExactnessError(
            f"inexact polynomial division: remainder {r.coeff_norm():.3e} vs scale {scale:.3e}"
        )
    return q


def difference_quotient_vector(p: Polynomial) -> list[Polynomial]:
    """Components Q_0..Q_{N-1} of (p(s) - p(z)) / (s - z) in powers of z.

    Q_j(s) collects the coefficients p_{j+1}, p_{j+2}, ... of p, so that
    sum_j z**j * Q_j(s) * (s - z) == p(s) - p(z) identically.
    """
    n = p.degree
    if n < 1:
        raise ValueError("difference quotient needs degree >= 1")
    return [Polynomial(p.coeffs[j + 1 :]) for j in range(n)]


def series_inverse(a: np.ndarray, count: int) -> np.ndarray:
    """Power-series reciprocal of a (a[0] != 0), truncated to ``count`` terms."""
    a = np.asarray(a, dtype=complex)
    if a.size == 0 or a[0] == 0:
        raise ZeroDivisionError("series has no reciprocal (zero constant term)")
    b = np.zeros(count, dtype=complex)
    b[0] = 1.0 / a[0]
    for t in range(1, count):
        s = complex(0)
        for i in range(1, min(t, a.size - 1) + 1):
            s += a[i] * b[t - i]
        b[t] = -s / a[0]
    return b


def series_mul(a: np.ndarray, b: np.ndarray, count: int) -> np.ndarray:
    """Truncated product of two power series."""
    a = np.asarray(a, dtype=complex)[:count]
    b = np.asarray(b, dtype=complex)[:count]
    if a.size == 0 or b.size == 0:
        return np.zeros(count, dtype=complex)
    full = np.convolve(a, b)
    out = np.zeros(count, dtype=complex)
    out[: min(count, full.size)] = full[:count]
    return out


def series_compose_poly(p: Polynomial, inner: np.ndarray, count: int) -> np.ndarray:
    """Truncated series of p(inner) for a power series ``inner``."""
    acc = np.zeros(count, dtype=complex)
    for c in p.coeffs[::-1]:
        acc = series_mul(acc, inner, count)
        acc[0] += c
    return acc


def series_divide(num: np.ndarray, den: np.ndarray, count: int) -> np.ndarray:
    """Power-series quotient num/den truncated to ``count`` terms (den[0] != 0)."""
    num = np.asarray(num, dtype=complex)
    den = np.asarray(den, dtype=complex)
    if den.size == 0 or den[0] == 0:
        raise ZeroDivisionError("series division by zero constant term")
    c = np.zeros(count, dtype=complex)
    for t in range(count):
        s = num[t] if t < num.size else complex(0)
        for i in range(1, min(t, den.size - 1) + 1):
            s -= den[i] * c[t - i]
        c[t] = s / den[0]
    return c


def format_poly(p: Polynomial, var: str = "z") -> str:
    """Compact human-readable rendering, e.g. '1 + 2*z - z^3'."""
    if p.is_zero():
        return "0"
    parts = []
    for k, c in enumerate(p.coeffs):
        if abs(c) == 0.0:
            continue
        if c.imag == 0.0:
            mag = f"{c.real:g}"
        elif c.real == 0.0:
            mag = f"{c.imag:g}j"
        else:
            mag = f"({c.real:g}{c.imag:+g}j)"
        if k == 0:
            parts.append(mag)
        else:
            power = var if k == 1 else f"{var}^{k}"
            parts.append(power if mag == "1" else f"{mag}*{power}")
    return " + ".join(parts).replace("+ -", "- ")
