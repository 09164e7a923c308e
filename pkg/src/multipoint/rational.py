"""Rational functions and rational matrices over a common scalar denominator."""

from __future__ import annotations

import numpy as np

from .errors import PoleError, PreconditionError
from .poly import Polynomial, series_divide

# |den(w)| at or below this times the denominator's coefficient norm
# counts as a pole at w.
POLE_REL_TOL = 1e-10


def _normalize(num_like, den: Polynomial):
    """Scale so the denominator is monic; keeps serialization canonical."""
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    lead = den.coeffs[-1]
    return num_like, Polynomial(den.coeffs / lead), lead


class RationalFunction:
    """Scalar rational function num/den with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=Polynomial.one()):
        num = num if isinstance(num, Polynomial) else Polynomial((complex(num),))
        den = den if isinstance(den, Polynomial) else Polynomial((complex(den),))
        _, den_monic, lead = _normalize(num, den)
        object.__setattr__(self, "num", num * (1.0 / lead))
        object.__setattr__(self, "den", den_monic)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __call__(self, z):
        denval = self.den(z)
        return self.num(z) / denval

    def derivatives_at(self, z: complex, count: int) -> np.ndarray:
        """(f(z), f'(z), ..., f^(count-1)(z)) via local series division."""
        dz = self.den.taylor(z, count + 1)
        if abs(dz[0]) <= POLE_REL_TOL * max(1.0, self.den.coeff_norm()):
            raise PoleError(f"evaluation at a pole (|den({z})| = {abs(dz[0]):.2e})")
        nz = self.num.taylor(z, count + 1)
        series = series_divide(nz, dz, count)
        fact = np.ones(count)
        for k in range(2, count):
            fact[k] = fact[k - 1] * k
        return series * fact

    def compose_polynomial(self, inner: Polynomial) -> "RationalFunction":
        """self(inner(z)) as a rational function of z."""
        return RationalFunction(self.num.compose(inner), self.den.compose(inner))

    def has_pole_near(self, z: complex) -> bool:
        return abs(self.den(z)) <= POLE_REL_TOL * max(1.0, self.den.coeff_norm())

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"

    def __str__(self):
        if self.is_polynomial():
            return str(self.num * (1.0 / self.den.coeffs[0]))
        return f"({self.num}) / ({self.den})"


class RationalMatrix:
    """r x s matrix of polynomial numerators over one scalar monic denominator."""

    __slots__ = ("nums", "den")

    def __init__(self, nums, den=Polynomial.one()):
        den = den if isinstance(den, Polynomial) else Polynomial((complex(den),))
        arr = np.asarray(nums, dtype=object)
        if arr.ndim == 0:
            arr = arr.reshape(1, 1)
        elif arr.ndim == 1:
            arr = arr.reshape(-1, 1)
        elif arr.ndim != 2:
            raise ValueError("numerators must form a scalar, vector, or matrix")
        out = np.empty(arr.shape, dtype=object)
        _, den_monic, lead = _normalize(None, den)
        for idx in np.ndindex(arr.shape):
            e = arr[idx]
            e = e if isinstance(e, Polynomial) else Polynomial((complex(e),))
            out[idx] = e * (1.0 / lead)
        out.setflags(write=False)
        object.__setattr__(self, "nums", out)
        object.__setattr__(self, "den", den_monic)

    def __setattr__(self, name, value):
        raise AttributeError("RationalMatrix is immutable")

    @classmethod
    def from_scalar(cls, f) -> "RationalMatrix":
        if isinstance(f, RationalMatrix):
            return f
        if isinstance(f, RationalFunction):
            return cls(np.array([[f.num]], dtype=object), f.den)
        if isinstance(f, Polynomial):
            return cls(np.array([[f]], dtype=object))
        return cls(np.array([[Polynomial((complex(f),))]], dtype=object))

    @property
    def shape(self) -> tuple[int, int]:
        return self.nums.shape

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def is_zero(self) -> bool:
        return all(self.nums[idx].is_zero() for idx in np.ndindex(self.nums.shape))

    def entry(self, i: int, j: int) -> RationalFunction:
        return RationalFunction(self.nums[i, j], self.den)

    def column(self, j: int) -> "RationalMatrix":
        return RationalMatrix(self.nums[:, j : j + 1], self.den)

    def numerator_degrees(self) -> np.ndarray:
        return np.array([[self.nums[i, j].degree for j in range(self.shape[1])]
                         for i in range(self.shape[0])])

    def __call__(self, z) -> np.ndarray:
        denval = self.den(z)
        r, s = self.shape
        out = np.empty((r, s), dtype=complex)
        for i in range(r):
            for j in range(s):
                out[i, j] = self.nums[i, j](z) / denval
        return out

    def derivatives_at(self, z: complex, count: int) -> np.ndarray:
        """Shape (count, r, s): entrywise derivatives at z."""
        dz = self.den.taylor(z, count + 1)
        if abs(dz[0]) <= POLE_REL_TOL * max(1.0, self.den.coeff_norm()):
            raise PoleError(f"evaluation at a pole (|den({z})| = {abs(dz[0]):.2e})")
        r, s = self.shape
        out = np.empty((count, r, s), dtype=complex)
        fact = np.ones(count)
        for k in range(2, count):
            fact[k] = fact[k - 1] * k
        for i in range(r):
            for j in range(s):
                series = series_divide(self.nums[i, j].taylor(z, count + 1), dz, count)
                out[:, i, j] = series * fact
        return out

    def check_no_poles_at(self, nodes) -> None:
        """Raise PoleError if the denominator vanishes (to tolerance) at a node."""
        scale = max(1.0, self.den.coeff_norm())
        for w, _ in nodes.entries:
            if abs(self.den(w)) <= POLE_REL_TOL * scale:
                raise PoleError(f"function has a pole at node {w}")

    def __repr__(self):
        return f"RationalMatrix(shape={self.shape}, den={self.den!r})"


def coerce_rational(f) -> RationalMatrix:
    """Accept Polynomial, RationalFunction, RationalMatrix, or a constant."""
    if isinstance(f, RationalMatrix):
        return f
    if isinstance(f, (RationalFunction, Polynomial)):
        return RationalMatrix.from_scalar(f)
    if isinstance(f, np.ndarray) and f.dtype == object:
        return RationalMatrix(f)
    if isinstance(f, (int, float, complex)):
        return RationalMatrix.from_scalar(f)
    raise PreconditionError(f"cannot interpret {type(f).__name__} as a rational matrix")
