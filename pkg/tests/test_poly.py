import numpy as np
import pytest
from numpy.testing import assert_allclose

from multipoint.errors import ExactnessError
from multipoint.poly import (
    Polynomial,
    difference_quotient_vector,
    divide,
    exact_divide,
    series_divide,
    series_inverse,
    series_mul,
)


def test_eval_examples():
    assert Polynomial([1, 2])(1j) == pytest.approx(1 + 2j)
    assert Polynomial([-1, 0, 1])(1.0) == pytest.approx(0.0)
    assert Polynomial([0, 0, 0, 1])(2.0) == pytest.approx(8.0)


def test_eval_array_and_zero():
    p = Polynomial([1, 0, 1])
    vals = p(np.array([0.0, 1.0, 2.0]))
    assert_allclose(vals, [1.0, 2.0, 5.0])
    assert Polynomial.zero()(3.7) == 0


def test_derivative_examples():
    zsq = Polynomial([0, 0, 1])
    assert zsq.derivative() == Polynomial([0, 2])
    assert zsq.derivative(3) == Polynomial.zero()
    p = Polynomial([1, 1, 1])
    assert p.derivative(0) == p


def test_divrem_examples():
    q, r = divide(Polynomial([-1, 0, 1]), Polynomial([-1, 1]))
    assert q == Polynomial([1, 1]) and r.is_zero()
    q, r = divide(Polynomial([1]), Polynomial([0, 1]))
    assert q.is_zero() and r == Polynomial([1])
    q, r = divmod(Polynomial([0, 0, 0, 1]), Polynomial([-1, 0, 1]))
    # z^3 = z*(z^2 - 1) + z
    assert q == Polynomial([0, 1])
    assert r == Polynomial([0, 1])


def test_divrem_by_zero():
    with pytest.raises(ZeroDivisionError):
        divide(Polynomial([1]), Polynomial.zero())


def test_divrem_roundtrip_random():
    rng = np.random.default_rng(42)
    for _ in range(40):
        f = Polynomial(rng.normal(size=9) + 1j * rng.normal(size=9))
        g = Polynomial(rng.normal(size=4) + 1j * rng.normal(size=4))
        q, r = divide(f, g)
        zs = rng.normal(size=20) + 1j * rng.normal(size=20)
        lhs = f(zs)
        rhs = q(zs) * g(zs) + r(zs)
        assert_allclose(rhs, lhs, rtol=1e-10, atol=1e-10)


def test_exact_divide_flags_nonzero_remainder():
    with pytest.raises(ExactnessError):
        exact_divide(Polynomial([1, 0, 1]), Polynomial([-1, 1]))


def test_normalization_trims_trailing_noise():
    p = Polynomial([1.0, 2.0, 1e-15])
    assert p.degree == 1
    assert Polynomial([0.0, 0.0]).is_zero()
    assert Polynomial.zero().degree == -1


def test_rejects_non_finite():
    with pytest.raises(ValueError):
        Polynomial([1.0, np.nan])
    with pytest.raises(ValueError):
        Polynomial([np.inf])


def test_difference_quotient_examples():
    q = difference_quotient_vector(Polynomial([-1, 0, 1]))
    assert q[0] == Polynomial([0, 1])
    assert q[1] == Polynomial([1])
    for n in (1, 2, 5):
        qn = difference_quotient_vector(Polynomial.monomial(n))
        for j in range(n):
            assert qn[j] == Polynomial.monomial(n - 1 - j)
    q3 = difference_quotient_vector(Polynomial([1, -1, -1, 1]))
    assert q3[0] == Polynomial([-1, -1, 1])
    assert q3[1] == Polynomial([-1, 1])
    assert q3[2] == Polynomial([1])


def test_difference_quotient_identity_random():
    rng = np.random.default_rng(7)
    for _ in range(10):
        deg = int(rng.integers(1, 9))
        p = Polynomial(rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1))
        q = difference_quotient_vector(p)
        for _ in range(10):
            s, z = rng.normal(size=2) + 1j * rng.normal(size=2)
            total = sum(z**j * q[j](s) for j in range(len(q)))
            lhs = total * (s - z)
            rhs = p(s) - p(z)
            assert abs(lhs - rhs) <= 1e-10 * (1 + abs(p(s)) + abs(p(z)))


def test_taylor_matches_derivatives():
    rng = np.random.default_rng(3)
    p = Polynomial(rng.normal(size=7) + 1j * rng.normal(size=7))
    w = 0.3 - 0.8j
    t = p.taylor(w, 5)
    fact = 1.0
    for k in range(5):
        if k > 0:
            fact *= k
        assert t[k] * fact == pytest.approx(p.derivative(k)(w), rel=1e-11, abs=1e-11)


def test_derivatives_at():
    p = Polynomial([0, 0, 1])
    d = p.derivatives_at(3.0, 4)
    assert_allclose(d, [9.0, 6.0, 2.0, 0.0])


def test_compose():
    outer = Polynomial([1, 0, 1])       # 1 + x^2
    inner = Polynomial([0, 2])          # 2z
    assert outer.compose(inner) == Polynomial([1, 0, 4])


def test_from_roots_and_monomial():
    p = Polynomial.from_roots([1.0, -1.0])
    assert p == Polynomial([-1, 0, 1])
    assert Polynomial.monomial(3, 2.0) == Polynomial([0, 0, 0, 2])


def test_series_helpers():
    # 1/(1 - x) = 1 + x + x^2 + ...
    inv = series_inverse(np.array([1.0, -1.0]), 5)
    assert_allclose(inv, np.ones(5))
    quot = series_divide(np.array([1.0, 0.0]), np.array([1.0, 1.0]), 4)
    assert_allclose(quot, [1.0, -1.0, 1.0, -1.0])
    prod = series_mul(np.array([1.0, 1.0]), np.array([1.0, 1.0]), 3)
    assert_allclose(prod, [1.0, 2.0, 1.0])


def test_str_rendering():
    assert str(Polynomial([1, 2])) == "1 + 2*z"
    assert str(Polynomial.zero()) == "0"
    assert "z^2" in str(Polynomial([0, 0, -1]))
