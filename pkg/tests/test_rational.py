import numpy as np
import pytest
from numpy.testing import assert_allclose

from multipoint.errors import PoleError, PreconditionError
from multipoint.nodes import NodeSet
from multipoint.poly import Polynomial
from multipoint.rational import RationalFunction, RationalMatrix, coerce_rational

ONE_OVER_ZM2 = RationalFunction(Polynomial([1]), Polynomial([-2, 1]))


def test_eval():
    assert ONE_OVER_ZM2(0.0) == pytest.approx(-0.5)
    assert ONE_OVER_ZM2(3.0) == pytest.approx(1.0)
    vals = ONE_OVER_ZM2(np.array([0.0, 3.0]))
    assert_allclose(vals, [-0.5, 1.0])


def test_derivatives_match_quotient_rule():
    # d/dz (z-2)^-1 = -(z-2)^-2, second derivative 2 (z-2)^-3
    z = 0.5 + 0.25j
    d = ONE_OVER_ZM2.derivatives_at(z, 3)
    assert d[0] == pytest.approx(1 / (z - 2))
    assert d[1] == pytest.approx(-1 / (z - 2) ** 2)
    assert d[2] == pytest.approx(2 / (z - 2) ** 3)


def test_derivatives_at_pole_raises():
    with pytest.raises(PoleError):
        ONE_OVER_ZM2.derivatives_at(2.0, 2)


def test_monic_normalization():
    f = RationalFunction(Polynomial([2]), Polynomial([-4, 2]))
    assert_allclose(f.den.coeffs, [-2, 1])
    z = 1.3 - 0.4j
    assert f(z) == pytest.approx(ONE_OVER_ZM2(z))


def test_compose_polynomial():
    p = Polynomial([-1, 0, 1])
    g = ONE_OVER_ZM2.compose_polynomial(p)
    z = 0.3 + 0.1j
    assert g(z) == pytest.approx(1 / (p(z) - 2))


def test_matrix_eval_and_derivatives():
    nums = np.empty((2, 2), dtype=object)
    nums[0, 0] = Polynomial([1])
    nums[0, 1] = Polynomial([0, 1])
    nums[1, 0] = Polynomial([0, 0, 1])
    nums[1, 1] = Polynomial([1, 1])
    fm = RationalMatrix(nums, Polynomial([-2, 1]))
    z = 0.7 - 0.2j
    vals = fm(z)
    assert vals.shape == (2, 2)
    assert vals[1, 0] == pytest.approx(z**2 / (z - 2))
    d = fm.derivatives_at(z, 3)
    assert d.shape == (3, 2, 2)
    assert d[1, 0, 0] == pytest.approx(-1 / (z - 2) ** 2)


def test_matrix_pole_check():
    fm = RationalMatrix.from_scalar(RationalFunction(Polynomial([1]), Polynomial([-1, 1])))
    with pytest.raises(PoleError):
        fm.check_no_poles_at(NodeSet([(1.0, 1), (-1.0, 1)]))
    fm.check_no_poles_at(NodeSet([(0.0, 1)]))


def test_coerce():
    fm = coerce_rational(Polynomial([0, 1]))
    assert fm.shape == (1, 1)
    assert fm.is_polynomial()
    fm2 = coerce_rational(3.0)
    assert fm2(0.5)[0, 0] == pytest.approx(3.0)
    assert coerce_rational(fm) is fm
    with pytest.raises(PreconditionError):
        coerce_rational("nope")


def test_zero_matrix():
    nums = np.empty((1, 1), dtype=object)
    nums[0, 0] = Polynomial.zero()
    fm = RationalMatrix(nums)
    assert fm.is_zero()


def test_zero_denominator_rejected():
    with pytest.raises(ZeroDivisionError):
        RationalFunction(Polynomial([1]), Polynomial.zero())
