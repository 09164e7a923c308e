import warnings

import numpy as np
import pytest
from numpy.testing import assert_allclose

from multipoint.errors import PreconditionError
from multipoint.linalg import solve
from multipoint.nodes import (
    ConditioningWarning,
    NodeSet,
    confluent_values,
    confluent_vandermonde,
    hermite_interpolant,
    interpolate_confluent,
    monomial_row,
    monomial_row_derivative,
    node_circle_points,
    reciprocal_partial_fractions,
)
from multipoint.poly import Polynomial
from multipoint.rational import RationalFunction

PM1 = NodeSet([(1.0, 1), (-1.0, 1)])


def test_nodeset_validation():
    with pytest.raises(PreconditionError):
        NodeSet([])
    with pytest.raises(PreconditionError):
        NodeSet([(1.0, 0)])
    with pytest.raises(PreconditionError):
        NodeSet([(1.0, 1), (1.0, 2)])
    ns = NodeSet([(0.5j, 2), (1.0, 1)])
    assert ns.total_degree == 3
    assert ns.n == 2
    assert ns.min_separation == pytest.approx(abs(0.5j - 1.0))


def test_close_nodes_warn():
    with pytest.warns(ConditioningWarning):
        NodeSet([(0.0, 1), (1e-4, 1)])


def test_node_polynomial_examples():
    assert PM1.polynomial() == Polynomial([-1, 0, 1])
    assert NodeSet([(0.0, 2)]).polynomial() == Polynomial([0, 0, 1])
    # (z-1)^2 (z+1), expanded by an independent convolution
    expect = np.convolve(np.convolve([-1, 1], [-1, 1]), [1, 1])
    got = NodeSet([(1.0, 2), (-1.0, 1)]).polynomial()
    assert_allclose(got.coeffs, np.array([1, -1, -1, 1], dtype=complex))
    assert_allclose(got.coeffs, expect[::-1].astype(complex))


def test_monomial_row():
    assert_allclose(monomial_row(0.0, 3), [1, 0, 0])
    assert_allclose(monomial_row(2.0, 3), [1, 2, 4])
    assert_allclose(monomial_row(1j, 2), [1, 1j])


def test_vandermonde_examples():
    assert_allclose(confluent_vandermonde(PM1), [[1, 1], [1, -1]])
    assert_allclose(confluent_vandermonde(NodeSet([(0.0, 2)])), np.eye(2))
    v = confluent_vandermonde(NodeSet([(1.0, 2), (-1.0, 1)]))
    assert_allclose(v, [[1, 1, 1], [0, 1, 2], [1, -1, 1]])


def test_derivative_rows_match_monomial_derivatives():
    w = 0.7 - 0.4j
    size = 6
    for k in range(4):
        row = monomial_row_derivative(w, size, k)
        expect = [Polynomial.monomial(t).derivative(k)(w) for t in range(size)]
        assert_allclose(row, expect, atol=1e-12)


def test_confluent_values_examples():
    zsq = Polynomial([0, 0, 1])
    assert_allclose(confluent_values(zsq, PM1), [1, 1])
    assert_allclose(confluent_values(zsq, NodeSet([(0.0, 2)])), [0, 0])
    f = RationalFunction(Polynomial([1]), Polynomial([-2, 1]))
    assert_allclose(confluent_values(f, PM1), [-1, -1 / 3])


def test_confluent_values_plain_callable_simple_nodes():
    vals = confluent_values(lambda z: z**3, PM1)
    assert_allclose(vals, [1, -1])
    with pytest.raises(TypeError):
        confluent_values(lambda z: z, NodeSet([(0.0, 2)]))


def test_vandermonde_invertible_random():
    rng = np.random.default_rng(19)
    for _ in range(30):
        n = int(rng.integers(1, 4))
        ws = []
        while len(ws) < n:
            w = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            if abs(w) <= 2 and all(abs(w - u) >= 0.5 for u in ws):
                ws.append(w)
        mus = [int(rng.integers(1, 4)) for _ in range(n)]
        if sum(mus) > 8:
            continue
        ns = NodeSet(tuple(zip(ws, mus)))
        v = confluent_vandermonde(ns)
        assert abs(np.linalg.det(v)) > 0
        b = rng.normal(size=ns.total_degree) + 1j * rng.normal(size=ns.total_degree)
        x = solve(v, b)
        assert np.max(np.abs(v @ x - b)) <= 1e-9 * max(1.0, np.max(np.abs(b)))


def test_hermite_interpolation_property():
    rng = np.random.default_rng(23)
    for _ in range(20):
        ns = NodeSet([(0.9, 2), (-0.3 + 0.8j, 1), (-1.1, 1)])
        target = rng.normal(size=4) + 1j * rng.normal(size=4)
        h = interpolate_confluent(ns, target)
        assert h.degree < ns.total_degree
        assert_allclose(confluent_values(h, ns), target, atol=1e-8)


def test_hermite_interpolant_of_function():
    f = RationalFunction(Polynomial([1]), Polynomial([-2, 1]))
    h = hermite_interpolant(f, PM1)
    # hand solve: h(1) = -1, h(-1) = -1/3 -> h(z) = -(z + 2)/3
    assert_allclose(h.coeffs, [-2 / 3, -1 / 3], atol=1e-12)


def test_partial_fractions_examples():
    table = reciprocal_partial_fractions(PM1)
    coeffs = {(t.node_index, t.order): t.coefficient for t in table.terms}
    assert coeffs[(0, 1)] == pytest.approx(0.5)
    assert coeffs[(1, 1)] == pytest.approx(-0.5)

    table = reciprocal_partial_fractions(NodeSet([(0.0, 2)]))
    coeffs = {(t.node_index, t.order): t.coefficient for t in table.terms}
    assert coeffs[(0, 2)] == pytest.approx(1.0)
    assert coeffs[(0, 1)] == pytest.approx(0.0)

    table = reciprocal_partial_fractions(NodeSet([(0.0, 1), (2.0, 1)]))
    coeffs = {(t.node_index, t.order): t.coefficient for t in table.terms}
    assert coeffs[(0, 1)] == pytest.approx(-0.5)
    assert coeffs[(1, 1)] == pytest.approx(0.5)


def test_partial_fractions_reconstruction_random():
    rng = np.random.default_rng(31)
    for _ in range(10):
        ws = []
        while len(ws) < 3:
            w = complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
            if all(abs(w - u) >= 0.6 for u in ws):
                ws.append(w)
        ns = NodeSet([(ws[0], 2), (ws[1], 1), (ws[2], 1)])
        table = reciprocal_partial_fractions(ns)
        p = ns.polynomial()
        assert len(table.terms) == ns.total_degree
        count = 0
        while count < 50:
            z = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
            if min(abs(z - w) for w in ws) < 0.3:
                continue
            assert abs(1.0 / p(z) - table(z)) <= 1e-9
            count += 1


def test_node_circle_points_stay_disjoint():
    ns = NodeSet([(1.0, 1), (-1.0, 2)])
    pts = node_circle_points(ns, 40)
    dists = np.abs(pts[:, None] - ns.nodes[None, :])
    assert np.all(np.min(dists, axis=1) <= 0.46 * ns.min_separation)
