import numpy as np
import pytest

from vlasov_burgers.errors import InvalidArgumentError
from vlasov_burgers.quadrature import (
    gauss_rule,
    legendre_eval,
    legendre_table,
    volume_rule_size,
)


def test_p0_is_one():
    assert legendre_eval(0, 0.3) == (1.0, 0.0)


def test_p2_closed_form():
    val, der = legendre_eval(2, 0.5)
    assert val == pytest.approx((3 * 0.25 - 1) / 2)
    assert der == pytest.approx(3 * 0.5)


@pytest.mark.parametrize("k", [1, 2, 3, 5, 8])
def test_endpoint_identities(k):
    val, der = legendre_eval(k, 1.0)
    assert val == pytest.approx(1.0, abs=1e-14)
    assert der == pytest.approx(k * (k + 1) / 2.0, rel=1e-14)


def test_table_matches_pointwise():
    nodes = np.linspace(-1, 1, 7)
    P, D = legendre_table(5, nodes)
    for m in range(6):
        for q, xi in enumerate(nodes):
            v, d = legendre_eval(m, xi)
            assert P[m, q] == pytest.approx(v, abs=1e-14)
            assert D[m, q] == pytest.approx(d, abs=1e-13)


def test_one_point_rule():
    r = gauss_rule(1)
    assert np.allclose(r.nodes, [0.0])
    assert np.allclose(r.weights, [2.0])


def test_two_point_rule():
    r = gauss_rule(2)
    assert np.allclose(r.nodes, [-1 / np.sqrt(3), 1 / np.sqrt(3)])
    assert np.allclose(r.weights, [1.0, 1.0])


def test_five_points_integrate_degree_eight():
    # oracle: the exact antiderivative gives 2/9 for xi^8 over [-1, 1]
    r = gauss_rule(5)
    assert np.dot(r.weights, r.nodes**8) == pytest.approx(2.0 / 9.0, abs=1e-14)


def test_rule_bounds():
    with pytest.raises(InvalidArgumentError):
        gauss_rule(0)
    with pytest.raises(InvalidArgumentError):
        gauss_rule(33)


@pytest.mark.parametrize("n", [3, 8, 17, 32])
def test_rule_invariants(n):
    r = gauss_rule(n)
    assert abs(r.weights.sum() - 2.0) < 1e-14
    assert np.all(r.weights > 0)
    assert np.allclose(r.nodes, -r.nodes[::-1])
    assert np.all(np.abs(r.nodes) < 1.0)
    # exact for degree 2n-1
    for deg in (2 * n - 2, 2 * n - 1):
        exact = 2.0 / (deg + 1) if deg % 2 == 0 else 0.0
        assert np.dot(r.weights, r.nodes**deg) == pytest.approx(exact, abs=1e-13)


def test_orthogonality():
    r = gauss_rule(9)
    P, _ = legendre_table(8, r.nodes)
    gram = np.einsum("mq,nq,q->mn", P, P, r.weights)
    expected = np.diag(2.0 / (2.0 * np.arange(9) + 1.0))
    assert np.abs(gram - expected).max() < 1e-13


def test_nodes_match_numpy_reference():
    for n in (4, 12, 20):
        x, w = np.polynomial.legendre.leggauss(n)
        r = gauss_rule(n)
        assert np.abs(np.sort(x) - r.nodes).max() < 1e-14
        assert np.abs(w[np.argsort(x)] - r.weights).max() < 1e-13


def test_volume_rule_size_covers_cubic_term():
    for k in range(0, 5):
        nq = volume_rule_size(k)
        assert 2 * nq - 1 >= 3 * k  # u^2 against a derivative of the basis
        assert nq >= k + 2
