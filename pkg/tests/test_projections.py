import numpy as np
import pytest

from vlasov_burgers.errors import InvalidArgumentError
from vlasov_burgers.fields import error_l2_1d, error_l2_2d, l2_project_2d
from vlasov_burgers.mesh import tensor_mesh, uniform_partition
from vlasov_burgers.projections import (
    gauss_radau_1d,
    gr_residuals_1d,
    pi_2d,
    trace_error_1d,
    trace_error_2d,
)
from vlasov_burgers.quadrature import gauss_rule, legendre_table

EX1_F0 = lambda x, v: (1.0 + np.sin(x)) * np.exp(-np.asarray(v, dtype=float) ** 2)  # noqa: E731


@pytest.mark.parametrize("k,lam", [(1, 1.5), (2, 0.7), (2, 1.0)])
def test_reproduces_constants(px8, k, lam):
    q = gauss_radau_1d(lambda x: 4.0 + 0.0 * x, px8, k, lam)
    assert np.abs(q.coeffs[:, 0] - 4.0).max() < 1e-13
    assert np.abs(q.coeffs[:, 1:]).max() < 1e-13


def test_classical_weight_one_matches_traces(px8):
    q = gauss_radau_1d(np.sin, px8, 2, 1.0)
    for r in range(px8.n):
        assert q.trace(r, "-") == pytest.approx(np.sin(px8.edges[r]), abs=1e-13)


def test_condition_residuals(px8):
    for lam in (0.7, 1.5, 2.0):
        q = gauss_radau_1d(np.sin, px8, 2, lam)
        mom, tr = gr_residuals_1d(q, np.sin, lam)
        assert mom < 1e-11
        assert tr < 1e-11


def test_idempotent(px8):
    q = gauss_radau_1d(np.sin, px8, 2, 1.5)
    q2 = gauss_radau_1d(q, px8, 2, 1.5)
    assert np.abs(q2.coeffs - q.coeffs).max() < 1e-12


@pytest.mark.parametrize("k", [1, 2])
def test_rates_1d(k):
    errs, terrs = [], []
    for n in (8, 16, 32, 64):
        p = uniform_partition(0.0, 2.0 * np.pi, n, periodic=True)
        q = gauss_radau_1d(np.sin, p, k, 1.5)
        errs.append(error_l2_1d(q, np.sin))
        terrs.append(trace_error_1d(q, np.sin))
    rate = np.log(errs[-2] / errs[-1]) / np.log(2.0)
    trate = np.log(terrs[-2] / terrs[-1]) / np.log(2.0)
    assert rate >= k + 0.9
    assert trate >= k + 0.4


def test_half_weight_uniqueness_rule():
    even = uniform_partition(0.0, 2.0 * np.pi, 8, periodic=True)
    odd = uniform_partition(0.0, 2.0 * np.pi, 9, periodic=True)
    with pytest.raises(InvalidArgumentError):
        gauss_radau_1d(np.sin, even, 1, 0.5)  # k odd
    with pytest.raises(InvalidArgumentError):
        gauss_radau_1d(np.sin, even, 2, 0.5)  # N even
    q = gauss_radau_1d(np.sin, odd, 2, 0.5)
    mom, tr = gr_residuals_1d(q, np.sin, 0.5)
    assert max(mom, tr) < 1e-11


def test_mirror_weights_on_bounded_line():
    # pi_2d needs the non-periodic projection at weights on both sides of 1/2
    p = uniform_partition(-1.0, 1.0, 10, periodic=False)
    g = lambda v: np.exp(-(v**2))  # noqa: E731
    for lam in (1.5, -0.5, 0.2, 1.0):
        q = gauss_radau_1d(g, p, 2, lam)
        assert error_l2_1d(q, g) < 1e-3


def test_pi2d_constant(mesh8):
    pr = pi_2d(lambda x, v: 2.5 + 0.0 * x * v, np.sin, mesh8, 1, 1, 1.5, 1.5)
    assert np.abs(pr.coeffs[:, :, 0, 0] - 2.5).max() < 1e-13
    assert np.abs(pr.coeffs.reshape(-1, 4)[:, 1:]).max() < 1e-13


def test_pi2d_separable_tensor_structure():
    # one-sign J and u - v > 0 everywhere: the projection factorizes exactly
    px = uniform_partition(0.0, 2.0 * np.pi, 8, periodic=True)
    pv = uniform_partition(0.5, 2.5, 8, periodic=False)
    mesh = tensor_mesh(px, pv)
    a = lambda x: 1.0 + 0.3 * np.sin(x)  # noqa: E731
    b = lambda v: np.exp(-(v**2))  # noqa: E731
    pr = pi_2d(lambda x, v: a(x) * b(v), lambda x: 10.0 + 0.0 * x, mesh, 2, 2, 1.7, 1.3)
    qa = gauss_radau_1d(a, px, 2, 1.7)
    qb = gauss_radau_1d(b, pv, 2, 1.3)
    expect = np.einsum("im,jn->ijmn", qa.coeffs, qb.coeffs)
    assert np.abs(pr.coeffs - expect).max() < 1e-12


def test_pi2d_idempotent(mesh8):
    pr = pi_2d(EX1_F0, np.sin, mesh8, 2, 2, 1.5, 1.5)
    pr2 = pi_2d(pr, np.sin, mesh8, 2, 2, 1.5, 1.5)
    assert np.abs(pr2.coeffs - pr.coeffs).max() < 1e-12


def test_pi2d_volume_conditions(mesh8):
    k = 2
    pr = pi_2d(EX1_F0, np.sin, mesh8, k, k, 1.5, 1.5)
    rule = gauss_rule(10)
    px, pv = mesh8.px, mesh8.pv
    worst = 0.0
    for i in range(px.n):
        for j in range(pv.n):
            x, wx = rule.mapped(px.edges[i], px.edges[i + 1])
            v, wv = rule.mapped(pv.edges[j], pv.edges[j + 1])
            xi = 2.0 * (x - px.centers[i]) / px.sizes[i]
            eta = 2.0 * (v - pv.centers[j]) / pv.sizes[j]
            diff = pr.eval_cell(i, j, xi, eta) - EX1_F0(x[:, None], v[None, :])
            Pz, _ = legendre_table(k - 1, xi)
            Pzv, _ = legendre_table(k - 1, eta)
            res = np.einsum("q,r,zq,yr,qr->zy", wx, wv, Pz, Pzv, diff)
            worst = max(worst, np.abs(res).max())
    assert worst < 1e-11


def test_pi2d_x_edge_conditions(mesh8):
    # weighted trace combo against P^{k-1}(v) on rows of one v-sign
    k = 2
    lam1 = 1.5
    pr = pi_2d(EX1_F0, np.sin, mesh8, k, k, lam1, 1.5)
    rule = gauss_rule(10)
    pv = mesh8.pv
    Pv, _ = legendre_table(k, rule.nodes)
    signs = mesh8.v_sign_rows()
    worst = 0.0
    for r in range(mesh8.px.n):
        xr = mesh8.px.edges[r]
        minus = pr.trace_x(r, "-") @ Pv
        plus = pr.trace_x(r, "+") @ Pv
        for j in range(pv.n):
            w = lam1 if signs[j] > 0 else 1.0 - lam1
            combo = w * minus[j] + (1.0 - w) * plus[j]
            v, wv = rule.mapped(pv.edges[j], pv.edges[j + 1])
            gvals = EX1_F0(xr, v)
            Pz, _ = legendre_table(k - 1, rule.nodes)
            res = np.einsum("q,zq,q->z", wv, Pz, combo - gvals)
            worst = max(worst, np.abs(res).max())
    assert worst < 1e-11


@pytest.mark.parametrize("k", [1, 2])
def test_rates_2d(k):
    errs, terrs = [], []
    for n in (8, 16, 32):
        mesh = tensor_mesh(
            uniform_partition(0.0, 2.0 * np.pi, n, periodic=True),
            uniform_partition(-1.0, 1.0, n, periodic=False),
        )
        pr = pi_2d(EX1_F0, np.sin, mesh, k, k, 1.5, 1.5)
        errs.append(error_l2_2d(pr, EX1_F0))
        terrs.append(trace_error_2d(pr, EX1_F0))
    rate = np.log(errs[-2] / errs[-1]) / np.log(2.0)
    trate = np.log(terrs[-2] / terrs[-1]) / np.log(2.0)
    assert rate >= k + 0.9
    assert trate >= k + 0.4


def test_pi2d_preconditions(mesh8):
    with pytest.raises(InvalidArgumentError):
        pi_2d(EX1_F0, np.sin, mesh8, 1, 1, 0.5, 1.5)
    bad = tensor_mesh(
        uniform_partition(0.0, 2.0 * np.pi, 4, periodic=True),
        uniform_partition(-1.0, 1.0, 5, periodic=False),
    )
    with pytest.raises(InvalidArgumentError):
        pi_2d(EX1_F0, np.sin, bad, 1, 1, 1.5, 1.5)
