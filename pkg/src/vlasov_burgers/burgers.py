"""LDG spatial operator for the viscous Burgers equation.

The second-order term is handled through the auxiliary variable
w = sqrt(eps) u_x, reconstructed element-locally from u on every call
(the mass matrix is diagonal, so the algebraic constraint inverts in
closed form and w is never a state variable).
"""

import numpy as np

from .errors import InvalidArgumentError
from .fields import ScalarField1D
from .fluxes import FluxParams, flux_burgers_sq, flux_weighted
from .mesh import Partition1D
from .quadrature import gauss_rule, legendre_table, mass_diagonal, volume_rule_size


def validate_central_lambda(lam: float, k: int, nx: int):
    """The central weight lam = 1/2 is only unique for even k and odd N_x."""
    if lam == 0.5 and not (k % 2 == 0 and nx % 2 == 1):
        raise InvalidArgumentError(
            "lam = 1/2 requires even polynomial degree and an odd number of x-cells"
        )


class BurgersOperator:
    """Precomputed assembly tables for one (partition, degree, params)."""

    def __init__(self, partition: Partition1D, k: int, params: FluxParams):
        if not partition.periodic:
            raise InvalidArgumentError("Burgers operator requires a periodic partition")
        validate_central_lambda(params.lam, k, partition.n)
        self.partition = partition
        self.k = k
        self.params = params
        self.rule = gauss_rule(volume_rule_size(k))
        self.P, self.D = legendre_table(k, self.rule.nodes)
        self.sign_minus = (-1.0) ** np.arange(k + 1)
        self.xq = (
            partition.centers[:, None]
            + 0.5 * partition.sizes[:, None] * self.rule.nodes[None, :]
        )
        self.mass = 0.5 * partition.sizes[:, None] * mass_diagonal(k)[None, :]

    def _check(self, field: ScalarField1D):
        if field.partition is not self.partition and not np.array_equal(
            field.partition.edges, self.partition.edges
        ):
            raise InvalidArgumentError("field partition does not match operator")
        if field.k != self.k:
            raise InvalidArgumentError("field degree does not match operator")

    def at_quad(self, field: ScalarField1D):
        return field.coeffs @ self.P

    def traces(self, field: ScalarField1D):
        """Minus/plus traces at the n periodic interfaces (interface r at edges[r])."""
        right = field.coeffs.sum(axis=1)
        left = field.coeffs @ self.sign_minus
        return np.roll(right, 1), left

    def b_moments(self, field: ScalarField1D, weight: float):
        """Moment vector of b_h(field, .) against every basis function."""
        vals = self.at_quad(field)
        vol = np.einsum("iq,q,mq->im", vals, self.rule.weights, self.D)
        tm, tp = self.traces(field)
        what = flux_weighted(tm, tp, weight)
        edge = -np.roll(what, -1)[:, None] * 1.0 + what[:, None] * self.sign_minus
        return vol + edge

    def a_moments(self, u: ScalarField1D):
        """Moment vector of the convective form a_h(u, .)."""
        vals = self.at_quad(u)
        vol = -np.einsum("iq,q,mq->im", 0.5 * vals**2, self.rule.weights, self.D)
        tm, tp = self.traces(u)
        uhat2 = flux_burgers_sq(tm, tp)
        edge = 0.5 * np.roll(uhat2, -1)[:, None] - 0.5 * uhat2[:, None] * self.sign_minus
        return vol + edge

    def bilinear_bh(self, w: ScalarField1D, phi: ScalarField1D, weight: float) -> float:
        self._check(w)
        self._check(phi)
        return float(np.sum(self.b_moments(w, weight) * phi.coeffs))

    def bilinear_ah(self, u: ScalarField1D, phi: ScalarField1D) -> float:
        self._check(u)
        self._check(phi)
        return float(np.sum(self.a_moments(u) * phi.coeffs))

    def solve_w(self, u: ScalarField1D) -> ScalarField1D:
        """w from (w, q) + sqrt(eps) b_h(u, q) = 0; element-local inversion."""
        self._check(u)
        coeffs = -np.sqrt(self.params.eps) * self.b_moments(u, 1.0 - self.params.lam)
        return ScalarField1D(self.partition, self.k, coeffs / self.mass)

    def source_moments(self, vals_at_quad):
        """(g, phi) for pointwise values of g at the quadrature nodes."""
        mom = np.einsum("iq,q,mq->im", vals_at_quad, self.rule.weights, self.P)
        return 0.5 * self.partition.sizes[:, None] * mom

    def rhs(self, u, rho, rhoV, G=None, t=0.0) -> ScalarField1D:
        """du/dt from the LDG form with moment coupling and optional forcing."""
        self._check(u)
        w = self.solve_w(u)
        mom = -self.a_moments(u)
        mom -= np.sqrt(self.params.eps) * self.b_moments(w, self.params.lam)
        uq = self.at_quad(u)
        rq = self.at_quad(rho)
        rvq = self.at_quad(rhoV)
        mom += self.source_moments(rvq - rq * uq)
        if G is not None:
            gvals = np.broadcast_to(np.asarray(G(t, self.xq), dtype=float), self.xq.shape)
            mom += self.source_moments(gvals)
        return ScalarField1D(self.partition, self.k, mom / self.mass)


def bilinear_bh(w, phi, weight, params=None):
    params = params or FluxParams()
    return BurgersOperator(w.partition, w.k, params).bilinear_bh(w, phi, weight)


def bilinear_ah(u, phi, params=None):
    params = params or FluxParams()
    return BurgersOperator(u.partition, u.k, params).bilinear_ah(u, phi)


def solve_w(u, params):
    return BurgersOperator(u.partition, u.k, params).solve_w(u)


def burgers_rhs(u, rho, rhoV, params, G=None, t=0.0):
    return BurgersOperator(u.partition, u.k, params).rhs(u, rho, rhoV, G, t)
