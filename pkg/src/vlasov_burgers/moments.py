"""Velocity moments of the phase-space distribution.

The discrete density and momentum are exact v-integrals of the tensor
polynomial, so they land in the broken P^kx space on the x-partition with
no projection step and no extra error.
"""

import numpy as np

from .fields import PhaseField2D, ScalarField1D
from .quadrature import gauss_rule, legendre_table


def density(f: PhaseField2D) -> ScalarField1D:
    """rho_h(x) = sum_j integral of f over J_j; exact (v-mode 0 only)."""
    hv = f.mesh.pv.sizes
    coeffs = np.einsum("ijm,j->im", f.coeffs[:, :, :, 0], hv)
    return ScalarField1D(f.mesh.px, f.kx, coeffs)


def momentum(f: PhaseField2D) -> ScalarField1D:
    """rho_h V_h(x) = sum_j integral of v f over J_j; exact."""
    hv = f.mesh.pv.sizes
    vc = f.mesh.pv.centers
    coeffs = np.einsum("ijm,j->im", f.coeffs[:, :, :, 0], hv * vc)
    if f.kv >= 1:
        # integral of P_1(eta) * v over a cell is h^2 / 6
        coeffs += np.einsum("ijm,j->im", f.coeffs[:, :, :, 1], hv**2 / 6.0)
    return ScalarField1D(f.mesh.px, f.kx, coeffs)


def moment_k(f: PhaseField2D, p: int) -> ScalarField1D:
    """Velocity moment of |v|^p, for diagnostics.  Requires p <= 4.

    Exact on cells of one sign of v; cells straddling v = 0 are split at 0
    so the piecewise-polynomial integrand is still integrated exactly.
    """
    if not 0 <= p <= 4:
        raise ValueError("moment order p must be in 0..4")
    if p == 0:
        return density(f)
    pv = f.mesh.pv
    rule = gauss_rule(f.kv + 3 + p // 2)
    # weights[j, n] = integral over J_j of |v|^p P_n(eta(v)) dv
    weights = np.zeros((pv.n, f.kv + 1))
    for j in range(pv.n):
        lo, hi = pv.edges[j], pv.edges[j + 1]
        pieces = [(lo, hi)] if lo >= 0 or hi <= 0 else [(lo, 0.0), (0.0, hi)]
        for a, b in pieces:
            v, w = rule.mapped(a, b)
            eta = 2.0 * (v - pv.centers[j]) / pv.sizes[j]
            Pv, _ = legendre_table(f.kv, eta)
            weights[j] += np.einsum("q,nq->n", w * np.abs(v) ** p, Pv)
    coeffs = np.einsum("ijmn,jn->im", f.coeffs, weights)
    return ScalarField1D(f.mesh.px, f.kx, coeffs)
