"""Pointwise generalized numerical flux formulas.

All fluxes are written in the branch-free jump/average algebraic form,
which coincides with the sign-split definition for every sign of the
advective coefficient (including zero), so no convention is needed at
v = 0 or u = v.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError


@dataclass(frozen=True)
class FluxParams:
    """Generalized flux weights and the viscosity.

    lam weights the Burgers u/w fluxes (lam >= 1/2; the central case
    lam = 1/2 is only valid for even degree and odd N_x, checked where
    degree and mesh are known).  lam1, lam2 > 1/2 weight the Vlasov x-
    and v-fluxes.  eps > 0 is the viscosity.
    """

    lam: float = 1.5
    lam1: float = 1.5
    lam2: float = 1.5
    eps: float = 0.1

    def __post_init__(self):
        if not self.lam >= 0.5:
            raise InvalidArgumentError(f"lam = {self.lam} must be >= 1/2")
        if not self.lam1 > 0.5:
            raise InvalidArgumentError(f"lam1 = {self.lam1} must be > 1/2")
        if not self.lam2 > 0.5:
            raise InvalidArgumentError(f"lam2 = {self.lam2} must be > 1/2")
        if not self.eps > 0:
            raise InvalidArgumentError(f"eps = {self.eps} must be > 0")


def flux_vlasov_x(v, f_minus, f_plus, lam1):
    """x-direction Vlasov flux: {v f} + (1-2*lam1)/2 * |v| * [[f]]."""
    return 0.5 * v * (f_minus + f_plus) + 0.5 * (1.0 - 2.0 * lam1) * np.abs(v) * (
        f_plus - f_minus
    )


def flux_vlasov_v(a, f_minus, f_plus, lam2):
    """v-direction Vlasov flux with advective coefficient a = u_h - v."""
    return 0.5 * a * (f_minus + f_plus) + 0.5 * (1.0 - 2.0 * lam2) * np.abs(a) * (
        f_plus - f_minus
    )


def flux_burgers_sq(u_minus, u_plus):
    """Central flux for u^2: ((u+)^2 + u+ u- + (u-)^2) / 3.

    Makes the convective energy form vanish identically, a_h(u, u) = 0.
    """
    return (u_plus**2 + u_plus * u_minus + u_minus**2) / 3.0


def flux_weighted(g_minus, g_plus, weight):
    """weight * g+ + (1 - weight) * g-.

    Callers pass weight = lam for the w-flux and weight = 1 - lam for the
    u-flux; the complementary pair makes the LDG forms adjoint.
    """
    return weight * g_plus + (1.0 - weight) * g_minus
