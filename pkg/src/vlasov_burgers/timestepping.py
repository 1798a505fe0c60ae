"""Explicit TVD-RK3 advance of the coupled semi-discrete state."""

from dataclasses import dataclass

import numpy as np

from .burgers import BurgersOperator
from .errors import InvalidArgumentError, NumericalFailureError
from .fields import PhaseField2D, ScalarField1D
from .moments import density, momentum
from .vlasov import VlasovOperator


@dataclass
class CoupledState:
    f: PhaseField2D
    u: ScalarField1D
    t: float = 0.0

    def copy(self):
        return CoupledState(self.f.copy(), self.u.copy(), self.t)


class CoupledSystem:
    """Bundles the two spatial operators and the scenario sources."""

    def __init__(self, vlasov_op: VlasovOperator, burgers_op: BurgersOperator,
                 F=None, G=None):
        self.vlasov = vlasov_op
        self.burgers = burgers_op
        self.F = F
        self.G = G

    def rhs(self, state: CoupledState):
        """Both time derivatives, evaluated from the same input state."""
        rho = density(state.f)
        rhoV = momentum(state.f)
        fdot = self.vlasov.rhs(state.f, state.u, self.F, state.t)
        udot = self.burgers.rhs(state.u, rho, rhoV, self.G, state.t)
        return fdot, udot


def coupled_rhs(state: CoupledState, system: CoupledSystem):
    return system.rhs(state)


def _axpy(state, a, other, b, fdot, udot, dt):
    """a * state + b * (other + dt * L(other)), including the clock."""
    f = a * state.f.coeffs + b * (other.f.coeffs + dt * fdot.coeffs)
    u = a * state.u.coeffs + b * (other.u.coeffs + dt * udot.coeffs)
    t = a * state.t + b * (other.t + dt)
    return CoupledState(
        PhaseField2D(state.f.mesh, state.f.kx, state.f.kv, f),
        ScalarField1D(state.u.partition, state.u.k, u),
        t,
    )


def rk3_step(state: CoupledState, dt: float, rhs_fn) -> CoupledState:
    """One Shu-Osher convex step: s1 = s + dt L; s2 = 3/4 s + 1/4 (s1 + dt L);
    s+ = 1/3 s + 2/3 (s2 + dt L)."""
    if not dt > 0:
        raise InvalidArgumentError("dt must be positive")
    stages = ((0.0, 1.0), (0.75, 0.25), (1.0 / 3.0, 2.0 / 3.0))
    current = state
    for idx, (a, b) in enumerate(stages):
        fdot, udot = rhs_fn(current)
        current = _axpy(state, a, current, b, fdot, udot, dt)
        if not (
            np.all(np.isfinite(current.f.coeffs)) and np.all(np.isfinite(current.u.coeffs))
        ):
            raise NumericalFailureError(
                f"non-finite coefficients after RK stage {idx + 1}",
                context={"stage": idx + 1, "t": state.t, "dt": dt},
            )
    return current


def rk3_scalar_step(y, t, dt, L):
    """The same convex combination for plain arrays (used by order tests)."""
    y = np.asarray(y, dtype=float)
    y1 = y + dt * np.asarray(L(y, t))
    y2 = 0.75 * y + 0.25 * (y1 + dt * np.asarray(L(y1, t + dt)))
    return y / 3.0 + 2.0 / 3.0 * (y2 + dt * np.asarray(L(y2, t + 0.5 * dt)))


def compute_dt(state: CoupledState, params, cfl: float) -> float:
    """CFL time step: cfl * min(hx/max|v|, hv/max|u-v|, diffusive bound).

    The advective bounds are sampled at the quadrature/edge nodes; each
    denominator is floored at 1e-12 so degenerate states stay finite.
    The diffusive bound hx^2/(2 eps) carries an extra penalty factor
    ((2 lam - 1)(k+1))^2 / 2: the generalized-weight jump terms stiffen
    the LDG diffusion operator by that measured amount, and without it
    the default step is unstable for lam >= 1.5.
    """
    if not 0.0 < cfl <= 1.0:
        raise InvalidArgumentError("cfl must lie in (0, 1]")
    mesh = state.f.mesh
    hx = float(mesh.px.sizes.min())
    hv = float(mesh.pv.sizes.min())
    lam_x = max(abs(mesh.pv.a), abs(mesh.pv.b))
    uvals = state.u.norm_inf_sampled()
    lam_v = uvals + lam_x  # max |u_h - v| over the closed v-interval
    penalty = max(1.0, ((2.0 * params.lam - 1.0) * (state.u.k + 1)) ** 2 / 2.0)
    dt = cfl * min(
        hx / max(lam_x, 1e-12),
        hv / max(lam_v, 1e-12),
        hx**2 / (2.0 * params.eps * penalty),
    )
    return dt


def run(
    system: CoupledSystem,
    state: CoupledState,
    t_final: float,
    cfl: float,
    callback=None,
    output_every: int = 1,
    max_steps: int = 10_000_000,
):
    """Advance to t_final with CFL steps, clipping the last step onto t_final.

    callback(step, state, dt) fires at step 0, every `output_every` steps,
    and on the final step.
    """
    step = 0
    if callback is not None:
        callback(0, state, 0.0)
    while state.t < t_final - 1e-14 * max(1.0, t_final):
        dt = compute_dt(state, system.burgers.params, cfl)
        dt = min(dt, t_final - state.t)
        state = rk3_step(state, dt, system.rhs)
        step += 1
        if callback is not None and (
            step % output_every == 0 or state.t >= t_final - 1e-14
        ):
            callback(step, state, dt)
        if step >= max_steps:
            raise NumericalFailureError("exceeded maximum step count")
    return state, step
