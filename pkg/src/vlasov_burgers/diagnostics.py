"""Conserved-quantity tracking, error norms, and convergence rates."""

import csv
import math

import numpy as np

from .errors import InvalidArgumentError
from .fields import error_l2_1d, error_l2_2d
from .quadrature import gauss_rule, legendre_table


def _v_square_weights(pv, kv):
    """integral over J_j of v^2 P_n(eta(v)) dv, exact."""
    rule = gauss_rule(kv + 3)
    out = np.empty((pv.n, kv + 1))
    for j in range(pv.n):
        v, w = rule.mapped(pv.edges[j], pv.edges[j + 1])
        eta = 2.0 * (v - pv.centers[j]) / pv.sizes[j]
        Pv, _ = legendre_table(kv, eta)
        out[j] = np.einsum("q,nq->n", w * v**2, Pv)
    return out


def conserved(state) -> dict:
    """Discrete mass, total momentum, total energy, and the two L2 norms."""
    f, u = state.f, state.u
    hx = f.mesh.px.sizes
    hv = f.mesh.pv.sizes
    vc = f.mesh.pv.centers
    mass = float(np.einsum("ij,i,j->", f.coeffs[:, :, 0, 0], hx, hv))
    mom_f = float(np.einsum("ij,i,j->", f.coeffs[:, :, 0, 0], hx, hv * vc))
    if f.kv >= 1:
        mom_f += float(np.einsum("ij,i,j->", f.coeffs[:, :, 0, 1], hx, hv**2 / 6.0))
    mom_u = float(np.dot(u.coeffs[:, 0], u.partition.sizes))
    wv2 = _v_square_weights(f.mesh.pv, f.kv)
    ke = float(np.einsum("ijn,i,jn->", f.coeffs[:, :, 0, :], hx, wv2))
    energy = 0.5 * (ke + u.norm_l2() ** 2)
    return {
        "t": state.t,
        "mass": mass,
        "momentum": mom_f + mom_u,
        "energy": energy,
        "l2f": f.norm_l2(),
        "l2u": u.norm_l2(),
    }


def error_pair(state, scenario) -> dict:
    """L2 errors of (f_h, u_h) against the scenario's exact solutions at state.t."""
    if scenario.f_exact is None or scenario.u_exact is None:
        raise InvalidArgumentError(f"scenario {scenario.id} has no exact solution")
    t = state.t
    L2f = error_l2_2d(state.f, lambda x, v: scenario.f_exact(t, x, v))
    L2u = error_l2_1d(state.u, lambda x: scenario.u_exact(t, x))
    return {"L2f": L2f, "L2u": L2u}


def rates(errors):
    """Observed orders from a refinement table of (h, error) pairs.

    h must be strictly decreasing.  Zero errors mark the level as exact;
    the adjacent slope is undefined and reported as None.
    """
    if len(errors) < 2:
        raise InvalidArgumentError("need at least two refinement levels")
    hs = [h for h, _ in errors]
    if any(h2 >= h1 for h1, h2 in zip(hs, hs[1:])):
        raise InvalidArgumentError("h must be strictly decreasing")
    out = []
    for (h1, e1), (h2, e2) in zip(errors, errors[1:]):
        if e1 == 0.0 or e2 == 0.0:
            out.append(None)
        else:
            out.append(math.log(e1 / e2) / math.log(h1 / h2))
    return out


def stability_check(history, slack: float = 0.05) -> bool:
    """max_t ||f_h(t)|| <= (1 + slack) * e^(t/2) * ||f_h(0)|| at all records.

    history is a sequence of (t, l2f) pairs from an unforced run.
    """
    if not history:
        raise InvalidArgumentError("empty norm history")
    t0, n0 = history[0]
    for t, n in history:
        if n > (1.0 + slack) * math.exp(0.5 * (t - t0)) * n0:
            return False
    return True


def energy_nonincreasing(history, rel_slack: float = 1e-8) -> bool:
    """True when the energy sequence never rises by more than the slack.

    Soft diagnostic: the discrete dissipation is observed, not proven.
    """
    if not history:
        raise InvalidArgumentError("empty energy history")
    e0 = abs(history[0][1])
    tol = rel_slack * max(e0, 1.0)
    return all(b[1] <= a[1] + tol for a, b in zip(history, history[1:]))


CSV_HEADERS = ["t", "mass", "momentum", "energy", "L2f", "L2u"]


class DiagnosticsWriter:
    """CSV emitter; one row per record with the fixed header set."""

    def __init__(self, path):
        self._fh = open(path, "w", newline="")
        self._writer = csv.writer(self._fh)
        self._writer.writerow(CSV_HEADERS)

    def write(self, record: dict):
        self._writer.writerow(
            [repr(record["t"])]
            + [repr(record[k]) for k in ("mass", "momentum", "energy", "l2f", "l2u")]
        )

    def close(self):
        self._fh.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()
        return False
