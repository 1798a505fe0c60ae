"""Shared run/study plumbing used by the CLI, the demos, and the tests."""

import math
import warnings

import numpy as np

from .burgers import BurgersOperator, validate_central_lambda
from .diagnostics import conserved, error_pair, rates
from .errors import InvalidArgumentError
from .fields import l2_project_1d, l2_project_2d
from .fluxes import FluxParams
from .mesh import tensor_mesh, uniform_partition
from .moments import density
from .projections import gauss_radau_1d, pi_2d, trace_error_1d, trace_error_2d
from .quadrature import mass_diagonal
from .scenarios import Scenario, scenario
from .timestepping import CoupledState, CoupledSystem, run
from .vlasov import VlasovOperator


def default_cfl(kx: int, kv: int) -> float:
    """Conservative DG scaling 0.1 / (2k+1); the paper reports no step size."""
    k = max(kx, kv)
    return 0.1 / (2 * k + 1)


def outer_row_fraction(f) -> float:
    """L2 fraction of f carried by the two outermost v-rows."""
    wx = 0.5 * f.mesh.px.sizes[:, None] * mass_diagonal(f.kx)[None, :]
    wv = 0.5 * f.mesh.pv.sizes[:, None] * mass_diagonal(f.kv)[None, :]
    cells = np.einsum("ijmn,im,jn->ij", f.coeffs**2, wx, wv)
    total = cells.sum()
    if total == 0.0:
        return 0.0
    outer = cells[:, 0].sum() + cells[:, -1].sum()
    return float(math.sqrt(outer / total))


def setup(
    scn: Scenario,
    kx=None,
    kv=None,
    nx=None,
    nv=None,
    lam=None,
    lam1=None,
    lam2=None,
    init: str = "l2",
):
    """Mesh, operators, and the projected initial state for one run."""
    kx = scn.kx if kx is None else kx
    kv = scn.kv if kv is None else kv
    nx = scn.nx if nx is None else nx
    nv = scn.nv if nv is None else nv
    if nv % 2 != 0:
        raise InvalidArgumentError("nv must be even so that v = 0 lies on an edge")
    params = FluxParams(
        lam=scn.lam if lam is None else lam,
        lam1=scn.lam1 if lam1 is None else lam1,
        lam2=scn.lam2 if lam2 is None else lam2,
        eps=scn.eps,
    )
    validate_central_lambda(params.lam, kx, nx)
    px = uniform_partition(*scn.x_interval, nx, periodic=True)
    pv = uniform_partition(*scn.v_interval, nv, periodic=False)
    mesh = tensor_mesh(px, pv)

    if init == "l2":
        f0 = l2_project_2d(scn.f0, mesh, kx, kv)
        u0 = l2_project_1d(scn.u0, px, kx)
    elif init == "gaussradau":
        f0 = pi_2d(scn.f0, scn.u0, mesh, kx, kv, params.lam1, params.lam2)
        u0 = gauss_radau_1d(scn.u0, px, kx, params.lam)
    else:
        raise InvalidArgumentError(f"unknown init {init!r}; use 'l2' or 'gaussradau'")

    if scn.v_boundary == "zero":
        frac = outer_row_fraction(f0)
        if frac > 1e-8:
            warnings.warn(
                f"scenario {scn.id}: {frac:.2e} of the initial distribution sits in "
                "the outermost v-rows; the zero-flux boundary assumes compact support",
                stacklevel=2,
            )

    # truncated initial data should ideally have its cut on a cell edge
    if scn.id in ("ex3", "ex4"):
        edges = pv.edges
        for cut in (-1.0, 1.0):
            if np.min(np.abs(edges - cut)) > 1e-12:
                warnings.warn(
                    f"scenario {scn.id}: the support cut |v| = 1 is not on a cell "
                    "edge; projection overshoot near the cut is accepted",
                    stacklevel=2,
                )
                break

    vlasov_op = VlasovOperator(
        mesh, kx, kv, params, v_boundary=scn.v_boundary, boundary_fn=scn.boundary_fn
    )
    burgers_op = BurgersOperator(px, kx, params)
    system = CoupledSystem(vlasov_op, burgers_op, F=scn.F, G=scn.G)
    state = CoupledState(f0, u0, 0.0)
    return system, state, mesh, params


def simulate(
    scn: Scenario,
    t_final=None,
    cfl=None,
    callback=None,
    output_every: int = 1,
    **setup_kwargs,
):
    """Run one scenario to t_final; returns (final state, steps, history).

    history is the list of conserved-quantity records collected at the
    callback cadence (always including the initial and final states).
    """
    system, state, mesh, params = setup(scn, **setup_kwargs)
    t_final = scn.t_final if t_final is None else t_final
    if cfl is None:
        cfl = default_cfl(system.vlasov.kx, system.vlasov.kv)
    history = []

    def record(step, st, dt):
        rec = conserved(st)
        history.append(rec)
        if callback is not None:
            callback(step, st, dt, rec)

    state, steps = run(system, state, t_final, cfl, record, output_every)
    return state, steps, history


def convergence_study(
    sid: str,
    meshes,
    kx=None,
    kv=None,
    eps=None,
    lam=None,
    lam1=None,
    lam2=None,
    t_final=None,
    cfl=None,
    init: str = "l2",
):
    """Refinement study on one scenario; returns rows of
    (N, h, L2f, rate_f, L2u, rate_u)."""
    if len(meshes) < 2:
        raise InvalidArgumentError("need at least two mesh levels")
    scn = scenario(sid, eps=eps)
    if scn.f_exact is None:
        raise InvalidArgumentError(f"scenario {sid} has no exact solution")
    table = []
    for n in meshes:
        state, _, _ = simulate(
            scn,
            t_final=t_final,
            cfl=cfl,
            kx=kx,
            kv=kv,
            nx=n,
            nv=n,
            lam=lam,
            lam1=lam1,
            lam2=lam2,
            init=init,
            output_every=10**9,
        )
        err = error_pair(state, scn)
        h = max(
            (scn.x_interval[1] - scn.x_interval[0]) / n,
            (scn.v_interval[1] - scn.v_interval[0]) / n,
        )
        table.append((n, h, err["L2f"], err["L2u"]))
    rf = rates([(h, ef) for _, h, ef, _ in table])
    ru = rates([(h, eu) for _, h, _, eu in table])
    rows = []
    for idx, (n, h, ef, eu) in enumerate(table):
        rows.append(
            (
                n,
                h,
                ef,
                None if idx == 0 else rf[idx - 1],
                eu,
                None if idx == 0 else ru[idx - 1],
            )
        )
    return rows


def projection_study_1d(k: int, lam: float, meshes):
    """Refinement of the 1D Gauss-Radau projection of sin on [0, 2 pi]."""
    from .fields import error_l2_1d

    g = np.sin
    rows = []
    for n in meshes:
        p = uniform_partition(0.0, 2.0 * math.pi, n, periodic=True)
        q = gauss_radau_1d(g, p, k, lam)
        rows.append((n, p.h, error_l2_1d(q, g), trace_error_1d(q, g)))
    return rows


def projection_study_2d(k: int, lam1: float, lam2: float, meshes):
    """Refinement of the 2D tensor projection of the ex1 initial profile."""
    from .fields import error_l2_2d

    g = lambda x, v: (1.0 + np.sin(x)) * np.exp(-np.asarray(v, dtype=float) ** 2)  # noqa: E731
    u = np.sin
    rows = []
    for n in meshes:
        px = uniform_partition(0.0, 2.0 * math.pi, n, periodic=True)
        pv = uniform_partition(-1.0, 1.0, n, periodic=False)
        mesh = tensor_mesh(px, pv)
        proj = pi_2d(g, u, mesh, k, k, lam1, lam2)
        rows.append((n, mesh.h, error_l2_2d(proj, g), trace_error_2d(proj, g)))
    return rows
