import math

import numpy as np
import pytest
import scipy.integrate
import scipy.special

from vlasov_burgers.diagnostics import (
    DiagnosticsWriter,
    conserved,
    energy_nonincreasing,
    error_pair,
    rates,
    stability_check,
)
from vlasov_burgers.errors import InvalidArgumentError
from vlasov_burgers.fields import PhaseField2D, ScalarField1D, l2_project_1d, l2_project_2d
from vlasov_burgers.mesh import tensor_mesh, uniform_partition
from vlasov_burgers.scenarios import scenario
from vlasov_burgers.timestepping import CoupledState


def _ex3_initial_state(nx=16, nv=40):
    scn = scenario("ex3")
    px = uniform_partition(*scn.x_interval, nx, periodic=True)
    pv = uniform_partition(*scn.v_interval, nv, periodic=False)  # cut on edges
    mesh = tensor_mesh(px, pv)
    f = l2_project_2d(scn.f0, mesh, scn.kx, scn.kv)
    u = l2_project_1d(scn.u0, px, scn.kx)
    return CoupledState(f, u, 0.0)


def test_conserved_zero_state(mesh8):
    state = CoupledState(PhaseField2D(mesh8, 1, 1), ScalarField1D(mesh8.px, 1))
    rec = conserved(state)
    assert rec["mass"] == 0.0
    assert rec["momentum"] == 0.0
    assert rec["energy"] == 0.0
    assert rec["l2f"] == 0.0


def test_conserved_ex3_mass_oracle():
    # oracle: 2 pi * integral of e^{-v^2} over [-1, 1] = 2 pi sqrt(pi) erf(1)
    state = _ex3_initial_state()
    rec = conserved(state)
    oracle = 2.0 * math.pi * math.sqrt(math.pi) * scipy.special.erf(1.0)
    assert oracle == pytest.approx(2.0 * math.pi * 1.493648265624854, rel=1e-14)
    assert rec["mass"] == pytest.approx(oracle, rel=1e-12)
    assert rec["mass"] == pytest.approx(9.38461, abs=1e-4)


def test_conserved_ex3_momentum_zero():
    # f0 even in v and u0 = sin integrates to zero
    state = _ex3_initial_state()
    rec = conserved(state)
    assert abs(rec["momentum"]) < 1e-12


def test_conserved_energy_oracle():
    state = _ex3_initial_state()
    rec = conserved(state)
    iv = scipy.integrate.quad(lambda v: v**2 * np.exp(-(v**2)), -1.0, 1.0)[0]
    # 1/2 (iint v^2 f0 + int u0^2) = 1/2 (2 pi iv + pi)
    oracle = 0.5 * (2.0 * math.pi * iv + math.pi)
    assert rec["energy"] == pytest.approx(oracle, rel=1e-9)


def test_error_pair_projection_floor():
    scn = scenario("ex1")
    px = uniform_partition(*scn.x_interval, 16, periodic=True)
    pv = uniform_partition(*scn.v_interval, 16, periodic=False)
    mesh = tensor_mesh(px, pv)
    t = 0.07
    state = CoupledState(
        l2_project_2d(lambda x, v: scn.f_exact(t, x, v), mesh, 1, 1),
        l2_project_1d(lambda x: scn.u_exact(t, x), px, 1),
        t,
    )
    err = error_pair(state, scn)
    assert 0 < err["L2f"] < 0.05
    assert 0 < err["L2u"] < 0.05


def test_error_pair_constant_mismatch(mesh8):
    import dataclasses

    f = PhaseField2D(mesh8, 1, 1)
    f.coeffs[:, :, 0, 0] = 1.0
    state = CoupledState(f, ScalarField1D(mesh8.px, 1), 0.0)
    # against f = 0: the L2 norm of 1 on [0,2pi]x[-1,1] is sqrt(4 pi)
    probe = dataclasses.replace(
        scenario("ex1"),
        f_exact=lambda t, x, v: 0.0 * x * v,
        u_exact=lambda t, x: 0.0 * x,
    )
    err = error_pair(state, probe)
    assert err["L2f"] == pytest.approx(math.sqrt(4.0 * math.pi), rel=1e-12)
    assert err["L2u"] == 0.0


def test_error_pair_requires_exact():
    scn = scenario("ex3")
    state = _ex3_initial_state(nx=4, nv=10)
    with pytest.raises(InvalidArgumentError):
        error_pair(state, scn)


def test_rates_halving():
    out = rates([(1.0, 1.0), (0.5, 0.5)])
    assert out == [pytest.approx(1.0)]


def test_rates_quadratic():
    seq = [(1.0 / n, (1.0 / n) ** 2) for n in (4, 8, 16)]
    out = rates(seq)
    assert all(r == pytest.approx(2.0) for r in out)


def test_rates_flags_exact_levels():
    out = rates([(1.0, 1.0), (0.5, 0.0)])
    assert out == [None]


def test_rates_validation():
    with pytest.raises(InvalidArgumentError):
        rates([(1.0, 1.0)])
    with pytest.raises(InvalidArgumentError):
        rates([(0.5, 1.0), (1.0, 0.5)])


def test_stability_check_cases():
    assert stability_check([(0.0, 1.0), (0.5, 1.0), (1.0, 1.0)])
    growing = [(t, math.exp(0.4 * t)) for t in np.linspace(0, 1, 11)]
    assert stability_check(growing)  # 0.4 < 0.5
    breaching = [(t, math.exp(0.6 * t)) for t in np.linspace(0, 1, 11)]
    assert not stability_check(breaching)


def test_energy_trend():
    assert energy_nonincreasing([(0, 1.0), (1, 0.9), (2, 0.9)])
    assert energy_nonincreasing([(0, 1.0), (1, 1.0 + 1e-10)])
    assert not energy_nonincreasing([(0, 1.0), (1, 1.1)])


def test_csv_writer(tmp_path):
    path = tmp_path / "diag.csv"
    with DiagnosticsWriter(path) as writer:
        writer.write(
            {"t": 0.0, "mass": 1.0, "momentum": 0.5, "energy": 2.0, "l2f": 3.0, "l2u": 4.0}
        )
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "t,mass,momentum,energy,L2f,L2u"
    assert lines[1].startswith("0.0,1.0,0.5,2.0")
