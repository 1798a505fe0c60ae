import numpy as np
import pytest

from vlasov_burgers.fields import PhaseField2D, ScalarField1D
from vlasov_burgers.mesh import tensor_mesh, uniform_partition


@pytest.fixture
def px8():
    return uniform_partition(0.0, 2.0 * np.pi, 8, periodic=True)


@pytest.fixture
def pv8():
    return uniform_partition(-1.0, 1.0, 8, periodic=False)


@pytest.fixture
def mesh8(px8, pv8):
    return tensor_mesh(px8, pv8)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_scalar(partition, k, rng, scale=1.0):
    return ScalarField1D(partition, k, scale * rng.standard_normal((partition.n, k + 1)))


def random_phase(mesh, kx, kv, rng, scale=1.0, zero_outer_rows=False):
    c = scale * rng.standard_normal((mesh.px.n, mesh.pv.n, kx + 1, kv + 1))
    if zero_outer_rows:
        c[:, 0] = 0.0
        c[:, -1] = 0.0
    return PhaseField2D(mesh, kx, kv, c)
