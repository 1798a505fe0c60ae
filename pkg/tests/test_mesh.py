import numpy as np
import pytest

from vlasov_burgers.errors import InvalidArgumentError
from vlasov_burgers.mesh import Partition1D, tensor_mesh, uniform_partition


def test_uniform_edges_quarters():
    p = uniform_partition(0.0, 2.0 * np.pi, 4, periodic=True)
    assert np.allclose(p.edges, [0.0, np.pi / 2, np.pi, 3 * np.pi / 2, 2 * np.pi])
    assert p.periodic


def test_uniform_sizes():
    p = uniform_partition(-1.0, 1.0, 2, periodic=False)
    assert np.allclose(p.sizes, [1.0, 1.0])
    assert p.quasi_uniformity == 1.0


def test_example53_mesh_width():
    p = uniform_partition(0.0, 2.0 * np.pi, 128, periodic=True)
    assert p.h == pytest.approx(2.0 * np.pi / 128)
    assert p.h == pytest.approx(0.0491, abs=1e-4)


def test_sizes_sum_to_interval():
    rng = np.random.default_rng(1)
    edges = np.sort(rng.uniform(0.0, 5.0, 9))
    edges[0], edges[-1] = 0.0, 5.0
    p = Partition1D(edges, periodic=False)
    assert p.sizes.sum() == pytest.approx(5.0, abs=1e-14)


def test_refinement_halves_cells():
    a, b = 0.3, 2.7
    for n in (4, 10):
        coarse = uniform_partition(a, b, n, periodic=False)
        fine = uniform_partition(a, b, 2 * n, periodic=False)
        assert np.allclose(fine.sizes, coarse.sizes[0] / 2.0, rtol=1e-15)


def test_invalid_partitions():
    with pytest.raises(InvalidArgumentError):
        uniform_partition(1.0, 1.0, 4, periodic=False)
    with pytest.raises(InvalidArgumentError):
        uniform_partition(0.0, np.inf, 4, periodic=False)
    with pytest.raises(InvalidArgumentError):
        uniform_partition(0.0, 1.0, 0, periodic=False)
    with pytest.raises(InvalidArgumentError):
        Partition1D([0.0, 0.5, 0.4, 1.0], periodic=False)


def test_tensor_mesh_counts():
    px = uniform_partition(0.0, 2.0 * np.pi, 4, periodic=True)
    pv = uniform_partition(-1.0, 1.0, 4, periodic=False)
    mesh = tensor_mesh(px, pv)
    assert mesh.ncells == 16
    assert mesh.h == pytest.approx(np.pi / 2)

    px8 = uniform_partition(0.0, 2.0 * np.pi, 8, periodic=True)
    pv16 = uniform_partition(-1.0, 1.0, 16, periodic=False)
    assert tensor_mesh(px8, pv16).ncells == 128


def test_tensor_mesh_periodicity_requirements():
    px = uniform_partition(0.0, 1.0, 4, periodic=False)
    pv = uniform_partition(-1.0, 1.0, 4, periodic=False)
    with pytest.raises(InvalidArgumentError):
        tensor_mesh(px, pv)
    with pytest.raises(InvalidArgumentError):
        tensor_mesh(
            uniform_partition(0.0, 1.0, 4, periodic=True),
            uniform_partition(-1.0, 1.0, 4, periodic=True),
        )


def test_v_alignment():
    px = uniform_partition(0.0, 2.0 * np.pi, 4, periodic=True)
    even = tensor_mesh(px, uniform_partition(-1.0, 1.0, 8, periodic=False))
    assert even.v_axis_aligned()
    assert list(even.v_sign_rows()) == [-1] * 4 + [1] * 4
    odd = tensor_mesh(px, uniform_partition(-1.0, 1.0, 5, periodic=False))
    assert not odd.v_axis_aligned()


def test_cell_lookup():
    p = uniform_partition(0.0, 4.0, 4, periodic=False)
    assert p.cell_of(0.5) == 0
    assert p.cell_of(1.0) == 1  # interior edges go right
    assert p.cell_of(4.0) == 3
