"""DG/LDG solver for the periodic Vlasov-viscous Burgers system.

A kinetic distribution f(t, x, v) on a periodic-in-x phase-space rectangle
is advanced by a discontinuous Galerkin scheme with generalized numerical
fluxes, coupled through its velocity moments to a viscous Burgers equation
for the fluid velocity u(t, x), discretized by a local DG (LDG) scheme.
Explicit TVD-RK3 closes the semi-discrete system in time.

Subpackages of interest:

* ``mesh``, ``quadrature``, ``fields``: meshes, Legendre modal basis, and
  piecewise-polynomial coefficient containers.
* ``fluxes``, ``vlasov``, ``burgers``, ``moments``: the spatial operators.
* ``projections``: generalized Gauss-Radau projections (1D and 2D).
* ``timestepping``, ``diagnostics``, ``scenarios``, ``cli``: the run harness.
"""

from .errors import InvalidArgumentError, NumericalFailureError
from .fluxes import FluxParams
from .mesh import Mesh2D, Partition1D, tensor_mesh, uniform_partition

__all__ = [
    "FluxParams",
    "InvalidArgumentError",
    "Mesh2D",
    "NumericalFailureError",
    "Partition1D",
    "tensor_mesh",
    "uniform_partition",
]
