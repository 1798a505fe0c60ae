"""Coefficient containers for broken-polynomial functions.

``ScalarField1D`` holds modal Legendre coefficients of a piecewise-P^k
function on a 1D partition (u_h, w_h, rho_h, ...).  ``PhaseField2D`` holds
tensor modal coefficients of a piecewise-Q^(kx,kv) function on the phase
mesh (f_h).  On each cell the restriction is

    sum_m c[m] P_m(xi(x)),    xi(x) = 2 (x - x_c) / h,

and the tensor analogue in two variables.
"""

import csv

import numpy as np

from .errors import InvalidArgumentError
from .mesh import Mesh2D, Partition1D
from .quadrature import gauss_rule, legendre_table, mass_diagonal, volume_rule_size


class ScalarField1D:
    def __init__(self, partition: Partition1D, k: int, coeffs=None):
        if k < 0:
            raise InvalidArgumentError("polynomial degree must be >= 0")
        self.partition = partition
        self.k = k
        if coeffs is None:
            coeffs = np.zeros((partition.n, k + 1))
        coeffs = np.asarray(coeffs, dtype=float)
        if coeffs.shape != (partition.n, k + 1):
            raise InvalidArgumentError(
                f"coefficient shape {coeffs.shape} != {(partition.n, k + 1)}"
            )
        self.coeffs = coeffs

    def copy(self):
        return ScalarField1D(self.partition, self.k, self.coeffs.copy())

    def eval(self, x):
        """Pointwise values; points on interior edges take the right cell."""
        x = np.asarray(x, dtype=float)
        p = self.partition
        flat = np.atleast_1d(x.ravel())
        i = p.cell_of(flat)
        xi = 2.0 * (flat - p.centers[i]) / p.sizes[i]
        P, _ = legendre_table(self.k, xi)
        vals = np.einsum("im,mi->i", self.coeffs[i], P)
        return vals.reshape(x.shape) if x.ndim else float(vals[0])

    def eval_cell(self, i: int, xi):
        """Values of the cell-i polynomial at reference coordinates xi."""
        P, _ = legendre_table(self.k, xi)
        return self.coeffs[i] @ P

    def trace(self, r: int, side: str) -> float:
        """One-sided limit at interface r (position edges[r]).

        side '-' is the limit from the left cell, '+' from the right cell.
        For periodic partitions r = 0 and r = n alias the same interface.
        """
        p = self.partition
        if not 0 <= r <= p.n:
            raise InvalidArgumentError(f"interface index {r} out of range")
        if side == "-":
            i = r - 1
            if i < 0:
                if not p.periodic:
                    raise InvalidArgumentError("no left cell at the left boundary")
                i = p.n - 1
            return float(self.coeffs[i].sum())  # P_m(1) = 1
        if side == "+":
            i = r
            if i >= p.n:
                if not p.periodic:
                    raise InvalidArgumentError("no right cell at the right boundary")
                i = 0
            signs = (-1.0) ** np.arange(self.k + 1)  # P_m(-1)
            return float(self.coeffs[i] @ signs)
        raise InvalidArgumentError("side must be '-' or '+'")

    def norm_l2(self) -> float:
        """Exact L2 norm via Parseval on the modal coefficients."""
        w = 0.5 * self.partition.sizes[:, None] * mass_diagonal(self.k)[None, :]
        return float(np.sqrt(np.sum(w * self.coeffs**2)))

    def norm_inf_sampled(self, points_per_cell: int = 10) -> float:
        """Max of |field| on a per-cell sample lattice (diagnostic only)."""
        xi = np.linspace(-1.0, 1.0, points_per_cell)
        P, _ = legendre_table(self.k, xi)
        vals = self.coeffs @ P
        return float(np.abs(vals).max())

    def __add__(self, other):
        return ScalarField1D(self.partition, self.k, self.coeffs + other.coeffs)

    def __mul__(self, a: float):
        return ScalarField1D(self.partition, self.k, a * self.coeffs)

    __rmul__ = __mul__


class PhaseField2D:
    """Tensor-modal coefficients, shape (nx, nv, kx+1, kv+1).

    Per-direction degrees may differ (the experiments use kx = 1, kv = 2).
    """

    def __init__(self, mesh: Mesh2D, kx: int, kv=None, coeffs=None):
        if kv is None:
            kv = kx
        if kx < 0 or kv < 0:
            raise InvalidArgumentError("polynomial degrees must be >= 0")
        self.mesh = mesh
        self.kx = kx
        self.kv = kv
        shape = (mesh.px.n, mesh.pv.n, kx + 1, kv + 1)
        if coeffs is None:
            coeffs = np.zeros(shape)
        coeffs = np.asarray(coeffs, dtype=float)
        if coeffs.shape != shape:
            raise InvalidArgumentError(f"coefficient shape {coeffs.shape} != {shape}")
        self.coeffs = coeffs

    @property
    def k(self):
        """Common degree when isotropic; the per-direction pair otherwise."""
        return self.kx if self.kx == self.kv else (self.kx, self.kv)

    def copy(self):
        return PhaseField2D(self.mesh, self.kx, self.kv, self.coeffs.copy())

    def eval(self, x, v):
        x = np.asarray(x, dtype=float)
        v = np.asarray(v, dtype=float)
        x, v = np.broadcast_arrays(x, v)
        px, pv = self.mesh.px, self.mesh.pv
        i = px.cell_of(x.ravel())
        j = pv.cell_of(v.ravel())
        xi = 2.0 * (x.ravel() - px.centers[i]) / px.sizes[i]
        eta = 2.0 * (v.ravel() - pv.centers[j]) / pv.sizes[j]
        Px, _ = legendre_table(self.kx, xi)
        Pv, _ = legendre_table(self.kv, eta)
        vals = np.einsum("cmn,mc,nc->c", self.coeffs[i, j], Px, Pv)
        return vals.reshape(x.shape) if x.ndim else float(vals[0])

    def eval_cell(self, i: int, j: int, xi, eta):
        """Tensor evaluation of cell (i, j) at reference nodes xi x eta."""
        Px, _ = legendre_table(self.kx, xi)
        Pv, _ = legendre_table(self.kv, eta)
        return np.einsum("mn,mq,nr->qr", self.coeffs[i, j], Px, Pv)

    def trace_x(self, r: int, side: str):
        """Trace along a vertical interface: modal-in-v coefficients (nv, kv+1)."""
        px = self.mesh.px
        if not 0 <= r <= px.n:
            raise InvalidArgumentError(f"interface index {r} out of range")
        if side == "-":
            i = (r - 1) % px.n
            return self.coeffs[i].sum(axis=1)  # contract P_m(1) = 1
        if side == "+":
            i = r % px.n
            signs = (-1.0) ** np.arange(self.kx + 1)
            return np.einsum("jmn,m->jn", self.coeffs[i], signs)
        raise InvalidArgumentError("side must be '-' or '+'")

    def trace_v(self, s: int, side: str):
        """Trace along a horizontal interface: modal-in-x coefficients (nx, kx+1)."""
        pv = self.mesh.pv
        if not 0 <= s <= pv.n:
            raise InvalidArgumentError(f"interface index {s} out of range")
        if side == "-":
            if s == 0:
                raise InvalidArgumentError("no cell below the bottom boundary")
            return self.coeffs[:, s - 1].sum(axis=2)
        if side == "+":
            if s == pv.n:
                raise InvalidArgumentError("no cell above the top boundary")
            signs = (-1.0) ** np.arange(self.kv + 1)
            return np.einsum("imn,n->im", self.coeffs[:, s], signs)
        raise InvalidArgumentError("side must be '-' or '+'")

    def norm_l2(self) -> float:
        wx = 0.5 * self.mesh.px.sizes[:, None] * mass_diagonal(self.kx)[None, :]
        wv = 0.5 * self.mesh.pv.sizes[:, None] * mass_diagonal(self.kv)[None, :]
        return float(
            np.sqrt(np.einsum("ijmn,im,jn->", self.coeffs**2, wx, wv))
        )

    def norm_inf_sampled(self, points_per_cell: int = 10) -> float:
        xi = np.linspace(-1.0, 1.0, points_per_cell)
        Px, _ = legendre_table(self.kx, xi)
        Pv, _ = legendre_table(self.kv, xi)
        vals = np.einsum("ijmn,mq,nr->ijqr", self.coeffs, Px, Pv)
        return float(np.abs(vals).max())

    def __add__(self, other):
        return PhaseField2D(self.mesh, self.kx, self.kv, self.coeffs + other.coeffs)

    def __mul__(self, a: float):
        return PhaseField2D(self.mesh, self.kx, self.kv, a * self.coeffs)

    __rmul__ = __mul__


def jump(field: ScalarField1D, r: int) -> float:
    """[[phi]] = phi^+ - phi^-."""
    return field.trace(r, "+") - field.trace(r, "-")


def average(field: ScalarField1D, r: int) -> float:
    return 0.5 * (field.trace(r, "+") + field.trace(r, "-"))


def l2_project_1d(g, partition: Partition1D, k: int, nq=None) -> ScalarField1D:
    """L2 projection of a callable onto the broken P^k space.

    Moment integrals use an nq-point Gauss rule per cell (default k+5),
    so the projection property holds exactly under that rule.
    """
    if nq is None:
        nq = k + 5
    rule = gauss_rule(nq)
    P, _ = legendre_table(k, rule.nodes)
    centers, sizes = partition.centers, partition.sizes
    x = centers[:, None] + 0.5 * sizes[:, None] * rule.nodes[None, :]
    vals = np.broadcast_to(np.asarray(g(x), dtype=float), x.shape)
    scale = (2.0 * np.arange(k + 1) + 1.0) / 2.0
    coeffs = np.einsum("iq,q,mq->im", vals, rule.weights, P) * scale[None, :]
    return ScalarField1D(partition, k, coeffs)


def l2_project_2d(g, mesh: Mesh2D, kx: int, kv=None, nq=None) -> PhaseField2D:
    """Tensor analogue of `l2_project_1d` for callables g(x, v)."""
    if kv is None:
        kv = kx
    if nq is None:
        nq = max(kx, kv) + 5
    rule = gauss_rule(nq)
    Px, _ = legendre_table(kx, rule.nodes)
    Pv, _ = legendre_table(kv, rule.nodes)
    px, pv = mesh.px, mesh.pv
    x = px.centers[:, None] + 0.5 * px.sizes[:, None] * rule.nodes[None, :]
    v = pv.centers[:, None] + 0.5 * pv.sizes[:, None] * rule.nodes[None, :]
    shape = (px.n, pv.n, rule.n, rule.n)
    vals = np.broadcast_to(
        np.asarray(g(x[:, None, :, None], v[None, :, None, :]), dtype=float), shape
    )
    sx = (2.0 * np.arange(kx + 1) + 1.0) / 2.0
    sv = (2.0 * np.arange(kv + 1) + 1.0) / 2.0
    coeffs = np.einsum(
        "ijqr,q,r,mq,nr->ijmn", vals, rule.weights, rule.weights, Px, Pv
    )
    coeffs *= sx[None, None, :, None] * sv[None, None, None, :]
    return PhaseField2D(mesh, kx, kv, coeffs)


def error_l2_1d(field: ScalarField1D, exact, nq=None) -> float:
    """L2 distance between a field and a callable, by refined quadrature."""
    if nq is None:
        nq = volume_rule_size(field.k) + 3
    rule = gauss_rule(nq)
    P, _ = legendre_table(field.k, rule.nodes)
    p = field.partition
    x = p.centers[:, None] + 0.5 * p.sizes[:, None] * rule.nodes[None, :]
    diff = field.coeffs @ P - np.broadcast_to(np.asarray(exact(x), dtype=float), x.shape)
    cellwise = np.einsum("iq,q->i", diff**2, rule.weights) * 0.5 * p.sizes
    return float(np.sqrt(cellwise.sum()))


def error_l2_2d(field: PhaseField2D, exact, nq=None) -> float:
    if nq is None:
        nq = volume_rule_size(max(field.kx, field.kv)) + 3
    rule = gauss_rule(nq)
    Px, _ = legendre_table(field.kx, rule.nodes)
    Pv, _ = legendre_table(field.kv, rule.nodes)
    px, pv = field.mesh.px, field.mesh.pv
    x = px.centers[:, None] + 0.5 * px.sizes[:, None] * rule.nodes[None, :]
    v = pv.centers[:, None] + 0.5 * pv.sizes[:, None] * rule.nodes[None, :]
    vals = np.einsum("ijmn,mq,nr->ijqr", field.coeffs, Px, Pv)
    diff = vals - np.broadcast_to(
        np.asarray(exact(x[:, None, :, None], v[None, :, None, :]), dtype=float),
        vals.shape,
    )
    cellwise = np.einsum("ijqr,q,r->ij", diff**2, rule.weights, rule.weights)
    cellwise *= 0.25 * px.sizes[:, None] * pv.sizes[None, :]
    return float(np.sqrt(cellwise.sum()))


def field_to_csv(field, path):
    """Debug dump: one row per (cell, mode) coefficient."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        if isinstance(field, ScalarField1D):
            writer.writerow(["cell", "mode", "coeff"])
            for i in range(field.partition.n):
                for m in range(field.k + 1):
                    writer.writerow([i, m, repr(field.coeffs[i, m])])
        elif isinstance(field, PhaseField2D):
            writer.writerow(["cell_x", "cell_v", "mode_x", "mode_v", "coeff"])
            nx, nv = field.mesh.px.n, field.mesh.pv.n
            for i in range(nx):
                for j in range(nv):
                    for m in range(field.kx + 1):
                        for n in range(field.kv + 1):
                            writer.writerow([i, j, m, n, repr(field.coeffs[i, j, m, n])])
        else:
            raise InvalidArgumentError("unsupported field type")
