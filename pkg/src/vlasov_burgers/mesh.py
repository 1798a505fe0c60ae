"""1D partitions of the spatial/velocity intervals and their tensor mesh."""

import numpy as np

from .errors import InvalidArgumentError


class Partition1D:
    """A partition a = e_0 < e_1 < ... < e_N = b of an interval.

    Cells are [e_i, e_{i+1}].  ``periodic`` marks whether the two endpoints
    are identified (x-direction) or not (v-direction).
    """

    def __init__(self, edges, periodic: bool):
        edges = np.asarray(edges, dtype=float)
        if edges.ndim != 1 or edges.size < 2:
            raise InvalidArgumentError("Partition1D needs at least two edges")
        if not np.all(np.isfinite(edges)):
            raise InvalidArgumentError("Partition1D edges must be finite")
        sizes = np.diff(edges)
        if np.any(sizes <= 0):
            raise InvalidArgumentError("Partition1D edges must be strictly increasing")
        self.edges = edges
        self.sizes = sizes
        self.periodic = bool(periodic)

    @property
    def a(self) -> float:
        return float(self.edges[0])

    @property
    def b(self) -> float:
        return float(self.edges[-1])

    @property
    def n(self) -> int:
        return self.sizes.size

    @property
    def h(self) -> float:
        return float(self.sizes.max())

    @property
    def centers(self):
        return 0.5 * (self.edges[:-1] + self.edges[1:])

    @property
    def quasi_uniformity(self) -> float:
        """Ratio of maximal to minimal cell size."""
        return float(self.sizes.max() / self.sizes.min())

    def cell_of(self, x):
        """Cell index containing x (points on an interior edge go right)."""
        idx = np.searchsorted(self.edges, x, side="right") - 1
        return np.clip(idx, 0, self.n - 1)

    def __repr__(self):
        tag = "periodic" if self.periodic else "bounded"
        return f"Partition1D([{self.a}, {self.b}], n={self.n}, {tag})"


def uniform_partition(a: float, b: float, n: int, periodic: bool) -> Partition1D:
    """n equal cells on [a, b]."""
    if not (np.isfinite(a) and np.isfinite(b)) or not a < b:
        raise InvalidArgumentError(f"invalid interval [{a}, {b}]")
    if n < 1:
        raise InvalidArgumentError("need at least one cell")
    edges = a + (b - a) * np.arange(n + 1) / n
    edges[-1] = b
    return Partition1D(edges, periodic)


class Mesh2D:
    """Cartesian product of an x-partition (periodic) and a v-partition."""

    def __init__(self, px: Partition1D, pv: Partition1D):
        if not px.periodic:
            raise InvalidArgumentError("x-partition must be periodic")
        if pv.periodic:
            raise InvalidArgumentError("v-partition must not be periodic")
        self.px = px
        self.pv = pv

    @property
    def h(self) -> float:
        return max(self.px.h, self.pv.h)

    @property
    def ncells(self) -> int:
        return self.px.n * self.pv.n

    def v_sign_rows(self):
        """Sign of v in each v-row: +1, -1, or 0 when a row straddles v = 0."""
        lo = self.pv.edges[:-1]
        hi = self.pv.edges[1:]
        tol = 1e-12 * max(abs(self.pv.a), abs(self.pv.b), 1.0)
        sign = np.zeros(self.pv.n, dtype=int)
        sign[lo >= -tol] = 1
        sign[hi <= tol] = -1
        return sign

    def v_axis_aligned(self) -> bool:
        """True when no v-row strictly contains v = 0.

        The upwind direction of the x-flux is then fixed per row, which the
        generalized projections and the sign-split flux identities assume.
        """
        return bool(np.all(self.v_sign_rows() != 0))

    def __repr__(self):
        return f"Mesh2D({self.px!r} x {self.pv!r})"


def tensor_mesh(px: Partition1D, pv: Partition1D) -> Mesh2D:
    return Mesh2D(px, pv)
