"""Legendre modal basis on [-1, 1] and Gauss-Legendre quadrature.

The basis is modal so every element mass matrix is diagonal with entries
2/(2m+1) scaled by the cell half-width; the semi-discrete systems then
invert by plain division.  Quadrature nodes are Newton-refined roots of
P_n with Chebyshev initial guesses.
"""

import numpy as np

from .errors import InvalidArgumentError

MAX_RULE = 32

_rule_cache: dict[int, "QuadRule"] = {}


def legendre_eval(degree: int, xi):
    """Evaluate P_degree and its derivative at xi via the three-term recurrence.

    Returns a pair (value, derivative).  Accepts scalars or arrays.
    """
    xi = np.asarray(xi, dtype=float)
    p_prev = np.zeros_like(xi)
    dp_prev = np.zeros_like(xi)
    p = np.ones_like(xi)
    dp = np.zeros_like(xi)
    for n in range(1, degree + 1):
        p_next = ((2 * n - 1) * xi * p - (n - 1) * p_prev) / n
        dp_next = ((2 * n - 1) * (p + xi * dp) - (n - 1) * dp_prev) / n
        p_prev, dp_prev = p, dp
        p, dp = p_next, dp_next
    if xi.ndim == 0:
        return float(p), float(dp)
    return p, dp


def legendre_table(k: int, nodes):
    """Values and derivatives of P_0..P_k at the given nodes.

    Returns (P, D) with shape (k+1, len(nodes)).
    """
    nodes = np.atleast_1d(np.asarray(nodes, dtype=float))
    P = np.empty((k + 1, nodes.size))
    D = np.empty((k + 1, nodes.size))
    P[0] = 1.0
    D[0] = 0.0
    if k >= 1:
        P[1] = nodes
        D[1] = 1.0
    for n in range(1, k):
        P[n + 1] = ((2 * n + 1) * nodes * P[n] - n * P[n - 1]) / (n + 1)
        D[n + 1] = ((2 * n + 1) * (P[n] + nodes * D[n]) - n * D[n - 1]) / (n + 1)
    return P, D


def mass_diagonal(k: int):
    """Reference-element mass matrix diagonal: integral of P_m^2 over [-1, 1]."""
    return 2.0 / (2.0 * np.arange(k + 1) + 1.0)


class QuadRule:
    """Gauss-Legendre rule on [-1, 1]: exact for polynomials of degree 2n-1."""

    def __init__(self, nodes, weights):
        self.nodes = np.asarray(nodes, dtype=float)
        self.weights = np.asarray(weights, dtype=float)

    @property
    def n(self):
        return self.nodes.size

    def mapped(self, a: float, b: float):
        """Nodes and weights mapped to the interval [a, b]."""
        half = 0.5 * (b - a)
        return 0.5 * (a + b) + half * self.nodes, half * self.weights

    def integrate(self, f, a=-1.0, b=1.0):
        x, w = self.mapped(a, b)
        return float(np.dot(w, f(x)))


def gauss_rule(n: int) -> QuadRule:
    """n-point Gauss-Legendre rule, cached.  1 <= n <= 32."""
    if not (1 <= n <= MAX_RULE):
        raise InvalidArgumentError(f"gauss_rule: n={n} outside [1, {MAX_RULE}]")
    if n in _rule_cache:
        return _rule_cache[n]
    if n == 1:
        rule = QuadRule([0.0], [2.0])
        _rule_cache[n] = rule
        return rule
    # Chebyshev initial guesses, Newton iteration on P_n.
    i = np.arange(1, n + 1)
    x = np.cos(np.pi * (i - 0.25) / (n + 0.5))
    for _ in range(100):
        p, dp = legendre_eval(n, x)
        dx = p / dp
        x = x - dx
        if np.max(np.abs(dx)) < 1e-15:
            break
    _, dp = legendre_eval(n, x)
    w = 2.0 / ((1.0 - x**2) * dp**2)
    order = np.argsort(x)
    x, w = x[order], w[order]
    # Enforce exact symmetry about 0.
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    rule = QuadRule(x, w)
    _rule_cache[n] = rule
    return rule


def volume_rule_size(k: int) -> int:
    """Quadrature size used for all volume/edge integrals at degree k.

    Exact for the cubic Burgers term u^2 * dphi (degree 3k-1) and the
    moment-coupling products (degree up to 3k).
    """
    return max(k + 2, (3 * k + 2 + 1) // 2)
