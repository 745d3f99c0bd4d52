"""Polynomial machinery: barycentric interpolation, Chebyshev grids,
Lebesgue functions, and the alternating-sign polynomials that represent
the Lebesgue function on a single subinterval.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

__all__ = [
    "BaryPoly",
    "ChebPoly",
    "barycentric_weights",
    "chebyshev_zeros",
    "chebyshev_second_kind_points",
    "lebesgue_function",
    "lebesgue_constant",
    "alternating_poly",
    "max_on_interval",
]

# barycentric 0/0 guard: points closer than this fraction of the set
# diameter are treated as coincident with a node
_NODE_SNAP = 1e-14


def barycentric_weights(nodes: np.ndarray) -> np.ndarray:
    """Barycentric weights for a node set, normalized to max |w| = 1.

    Products are accumulated in log space so that degree ~300 sets on
    [-1, 1] neither overflow nor underflow; the common scale factor is
    irrelevant to the barycentric formula.
    """
    x = np.asarray(nodes, dtype=float)
    n = len(x)
    if n == 1:
        return np.ones(1)
    diff = x[:, None] - x[None, :]
    np.fill_diagonal(diff, 1.0)
    if np.any(diff == 0.0):
        raise ValueError("nodes must be distinct")
    signs = np.prod(np.sign(diff), axis=1)
    logw = -np.sum(np.log(np.abs(diff)), axis=1)
    logw -= np.max(logw)
    return signs * np.exp(logw)


@dataclass(frozen=True)
class BaryPoly:
    """Polynomial in barycentric Lagrange form on a fixed node set."""

    nodes: np.ndarray
    values: np.ndarray
    weights: np.ndarray

    @classmethod
    def interpolate(cls, nodes, values) -> "BaryPoly":
        nodes = np.asarray(nodes, dtype=float)
        values = np.asarray(values, dtype=float)
        if nodes.shape != values.shape:
            raise ValueError("nodes and values must have equal length")
        return cls(nodes, values, barycentric_weights(nodes))

    @property
    def degree_bound(self) -> int:
        return len(self.nodes) - 1

    def __call__(self, x):
        xs = np.atleast_1d(np.asarray(x, dtype=float))
        diam = self.nodes[-1] - self.nodes[0]
        d = xs[:, None] - self.nodes[None, :]
        snap = np.abs(d) < _NODE_SNAP * diam
        d_safe = np.where(snap, 1.0, d)
        terms = self.weights / d_safe
        num = terms @ self.values
        den = np.sum(terms, axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = num / den
        hit_rows, hit_cols = np.nonzero(snap)
        out[hit_rows] = self.values[hit_cols]
        # The denominator sum can cancel to exactly zero when the weights span
        # a huge dynamic range; re-evaluate such points one ulp away.
        bad = np.nonzero(~np.isfinite(out))[0]
        for i in bad:
            k = int(np.argmin(np.abs(d[i])))
            shifted = np.nextafter(xs[i], self.nodes[k])
            out[i] = self(shifted)
        return out[0] if np.isscalar(x) or np.asarray(x).ndim == 0 else out

    def derivative_at(self, x: float) -> float:
        """First derivative via the barycentric differentiation formula."""
        diam = self.nodes[-1] - self.nodes[0]
        d = x - self.nodes
        k = int(np.argmin(np.abs(d)))
        if abs(d[k]) < _NODE_SNAP * diam:
            # differentiation matrix row at node k
            off = np.arange(len(self.nodes)) != k
            terms = (self.weights[off] / self.weights[k]) / (self.nodes[k] - self.nodes[off])
            deriv = np.zeros(len(self.nodes))
            deriv[off] = terms
            deriv[k] = -np.sum(terms)
            return float(deriv @ self.values)
        terms = self.weights / d
        s = np.sum(terms)
        px = float((terms @ self.values) / s)
        t2 = terms / d
        return float((t2 @ (px - self.values)) / s)


@dataclass(frozen=True)
class ChebPoly:
    """Polynomial in the Chebyshev basis, evaluated by Clenshaw recurrence."""

    coeffs: np.ndarray

    @classmethod
    def from_coeffs(cls, coeffs) -> "ChebPoly":
        return cls(np.asarray(coeffs, dtype=float))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        return np.polynomial.chebyshev.chebval(np.asarray(x, dtype=float), self.coeffs)

    @classmethod
    def from_bary(cls, p: BaryPoly) -> "ChebPoly":
        n = p.degree_bound
        grid = chebyshev_second_kind_points(max(n, 1))
        vals = p(grid)
        coeffs = np.polynomial.chebyshev.chebfit(grid, vals, max(n, 1))
        return cls(coeffs[: n + 1] if n >= 1 else coeffs[:1])

    def to_bary(self) -> BaryPoly:
        grid = chebyshev_second_kind_points(max(self.degree, 1))
        return BaryPoly.interpolate(grid, self(grid))


def chebyshev_zeros(N: int) -> np.ndarray:
    """Zeros -cos((2n+1)pi/(2N)) of cos(N arccos x), sorted increasing."""
    if N < 1:
        raise ValueError("N must be >= 1")
    n = np.arange(N)
    # sin form keeps the set exactly antisymmetric
    y = np.sin(math.pi * (2 * n + 1 - N) / (2 * N))
    return y


def chebyshev_second_kind_points(N: int) -> np.ndarray:
    """Points -cos(n pi/N), n = 0..N, including both endpoints."""
    if N < 1:
        raise ValueError("N must be >= 1")
    n = np.arange(N + 1)
    z = np.sin(math.pi * (2 * n - N) / (2 * N))
    z[0], z[-1] = -1.0, 1.0
    return z


def _abs_lagrange_sum(Y: np.ndarray, w: np.ndarray, xs: np.ndarray) -> np.ndarray:
    """Sum of |l_{Y,n}(x)| over n, vectorized over xs."""
    diam = Y[-1] - Y[0]
    d = xs[:, None] - Y[None, :]
    snap = np.abs(d) < _NODE_SNAP * diam
    d_safe = np.where(snap, 1.0, d)
    terms = w / d_safe
    num = np.sum(np.abs(terms), axis=1)
    den = np.abs(np.sum(terms, axis=1))
    out = num / den
    out[np.any(snap, axis=1)] = 1.0
    return out


def lebesgue_function(Y, x):
    """Lebesgue function L_Y(x) = sum_n |l_{Y,n}(x)|; equals 1 at the nodes."""
    Y = np.asarray(Y, dtype=float)
    if len(Y) < 2:
        raise ValueError("need at least two nodes")
    w = barycentric_weights(Y)
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    out = _abs_lagrange_sum(Y, w, xs)
    return float(out[0]) if np.asarray(x).ndim == 0 else out


def alternating_poly(Y, n: int) -> BaryPoly:
    """The degree-<=N polynomial with values (-1)^(n-k) for k <= n and
    (-1)^(n+1-k) for k > n; it equals L_Y on [y_n, y_{n+1}]."""
    Y = np.asarray(Y, dtype=float)
    N = len(Y) - 1
    if N < 1:
        raise ValueError("need at least two nodes")
    if not (0 <= n <= N - 1):
        raise ValueError("index n must satisfy 0 <= n <= N-1")
    k = np.arange(N + 1)
    vals = np.where(k <= n, (-1.0) ** (n - k), (-1.0) ** (n + 1 - k))
    return BaryPoly.interpolate(Y, vals)


def max_on_interval(f, a: float, b: float, grid: int = 64, refine: int = 3):
    """Maximize a smooth scalar function on [a, b].

    Evaluates on a Chebyshev-spaced proxy grid, then refines the best few
    bracketed candidates with bounded scalar minimization (xatol 1e-13).
    Returns (argmax, max).
    """
    if b <= a:
        return a, float(f(np.array([a]))[0])
    t = np.cos(np.pi * np.arange(grid + 1) / grid)[::-1]
    xs = 0.5 * (a + b) + 0.5 * (b - a) * t
    xs[0], xs[-1] = a, b
    vals = np.asarray(f(xs), dtype=float)
    order = np.argsort(vals)[::-1]
    best_x, best_v = xs[order[0]], vals[order[0]]
    seen = []
    for idx in order:
        i = int(idx)
        if any(abs(i - j) <= 1 for j in seen):
            continue
        seen.append(i)
        lo = xs[max(i - 1, 0)]
        hi = xs[min(i + 1, grid)]
        if hi - lo <= 0:
            continue
        res = minimize_scalar(
            lambda x: -float(f(np.array([x]))[0]),
            bounds=(lo, hi),
            method="bounded",
            options={"xatol": 1e-13},
        )
        if -res.fun > best_v:
            best_x, best_v = float(res.x), float(-res.fun)
        if len(seen) >= refine:
            break
    return best_x, float(best_v)


def lebesgue_constant(Y) -> float:
    """Max of the Lebesgue function over [min Y, max Y]."""
    Y = np.asarray(Y, dtype=float)
    if len(Y) < 2:
        raise ValueError("need at least two nodes")
    w = barycentric_weights(Y)
    best = 1.0
    for a, b in zip(Y[:-1], Y[1:]):
        _, v = max_on_interval(lambda xs: _abs_lagrange_sum(Y, w, xs), a, b)
        best = max(best, v)
    return best
