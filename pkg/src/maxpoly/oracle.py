"""Brute-force verification oracle for the maximal growth B(M, N, x).

On an open subinterval (x_m, x_{m+1}) the maximal growth equals the
minimum, over all (N+1)-point subsets Y of the grid containing the
bracketing pair, of the Lebesgue function L_Y(x).  Enumerating those
subsets is exact but exponential, so this module is test-only and guards
against large instances.  A second, Lebesgue-free cross-check maximizes
p(x) over monomial coefficients by enumerating sign patterns at active
constraint sets.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .polycore import barycentric_weights, lebesgue_function, max_on_interval
from .weights import NodeSet

__all__ = ["oracle_B_point", "oracle_B", "oracle_B_point_lp", "EnumerationTooLarge"]

ENUM_GUARD = 10**6


class EnumerationTooLarge(ValueError):
    """Instance exceeds the subset-enumeration guard."""


def _check_guard(M: int, N: int) -> None:
    if math.comb(M - 1, N - 1) > ENUM_GUARD:
        raise EnumerationTooLarge(
            f"binomial({M - 1}, {N - 1}) subsets exceed the {ENUM_GUARD} guard"
        )


def _subsets(nodes: NodeSet, N: int, m: int):
    M = nodes.M
    others = [j for j in range(M + 1) if j not in (m, m + 1)]
    for combo in itertools.combinations(others, N - 1):
        yield np.array(sorted(combo + (m, m + 1)), dtype=int)


def oracle_B_point(nodes: NodeSet, N: int, x: float):
    """Exhaustive min over Y of L_Y(x); returns (value, minimizing indices)."""
    if N == 0:
        return 1.0, np.array([], dtype=int)
    pts = nodes.points
    if np.min(np.abs(pts - x)) < 1e-14:
        return 1.0, np.array([], dtype=int)
    _check_guard(nodes.M, N)
    m = nodes.bracketing_interval(x)
    best_val, best_idx = math.inf, None
    for idx in _subsets(nodes, N, m):
        v = lebesgue_function(pts[idx], x)
        if v < best_val:
            best_val, best_idx = v, idx
    return float(best_val), best_idx


def oracle_B(nodes: NodeSet, N: int) -> float:
    """Brute-force B(M, N): per subinterval, the minimizing subset at the
    midpoint fixes the local polynomial, which is then maximized."""
    if N == 0:
        return 1.0
    _check_guard(nodes.M, N)
    pts = nodes.points
    best = 1.0
    for m in range(nodes.M):
        mid = 0.5 * (pts[m] + pts[m + 1])
        _, idx = oracle_B_point(nodes, N, mid)
        Y = pts[idx]
        w = barycentric_weights(Y)

        def leb(xs):
            d = xs[:, None] - Y[None, :]
            with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
                vals = np.sum(np.abs(w / d), axis=1) / np.abs(np.sum(w / d, axis=1))
            return np.where(np.isfinite(vals), vals, 1.0)

        a = np.nextafter(pts[m], 1.0)
        b = np.nextafter(pts[m + 1], -1.0)
        _, v = max_on_interval(leb, a, b)
        best = max(best, v)
    return best


def oracle_B_point_lp(nodes: NodeSet, N: int, x: float) -> float:
    """Independent cross-check at degree <= 5: maximize p(x) over monomial
    coefficients subject to -1 <= p(x_j) <= 1 by enumerating the vertices
    of the constraint polytope (N+1 active constraints with signs)."""
    if N > 5:
        raise ValueError("LP cross-check supports degree <= 5 only")
    if N == 0:
        return 1.0
    pts = nodes.points
    V = np.vander(pts, N + 1, increasing=True)
    vx = np.vander(np.array([x]), N + 1, increasing=True)[0]
    best = 1.0
    for idx in itertools.combinations(range(len(pts)), N + 1):
        A = V[list(idx)]
        for signs in itertools.product((-1.0, 1.0), repeat=N):
            rhs = np.array((1.0,) + signs)
            try:
                coef = np.linalg.solve(A, rhs)
            except np.linalg.LinAlgError:
                continue
            if np.max(np.abs(V @ coef)) <= 1.0 + 1e-9:
                best = max(best, abs(float(vx @ coef)))
    return best
