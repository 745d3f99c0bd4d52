"""Mock-Chebyshev subsets: grid points interlacing the Chebyshev grid.

When N * zeta < pi (zeta the largest arccos gap of the node set), a
greedy sweep over the node angles selects N grid points that strictly
interlace the N-point Chebyshev second-kind grid.
"""

from __future__ import annotations

import math

import numpy as np

from .bounds import zeta
from .polycore import chebyshev_second_kind_points
from .weights import NodeSet

__all__ = ["mock_chebyshev_subset"]

# strict margin on N*zeta < pi to avoid boundary flakiness
_MARGIN = 1e-12


def mock_chebyshev_subset(nodes: NodeSet, N: int):
    """Subset of N node points interlacing -cos(n*pi/N), or None.

    Returns (points, indices) with z_{n-1} < points[n-1] < z_n for all n,
    where z is the (N+1)-point second-kind Chebyshev grid; returns None
    when the sufficient condition N * zeta < pi fails.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if N * zeta(nodes) >= math.pi - _MARGIN:
        return None
    theta = nodes.angles
    indices = np.empty(N, dtype=int)
    for n in range(1, N + 1):
        # largest m with theta_m < n*pi/N
        m = int(np.searchsorted(theta, n * math.pi / N, side="left")) - 1
        indices[n - 1] = m
    points = nodes.points[indices]
    z = chebyshev_second_kind_points(N)
    if not (np.all(z[:-1] < points) and np.all(points < z[1:])):
        raise AssertionError("greedy construction failed to interlace")
    return points, indices
