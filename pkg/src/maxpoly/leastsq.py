"""Discrete polynomial least squares and its sup-norm conditioning.

The fit minimizes the discrete 2-seminorm over polynomials of degree N,
computed via an orthogonal factorization of the Chebyshev-basis design
matrix (never the normal equations).  The sup-norm condition number of
the linear fit operator equals the maximum over x of the absolute sum of
its cardinal (unit-impulse) responses; it is bracketed between B(M, N)
and sqrt(M+1) * B(M, N).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .polycore import max_on_interval
from .weights import NodeSet, WeightSpec

__all__ = ["LsqFit", "ConditionEstimate", "fit", "condition_number_inf", "stable_degree"]


@dataclass(frozen=True)
class LsqFit:
    """Least-squares polynomial in the Chebyshev basis."""

    degree: int
    coeffs: np.ndarray
    residual_discrete: float
    nodes: NodeSet

    def __call__(self, x):
        return np.polynomial.chebyshev.chebval(np.asarray(x, dtype=float), self.coeffs)

    def to_json(self, path) -> None:
        payload = {
            "degree": self.degree,
            "coeffs": self.coeffs.tolist(),
            "residual_discrete": self.residual_discrete,
            "M": self.nodes.M,
        }
        with open(path, "w") as fh:
            json.dump(payload, fh, indent=2)


@dataclass(frozen=True)
class ConditionEstimate:
    """Sampled sup-norm condition number with its theoretical bracket."""

    kappa_inf: float
    grid_resolution: int
    bracket: tuple | None


def _design_matrix(nodes: NodeSet, N: int) -> np.ndarray:
    return np.polynomial.chebyshev.chebvander(nodes.points, N)


def fit(nodes: NodeSet, N: int, samples) -> LsqFit:
    """Least-squares polynomial of degree N through samples at the nodes."""
    samples = np.asarray(samples, dtype=float)
    M = nodes.M
    if not (0 <= N <= M):
        raise ValueError("need 0 <= N <= M")
    if samples.shape != (M + 1,):
        raise ValueError(f"expected {M + 1} samples")
    A = _design_matrix(nodes, N)
    coeffs, _, rank, _ = np.linalg.lstsq(A, samples, rcond=None)
    if rank < N + 1:
        raise RuntimeError("design matrix rank-deficient (nodes not distinct?)")
    resid = samples - A @ coeffs
    residual = math.sqrt(2.0 / (M + 1) * float(resid @ resid))
    return LsqFit(N, coeffs, residual, nodes)


def condition_number_inf(
    nodes: NodeSet, N: int, probe_grid_size: int | None = None, bracket=None
) -> ConditionEstimate:
    """Sup-norm condition number of the degree-N least-squares operator.

    The operator is linear, so the condition number is the maximum over x
    of sum_m |c_m(x)| with c_m the fit of the unit impulse at node m.  One
    factorization is reused for all impulses; the maximum is located on a
    Chebyshev-distributed probe grid and refined near the best candidates.
    Reported as a certified lower estimate of the supremum.
    """
    M = nodes.M
    if not (0 <= N <= M):
        raise ValueError("need 0 <= N <= M")
    A = _design_matrix(nodes, N)
    # all M+1 impulse responses from one orthogonal factorization
    C, _, _, _ = np.linalg.lstsq(A, np.eye(M + 1), rcond=None)
    grid = probe_grid_size or 20 * max(M, 1)

    def abs_sum(xs):
        V = np.polynomial.chebyshev.chebvander(np.asarray(xs, dtype=float), N)
        return np.sum(np.abs(V @ C), axis=1)

    t = np.cos(np.pi * np.arange(grid + 1) / grid)[::-1]
    vals = abs_sum(t)
    order = np.argsort(vals)[::-1][:5]
    best = float(np.max(vals))
    for i in order:
        lo = t[max(int(i) - 1, 0)]
        hi = t[min(int(i) + 1, grid)]
        _, v = max_on_interval(abs_sum, lo, hi, grid=16, refine=2)
        best = max(best, v)
    return ConditionEstimate(kappa_inf=best, grid_resolution=grid, bracket=bracket)


def stable_degree(w: WeightSpec, M: int, c: float = 3.0) -> int:
    """Degree N ~ c * M^(1/(2(gamma+1))) at which the fit stays stable."""
    if M < 1:
        raise ValueError("M must be >= 1")
    N = int(round(c * M ** (1.0 / (2.0 * (w.gamma + 1)))))
    return max(1, min(N, M))
