"""Closed-form growth bounds for polynomials bounded on a grid.

Provides the left/right lower bounds Q(K, N) with their admissible depths
K, the explicit witness polynomial attaining them, the arccos-gap upper
bound 1/(1 - N*zeta), and a condition-number certificate derived from the
computed maximal growth B(M, N).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .polycore import BaryPoly, chebyshev_second_kind_points, chebyshev_zeros
from .weights import NodeSet

__all__ = [
    "BoundReport",
    "find_K",
    "log_Q",
    "bound_report",
    "witness_polynomial",
    "zeta",
    "zeta_upper_bound_B",
    "impossibility_certificate",
    "log_gamma",
]

_LANCZOS_G = 7.0
_LANCZOS_C = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def log_gamma(z: float) -> float:
    """log Gamma(z) for z >= 1/2 via the Lanczos approximation (rel err < 1e-12)."""
    if z < 0.5:
        raise ValueError("log_gamma requires z >= 1/2")
    zz = z - 1.0
    acc = _LANCZOS_C[0]
    for i in range(1, len(_LANCZOS_C)):
        acc += _LANCZOS_C[i] / (zz + i)
    t = zz + _LANCZOS_G + 0.5
    return 0.5 * math.log(2 * math.pi) + (zz + 0.5) * math.log(t) - t + math.log(acc)


def find_K(nodes: NodeSet, N: int, side: str) -> int:
    """Largest admissible depth K in [2, N] for the given side, else 1.

    Minus side requires 0 >= x_n > y_n for n = 1..K-1 against the degree-N
    Chebyshev zeros y; plus side mirrors from the right endpoint.  All
    comparisons are strict.
    """
    M = nodes.M
    if not (1 <= N <= M):
        raise ValueError("need 1 <= N <= M")
    y = chebyshev_zeros(N)
    x = nodes.points
    K = 1
    for n in range(1, N):
        if side == "minus":
            ok = n <= M and x[n] <= 0.0 and x[n] > y[n]
        elif side == "plus":
            ok = n <= M and x[M - n] >= 0.0 and x[M - n] < -y[n]
        else:
            raise ValueError("side must be 'minus' or 'plus'")
        if not ok:
            break
        K = n + 1
    return K


def log_Q(nodes: NodeSet, N: int, K: int, side: str) -> float:
    """Natural log of Q_side(K, N); Q(1, N) = 1 by definition."""
    if K == 1:
        return 0.0
    if not (2 <= K <= N):
        raise ValueError("need 1 <= K <= N")
    x = nodes.points
    M = nodes.M
    if side == "minus":
        prod = float(np.sum(np.log1p(x[1:K])))
    elif side == "plus":
        prod = float(np.sum(np.log1p(-x[M - K + 1 : M][::-1])))
    else:
        raise ValueError("side must be 'minus' or 'plus'")
    return (
        math.log(math.pi / 8)
        + (K - 1) * math.log(2 * N * N / math.pi**2)
        - 2 * log_gamma(K + 0.5)
        + prod
    )


def zeta(nodes: NodeSet) -> float:
    """Largest arccos gap between consecutive nodes (the integral of
    1/sqrt(1-x^2) over a subinterval equals its angle increment)."""
    return float(np.max(np.diff(nodes.angles)))


def zeta_upper_bound_B(nodes: NodeSet, N: int) -> float | None:
    """Upper bound 1/(1 - N*zeta) when N*zeta < 1, else None."""
    nz = N * zeta(nodes)
    if nz < 1.0:
        return 1.0 / (1.0 - nz)
    return None


@dataclass(frozen=True)
class BoundReport:
    """Bracketing information for B(M, N) on one node set."""

    M: int
    N: int
    K_minus: int
    K_plus: int
    log_Q_minus: float
    log_Q_plus: float
    zeta: float
    upper: float | None
    nu: float | None

    @property
    def log_lower(self) -> float:
        return max(self.log_Q_minus, self.log_Q_plus)

    def to_json_dict(self) -> dict:
        ln10 = math.log(10)
        return {
            "M": self.M,
            "N": self.N,
            "K_minus": self.K_minus,
            "K_plus": self.K_plus,
            "log10_Q_minus": self.log_Q_minus / ln10,
            "log10_Q_plus": self.log_Q_plus / ln10,
            "log10_lower": self.log_lower / ln10,
            "zeta": self.zeta,
            "log10_upper": None if self.upper is None else math.log10(self.upper),
            "nu": self.nu,
        }

    def to_json(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json_dict(), fh, indent=2)


def bound_report(nodes: NodeSet, N: int) -> BoundReport:
    """Assemble K, Q, zeta and the applicable upper bound for one (nodes, N)."""
    km = find_K(nodes, N, "minus")
    kp = find_K(nodes, N, "plus")
    nu = None
    prov = nodes.provenance
    if prov.get("kind") == "weight":
        gamma = max(prov["alpha"], prov["beta"], -0.5)
        if gamma > -0.5:
            nu = (N ** (2 * (gamma + 1)) / nodes.M) ** (1.0 / (2 * gamma + 1))
    return BoundReport(
        M=nodes.M,
        N=N,
        K_minus=km,
        K_plus=kp,
        log_Q_minus=log_Q(nodes, N, km, "minus"),
        log_Q_plus=log_Q(nodes, N, kp, "plus"),
        zeta=zeta(nodes),
        upper=zeta_upper_bound_B(nodes, N),
        nu=nu,
    )


class NoWitnessError(RuntimeError):
    """Raised when K = 1, i.e. no witness construction is available."""


def _witness_values(x_cut: np.ndarray, y: np.ndarray, N: int, xs: np.ndarray) -> np.ndarray:
    """Evaluate (1/2) cos(N arccos x) * prod (x - x_n)/(x - y_n) at xs."""
    q = np.cos(N * np.arccos(np.clip(xs, -1, 1)))
    ratio = np.prod(
        (xs[:, None] - x_cut[None, :]) / (xs[:, None] - y[None, :]), axis=1
    )
    return 0.5 * q * ratio


def witness_polynomial(nodes: NodeSet, N: int, side: str):
    """Witness of the lower bound: degree-N polynomial bounded by 1 on the
    grid whose sup norm is at least Q(K, N).

    Returns (BaryPoly, achieved_value), the value being |p| at the probe
    point cos(pi/N) adjacent to the relevant endpoint.
    """
    K = find_K(nodes, N, side)
    if K < 2:
        raise NoWitnessError(f"K_{side} = 1: witness construction unavailable")
    y_min = chebyshev_zeros(N)
    if side == "minus":
        pts = nodes.points
        reflect = False
    else:
        pts = -nodes.points[::-1]
        reflect = True
    x_cut = pts[:K]
    y_cut = y_min[:K]

    # interpolate on a Chebyshev grid (disjoint from the first-kind zeros y)
    grid = chebyshev_second_kind_points(N)
    vals = _witness_values(x_cut, y_cut, N, grid)
    if reflect:
        p = BaryPoly.interpolate(-grid[::-1], vals[::-1])
        probe = math.cos(math.pi / N)
    else:
        p = BaryPoly.interpolate(grid, vals)
        probe = -math.cos(math.pi / N)
    achieved = abs(float(p(probe)))
    return p, achieved


def impossibility_certificate(
    nodes: NodeSet, tau: float, rho: float, C: float, theta: float
):
    """Condition-number certificate kappa >= B(M, N)/2 for the largest
    admissible degree N < (M^tau log rho - log 2C)/log theta.

    Returns (N, kappa_lower) or None when no N >= 1 is admissible.
    The B(M, N) evaluation is delegated to the Remez solver.
    """
    if rho <= 1 or theta <= 1 or C <= 0 or tau <= 0:
        raise ValueError("require rho > 1, theta > 1, C > 0, tau > 0")
    limit = (nodes.M**tau * math.log(rho) - math.log(2 * C)) / math.log(theta)
    N = int(math.floor(limit))
    if N >= limit:
        N -= 1
    N = min(N, nodes.M)
    if N < 1:
        return None
    from .remez import compute_B

    result = compute_B(nodes, N)
    return N, result.B / 2.0
