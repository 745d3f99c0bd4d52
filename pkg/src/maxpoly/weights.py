"""Modified Jacobi weight functions and equidistributed node sets.

A weight mu(x) = c * g(x) * (1-x)^alpha * (1+x)^beta on [-1, 1] is
normalized so that its integral is 1.  Node sets x_0 < ... < x_M are
defined implicitly by CDF(x_m) = m/M, with both endpoints included.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import betainc, betaincinv, betaln

__all__ = [
    "PiecewisePolyG",
    "WeightSpec",
    "NodeSet",
    "preset",
    "cdf",
    "generate_nodes",
    "cdf_quadrature",
]

PRESETS = {
    # name -> alpha = beta exponent of the ultraspherical weight
    "U": 0.0,
    "C1": -0.5,
    "C2": 0.5,
    "UC": -0.25,
    "OC": -0.75,
}


class DomainError(ValueError):
    """Argument outside the interval [-1, 1]."""


@dataclass(frozen=True)
class PiecewisePolyG:
    """Positive piecewise-polynomial density factor g with declared bounds.

    ``breakpoints`` partitions [-1, 1]; ``pieces[i]`` holds monomial
    coefficients (low to high) valid on [breakpoints[i], breakpoints[i+1]].
    ``c1 <= g <= c2`` must hold on all of [-1, 1].
    """

    breakpoints: tuple
    pieces: tuple
    c1: float
    c2: float

    def __post_init__(self):
        if not (0 < self.c1 <= self.c2):
            raise ValueError("bounds must satisfy 0 < c1 <= c2")
        if len(self.pieces) != len(self.breakpoints) - 1:
            raise ValueError("need one coefficient list per subinterval")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        bp = np.asarray(self.breakpoints)
        idx = np.clip(np.searchsorted(bp, x, side="right") - 1, 0, len(self.pieces) - 1)
        out = np.empty_like(x, dtype=float)
        for i, coeffs in enumerate(self.pieces):
            mask = idx == i
            if np.any(mask):
                out[mask] = np.polynomial.polynomial.polyval(x[mask], coeffs)
        return out


@dataclass(frozen=True)
class WeightSpec:
    """A modified Jacobi weight mu(x) = norm_constant * g(x)(1-x)^alpha(1+x)^beta."""

    alpha: float
    beta: float
    g: PiecewisePolyG | None = None  # None means g == 1
    norm_constant: float = field(default=0.0)
    gamma: float = field(default=0.0, init=False)

    def __post_init__(self):
        if not (self.alpha > -1 and self.beta > -1):
            raise ValueError("alpha and beta must exceed -1")
        object.__setattr__(self, "gamma", max(self.alpha, self.beta, -0.5))
        if self.norm_constant <= 0:
            if self.g is None:
                # int (1-x)^a (1+x)^b dx = 2^(a+b+1) B(b+1, a+1)
                log_total = (self.alpha + self.beta + 1) * math.log(2.0) + betaln(
                    self.beta + 1, self.alpha + 1
                )
                object.__setattr__(self, "norm_constant", math.exp(-log_total))
            else:
                total = _raw_integral(self, -1.0, 1.0)
                object.__setattr__(self, "norm_constant", 1.0 / total)

    def density(self, x):
        """Evaluate mu(x) pointwise; diverges at endpoints for negative exponents."""
        x = np.asarray(x, dtype=float)
        gval = 1.0 if self.g is None else self.g(x)
        with np.errstate(divide="ignore"):
            return self.norm_constant * gval * (1 - x) ** self.alpha * (1 + x) ** self.beta


def preset(name: str) -> WeightSpec:
    """Return one of the ultraspherical presets U, C1, C2, UC, OC."""
    try:
        a = PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    return WeightSpec(alpha=a, beta=a)


def _gauss_panels(f, a: float, b: float, order: int = 40, panels: int = 24) -> float:
    """Composite Gauss-Legendre quadrature of f over [a, b].

    Panels are geometrically graded toward a, where the substituted
    integrands may retain weak derivative singularities.
    """
    t, w = np.polynomial.legendre.leggauss(order)
    frac = np.concatenate([[0.0], 0.5 ** np.arange(panels - 1, -1.0, -1)])
    edges = a + (b - a) * frac
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        half = 0.5 * (hi - lo)
        xs = 0.5 * (lo + hi) + half * t
        total += half * float(np.dot(w, f(xs)))
    return total


def _raw_integral(w: WeightSpec, a: float, b: float) -> float:
    """Integral of g(x)(1-x)^alpha(1+x)^beta over [a, b] (no normalization).

    Endpoint singularities are removed by the substitutions
    1+x = t^(1/(1+beta)) near x = -1 and 1-x = s^(1/(1+alpha)) near x = 1,
    after splitting the range at 0.
    """
    gfun = (lambda x: np.ones_like(x)) if w.g is None else w.g
    total = 0.0
    if a < 0:
        hi = min(b, 0.0)
        # t = (1+x)^(1+beta): integrand becomes g(x)(1-x)^alpha / (1+beta)
        t_lo = (1 + a) ** (1 + w.beta)
        t_hi = (1 + hi) ** (1 + w.beta)

        def left(t):
            x = t ** (1.0 / (1 + w.beta)) - 1.0
            return gfun(x) * (1 - x) ** w.alpha / (1 + w.beta)

        total += _gauss_panels(left, t_lo, t_hi)
    if b > 0:
        lo = max(a, 0.0)
        s_lo = (1 - b) ** (1 + w.alpha)
        s_hi = (1 - lo) ** (1 + w.alpha)

        def right(s):
            x = 1.0 - s ** (1.0 / (1 + w.alpha))
            return gfun(x) * (1 + x) ** w.beta / (1 + w.alpha)

        total += _gauss_panels(right, s_lo, s_hi)
    return total


def cdf_quadrature(w: WeightSpec, x: float) -> float:
    """CDF by singularity-removing quadrature; independent of the betainc path."""
    if x <= -1.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    return w.norm_constant * _raw_integral(w, -1.0, x)


def cdf(w: WeightSpec, x) -> float | np.ndarray:
    """Cumulative distribution function of mu at x in [-1, 1]."""
    xs = np.asarray(x, dtype=float)
    if np.any(xs < -1) or np.any(xs > 1):
        raise DomainError("cdf argument must lie in [-1, 1]")
    if w.g is None:
        out = betainc(w.beta + 1, w.alpha + 1, (1 + xs) / 2)
    else:
        out = np.vectorize(lambda v: cdf_quadrature(w, v))(xs)
    return float(out) if np.isscalar(x) else out


def _invert_cdf(w: WeightSpec, target: float) -> float:
    """Solve cdf(x) = target by bisection to width 1e-3 then safeguarded Newton."""
    lo, hi = -1.0, 1.0
    flo = 0.0
    while hi - lo > 1e-3:
        mid = 0.5 * (lo + hi)
        fmid = cdf(w, mid)
        if fmid < target:
            lo, flo = mid, fmid
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    for _ in range(100):
        fx = cdf(w, x)
        err = fx - target
        if abs(err) < 1e-13:
            break
        dens = float(w.density(x))
        if dens > 0 and math.isfinite(dens):
            step = err / dens
            xn = x - step
        else:
            xn = lo - 1  # force bisection fallback
        if not (lo < xn < hi):
            xn = 0.5 * (lo + hi)
        if cdf(w, xn) < target:
            lo = xn
        else:
            hi = xn
        x = xn
    else:
        raise RuntimeError(f"CDF inversion failed to converge at target {target}")
    return x


@dataclass(frozen=True)
class NodeSet:
    """Sorted points on [-1, 1] with both endpoints, plus cached arccos angles."""

    points: np.ndarray
    angles: np.ndarray
    provenance: dict

    @classmethod
    def from_points(cls, points, provenance: dict | None = None) -> "NodeSet":
        pts = np.asarray(points, dtype=float).copy()
        if pts.ndim != 1 or len(pts) < 2:
            raise ValueError("need at least two points")
        if not np.all(np.diff(pts) > 0):
            raise ValueError("points must be strictly increasing")
        if pts[0] != -1.0 or pts[-1] != 1.0:
            raise ValueError("endpoints must be exactly -1 and 1")
        angles = np.arccos(-np.clip(pts, -1, 1))
        angles[0], angles[-1] = 0.0, math.pi
        pts.flags.writeable = False
        angles.flags.writeable = False
        return cls(pts, angles, provenance or {"kind": "explicit"})

    @property
    def M(self) -> int:
        return len(self.points) - 1

    def is_symmetric(self, tol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self.points + self.points[::-1])) <= tol)

    def bracketing_interval(self, x: float) -> int:
        """Index m with x_m <= x <= x_{m+1}."""
        if not (-1.0 <= x <= 1.0):
            raise DomainError("x outside [-1, 1]")
        m = int(np.searchsorted(self.points, x, side="right")) - 1
        return min(max(m, 0), self.M - 1)

    def to_csv(self, path) -> None:
        with open(path, "w") as fh:
            fh.write("m,x,theta\n")
            for m, (x, th) in enumerate(zip(self.points, self.angles)):
                fh.write(f"{m},{float(x)!r},{float(th)!r}\n")

    def to_json(self, path) -> None:
        payload = {
            "provenance": self.provenance,
            "M": self.M,
            "points": self.points.tolist(),
            "angles": self.angles.tolist(),
        }
        with open(path, "w") as fh:
            json.dump(payload, fh, indent=2)


def generate_nodes(w: WeightSpec, M: int) -> NodeSet:
    """Nodes equidistributed with respect to w: cdf(x_m) = m/M, endpoints pinned."""
    if M < 1:
        raise ValueError("M must be >= 1")
    targets = np.arange(1, M) / M
    if w.g is None:
        interior = 2 * betaincinv(w.beta + 1, w.alpha + 1, targets) - 1
    else:
        interior = np.array([_invert_cdf(w, t) for t in targets])
    pts = np.concatenate([[-1.0], interior, [1.0]])
    if w.alpha == w.beta:
        # symmetric weight: enforce x_m = -x_{M-m} exactly
        pts = 0.5 * (pts - pts[::-1])
        pts[0], pts[-1] = -1.0, 1.0
    if not np.all(np.diff(pts) > 0):
        raise RuntimeError("CDF inversion produced non-monotone nodes")
    prov = {"kind": "weight", "alpha": w.alpha, "beta": w.beta, "M": M}
    return NodeSet.from_points(pts, prov)
