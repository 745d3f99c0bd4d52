"""Exchange algorithms for the maximal polynomial bounded on a grid.

B(M, N, x) on a subinterval (x_m, x_{m+1}) equals the minimum over all
(N+1)-point subsets Y of the grid containing the bracketing pair of the
Lebesgue function L_Y(x).  The solvers below walk from an initial Y to
the minimizer by sign-matched point exchanges; each exchange strictly
decreases L_Y(x) for x in the open subinterval, so termination is
guaranteed.  The single-exchange variant swaps only the worst violator
per iteration; the multi-exchange variant swaps one violator per
reference subinterval.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .polycore import (
    BaryPoly,
    barycentric_weights,
    chebyshev_second_kind_points,
    max_on_interval,
)
from .weights import NodeSet, WeightSpec, generate_nodes

__all__ = [
    "ReferenceSet",
    "RemezTrace",
    "IntervalResult",
    "MaximalResult",
    "RemezError",
    "ConditioningError",
    "solve_subinterval",
    "compute_B_point",
    "compute_B",
    "smallest_M_for_bounded_B",
]

TOL_EXCHANGE = 1e-9
MAX_ITERS = 10000
LEBESGUE_LIMIT = 1e15


class RemezError(RuntimeError):
    """Exchange iteration failed to converge."""


class ConditioningError(RemezError):
    """Reference set too ill-conditioned to continue in double precision."""


@dataclass(frozen=True)
class ReferenceSet:
    """N+1 sorted grid indices containing the anchor pair (m, m+1)."""

    indices: np.ndarray
    anchor: int
    n_anchor: int

    @classmethod
    def from_indices(cls, indices, anchor: int) -> "ReferenceSet":
        idx = np.asarray(indices, dtype=int)
        if idx.ndim != 1 or np.any(np.diff(idx) <= 0):
            raise ValueError("indices must be strictly increasing")
        pos = np.searchsorted(idx, anchor)
        if pos >= len(idx) or idx[pos] != anchor or idx[pos + 1] != anchor + 1:
            raise ValueError("reference set must contain the anchor pair")
        idx.flags.writeable = False
        return cls(idx, anchor, int(pos))


@dataclass
class RemezTrace:
    iterations: int = 0
    lvalues: list = field(default_factory=list)
    exchanges: list = field(default_factory=list)
    converged: bool = False
    failure_reason: str | None = None


@dataclass(frozen=True)
class IntervalResult:
    m: int
    local_max: float
    argmax_x: float
    reference: ReferenceSet | None
    trace: RemezTrace | None
    mirrored: bool = False


@dataclass(frozen=True)
class MaximalResult:
    B: float
    argmax_x: float
    argmax_interval: int
    per_interval: list
    polynomial: BaryPoly
    partial: bool = False
    capped: bool = False

    @property
    def log10_B(self) -> float:
        return math.log10(self.B)

    def to_json_dict(self) -> dict:
        return {
            "B": self.B,
            "log10_B": self.log10_B,
            "argmax_x": self.argmax_x,
            "argmax_interval": self.argmax_interval,
            "partial": self.partial,
            "capped": self.capped,
            "per_interval": [
                {"m": r.m, "local_max": r.local_max, "argmax_x": r.argmax_x}
                for r in self.per_interval
            ],
        }

    def to_json(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json_dict(), fh, indent=2)

    def per_interval_csv(self, path) -> None:
        with open(path, "w") as fh:
            fh.write("m,local_max,iterations\n")
            for r in self.per_interval:
                iters = r.trace.iterations if r.trace is not None else 0
                fh.write(f"{r.m},{float(r.local_max)!r},{iters}\n")


def _alternating_values(size: int, n_anchor: int) -> np.ndarray:
    k = np.arange(size)
    return np.where(
        k <= n_anchor, (-1.0) ** (n_anchor - k), (-1.0) ** (n_anchor + 1 - k)
    )


def _initial_reference(nodes: NodeSet, N: int, m: int, rng=None) -> ReferenceSet:
    """Grid points nearest the second-kind Chebyshev points, forced to
    contain the anchor pair; optional random choice for experiments."""
    M = nodes.M
    if rng is not None:
        others = [j for j in range(M + 1) if j not in (m, m + 1)]
        pick = rng.choice(len(others), size=N - 1, replace=False)
        idx = sorted([others[int(i)] for i in pick] + [m, m + 1])
        return ReferenceSet.from_indices(idx, m)
    targets = chebyshev_second_kind_points(N)
    x = nodes.points
    pos = np.searchsorted(x, targets)
    cand = []
    for t, pnear in zip(targets, pos):
        lo = max(int(pnear) - 1, 0)
        hi = min(int(pnear), M)
        cand.append(lo if abs(x[lo] - t) <= abs(x[hi] - t) else hi)
    chosen = set(cand)
    chosen.update((m, m + 1))
    # top up with unused indices nearest the anchor until the size is N+1
    j = 0
    order = np.argsort(np.abs(np.arange(M + 1) - (m + 0.5)))
    while len(chosen) < N + 1:
        chosen.add(int(order[j]))
        j += 1
    # trim non-anchor members most redundant w.r.t. their neighbours
    while len(chosen) > N + 1:
        idx = np.array(sorted(chosen))
        gaps = np.empty(len(idx))
        for i, v in enumerate(idx):
            left = x[idx[i - 1]] if i > 0 else -1.0
            right = x[idx[i + 1]] if i < len(idx) - 1 else 1.0
            gaps[i] = right - left
        for i in np.argsort(gaps):
            v = int(idx[i])
            if v not in (m, m + 1):
                chosen.remove(v)
                break
    return ReferenceSet.from_indices(sorted(chosen), m)


def _grid_eval(nodes: NodeSet, ref: ReferenceSet, vals: np.ndarray):
    """Evaluate the alternating polynomial and the Lebesgue function of the
    reference set at every grid point.  Member points get exact values."""
    x = nodes.points
    y = x[ref.indices]
    w = barycentric_weights(y)
    d = x[:, None] - y[None, :]
    member = np.zeros(len(x), dtype=bool)
    member[ref.indices] = True
    d[member] = 1.0  # silenced; overwritten below
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = w / d
        den = np.sum(terms, axis=1)
        p_all = (terms @ vals) / den
        leb_all = np.sum(np.abs(terms), axis=1) / np.abs(den)
    p_all[ref.indices] = vals
    leb_all[ref.indices] = 1.0
    return p_all, leb_all, BaryPoly(y, vals, w)


def _exchange_position(y: np.ndarray, vals: np.ndarray, xj: float, pj: float) -> int:
    """Reference position to replace for a violating grid point, following
    the sign-matched exchange rule with its two endpoint cases."""
    n_ref = len(y) - 1
    s = 1.0 if pj > 0 else -1.0
    if xj < y[0]:
        return 0 if s == vals[0] else n_ref
    if xj > y[-1]:
        return n_ref if s == vals[-1] else 0
    k = int(np.searchsorted(y, xj)) - 1
    return k if s == vals[k] else k + 1


def solve_subinterval(
    nodes: NodeSet,
    N: int,
    m: int,
    variant: str = "second",
    init: ReferenceSet | None = None,
    tol: float = TOL_EXCHANGE,
    max_iters: int = MAX_ITERS,
):
    """Maximal polynomial of degree N on the subinterval [x_m, x_{m+1}].

    Returns (BaryPoly, ReferenceSet, RemezTrace); the polynomial equals
    B(M, N, x) on the subinterval and satisfies |p(x_j)| <= 1 + tol on
    the whole grid.
    """
    M = nodes.M
    if not (1 <= N <= M):
        raise ValueError("need 1 <= N <= M")
    if not (0 <= m <= M - 1):
        raise ValueError("interval index out of range")
    if variant not in ("first", "second"):
        raise ValueError("variant must be 'first' or 'second'")
    x = nodes.points
    if N == M:
        ref = ReferenceSet.from_indices(np.arange(M + 1), m)
    elif init is not None:
        ref = init
    else:
        ref = _initial_reference(nodes, N, m)
    probe = 0.5 * (x[m] + x[m + 1])
    trace = RemezTrace()
    for it in range(max_iters):
        vals = _alternating_values(N + 1, ref.n_anchor)
        p_all, leb_all, poly = _grid_eval(nodes, ref, vals)
        if not np.all(np.isfinite(p_all)) or np.max(leb_all) > LEBESGUE_LIMIT:
            trace.failure_reason = "reference set too ill-conditioned"
            raise ConditioningError(
                f"grid Lebesgue function of reference set exceeds {LEBESGUE_LIMIT:g} "
                f"(interval {m}, iteration {it})"
            )
        trace.iterations = it + 1
        trace.lvalues.append(float(poly(probe)))
        absp = np.abs(p_all)
        if np.max(absp) <= 1.0 + tol:
            trace.converged = True
            return poly, ref, trace
        y = x[ref.indices]
        if variant == "first":
            j = int(np.argmax(absp))  # argmax takes the smallest maximizer
            picks = [j]
        else:
            viol = np.flatnonzero(absp > 1.0 + tol)
            # one candidate per reference subinterval: keep each bucket's worst
            bucket_best: dict[int, int] = {}
            for j in viol:
                b = int(np.searchsorted(y, x[j]))  # 0 = left of y_0, N+1 = right
                cur = bucket_best.get(b)
                if cur is None or absp[j] > absp[cur]:
                    bucket_best[b] = int(j)
            picks = sorted(bucket_best.values(), key=lambda j: -absp[j])
        target_map: dict[int, int] = {}
        for j in picks:
            pos = _exchange_position(y, vals, x[j], p_all[j])
            if pos in (ref.n_anchor, ref.n_anchor + 1):
                continue  # never remove the anchor pair (degenerate numerics)
            if pos not in target_map:
                target_map[pos] = j
        if not target_map:
            trace.failure_reason = "no admissible exchange"
            raise RemezError(f"exchange stalled on interval {m} at iteration {it}")
        new_idx = np.array(ref.indices)
        for pos, j in target_map.items():
            new_idx[pos] = j
        new_idx = np.unique(new_idx)
        if len(new_idx) != N + 1:
            # simultaneous exchanges collided; fall back to the worst violator
            pos = _exchange_position(y, vals, x[picks[0]], p_all[picks[0]])
            new_idx = np.array(ref.indices)
            new_idx[pos] = picks[0]
            new_idx = np.unique(new_idx)
            if len(new_idx) != N + 1:
                trace.failure_reason = "exchange produced duplicate indices"
                raise RemezError(f"degenerate exchange on interval {m}")
        trace.exchanges.append(
            [(int(ref.indices[pos]), int(j)) for pos, j in sorted(target_map.items())]
        )
        ref = ReferenceSet.from_indices(new_idx, m)
    trace.failure_reason = f"not converged after {max_iters} iterations"
    raise RemezError(trace.failure_reason)


def compute_B_point(nodes: NodeSet, N: int, x: float, variant: str = "second") -> float:
    """Pointwise maximal growth B(M, N, x); equals 1 at grid points."""
    if not (-1.0 <= x <= 1.0):
        raise ValueError("x outside [-1, 1]")
    if N == 0:
        return 1.0
    if np.min(np.abs(nodes.points - x)) < 1e-14:
        return 1.0
    m = nodes.bracketing_interval(x)
    poly, _, _ = solve_subinterval(nodes, N, m, variant=variant)
    return float(poly(x))


def _mirror_poly(p: BaryPoly) -> BaryPoly:
    return BaryPoly(-p.nodes[::-1].copy(), p.values[::-1].copy(), p.weights[::-1].copy())


def _constant_result(nodes: NodeSet) -> MaximalResult:
    poly = BaryPoly.interpolate(np.array([-1.0, 1.0]), np.array([1.0, 1.0]))
    return MaximalResult(
        B=1.0,
        argmax_x=float(nodes.points[0]),
        argmax_interval=0,
        per_interval=[],
        polynomial=poly,
    )


def _reanchor(ref: ReferenceSet, m: int, M: int) -> ReferenceSet | None:
    """Seed interval m from a reference converged on interval m-1."""
    idx = set(int(i) for i in ref.indices)
    idx.update((m, m + 1))
    while len(idx) > len(ref.indices):
        if m - 1 in idx and m - 1 not in (m, m + 1):
            idx.remove(m - 1)
            continue
        # drop the non-anchor member farthest from the new anchor midpoint
        far = max(
            (i for i in idx if i not in (m, m + 1)),
            key=lambda i: abs(i - (m + 0.5)),
            default=None,
        )
        if far is None:
            return None
        idx.remove(far)
    try:
        return ReferenceSet.from_indices(sorted(idx), m)
    except ValueError:
        return None


def compute_B(
    nodes: NodeSet,
    N: int,
    variant: str = "second",
    symmetry: bool = True,
    warm_start: bool = True,
    max_cap: float | None = None,
    tol: float = TOL_EXCHANGE,
) -> MaximalResult:
    """Global maximal growth B(M, N) with the attaining polynomial.

    ``symmetry`` halves the work on symmetric node sets by mirroring;
    ``warm_start`` seeds each subinterval with the previous reference;
    ``max_cap`` stops early once the running maximum exceeds the cap
    (the result is then marked capped and B is a lower bound).
    """
    M = nodes.M
    if N == 0:
        return _constant_result(nodes)
    if not (1 <= N <= M):
        raise ValueError("need 1 <= N <= M")
    mirror = symmetry and nodes.is_symmetric()
    intervals = range((M + 1) // 2 if mirror else M)
    x = nodes.points
    results: list[IntervalResult] = []
    failures = 0
    best = (-math.inf, 0.0, -1, None)  # value, argx, interval, poly
    prev_ref: ReferenceSet | None = None
    capped = False
    for m in intervals:
        init = None
        if warm_start and prev_ref is not None:
            init = _reanchor(prev_ref, m, M)
        try:
            poly, ref, trace = solve_subinterval(
                nodes, N, m, variant=variant, init=init, tol=tol
            )
        except RemezError:
            if init is not None:
                # retry cold: a warm-started reference can be degenerate
                try:
                    poly, ref, trace = solve_subinterval(
                        nodes, N, m, variant=variant, tol=tol
                    )
                except RemezError:
                    failures += 1
                    continue
            else:
                failures += 1
                continue
        prev_ref = ref
        argx, local = max_on_interval(poly, x[m], x[m + 1])
        results.append(IntervalResult(m, local, argx, ref, trace))
        if local > best[0]:
            best = (local, argx, m, poly)
        if mirror:
            mm = M - 1 - m
            if mm != m:
                results.append(IntervalResult(mm, local, -argx, None, None, mirrored=True))
                if local > best[0] and mm < best[2]:
                    best = (local, -argx, mm, _mirror_poly(poly))
        if max_cap is not None and best[0] > max_cap:
            capped = True
            break
    if best[3] is None:
        raise RemezError("every subinterval solve failed")
    results.sort(key=lambda r: r.m)
    return MaximalResult(
        B=best[0],
        argmax_x=best[1],
        argmax_interval=best[2],
        per_interval=results,
        polynomial=best[3],
        partial=failures > 0,
        capped=capped,
    )


def smallest_M_for_bounded_B(
    w: WeightSpec,
    N: int,
    threshold: float = 10.0,
    variant: str = "second",
    M_cap: int = 200000,
) -> int:
    """Smallest M >= N with B(M, N) <= threshold for nodes drawn from w.

    Uses exponential bracketing plus bisection, assuming B is nonincreasing
    in M for nodes regenerated from one weight; both bracket endpoints are
    verified and a short linear scan repairs any local violation.
    """
    from .bounds import bound_report

    if N < 1:
        raise ValueError("N must be >= 1")
    log_thr = math.log(threshold)

    def bounded(M: int) -> bool:
        nodes = generate_nodes(w, M)
        rep = bound_report(nodes, N)
        if rep.upper is not None and rep.upper <= threshold:
            return True
        if rep.log_lower > log_thr:
            return False
        res = compute_B(nodes, N, variant=variant, max_cap=threshold)
        return not res.capped and res.B <= threshold

    lo, hi = None, None
    M = max(N, 1)
    while M <= M_cap:
        if bounded(M):
            hi = M
            break
        lo = M
        M = max(M + 1, int(math.ceil(M * 1.6)))
    if hi is None:
        raise RemezError(f"no M <= {M_cap} with B(M, N) <= {threshold}")
    if lo is None:
        return hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if bounded(mid):
            hi = mid
        else:
            lo = mid
    # verify the boundary; repair by linear scan if monotonicity was violated
    while hi > N and bounded(hi - 1):
        hi -= 1
    return hi
