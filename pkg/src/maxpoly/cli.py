"""Command-line interface.

Exit codes: 0 success, 2 invalid arguments, 3 numerical failure (a JSON
diagnostic is printed to stderr in that case).
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import bounds as bounds_mod
from . import experiments as exp_mod
from . import leastsq as leastsq_mod
from . import mockcheb as mockcheb_mod
from .polycore import lebesgue_constant
from .remez import RemezError, compute_B, compute_B_point
from .weights import WeightSpec, generate_nodes, preset

__all__ = ["main"]


def _weight_from_args(args) -> WeightSpec:
    if args.preset:
        return preset(args.preset)
    if args.alpha is None or args.beta is None:
        raise SystemExit(2)
    return WeightSpec(alpha=args.alpha, beta=args.beta)


def _add_weight_args(p, need_M=True, need_N=False):
    p.add_argument("--preset", choices=["U", "C1", "C2", "UC", "OC"])
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    if need_M:
        p.add_argument("--M", type=int, required=True)
    if need_N:
        p.add_argument("--N", type=int, required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--threads", type=int, default=1)


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_nodes(args) -> None:
    w = _weight_from_args(args)
    nodes = generate_nodes(w, args.M)
    if args.out and args.format == "csv":
        nodes.to_csv(args.out)
    elif args.out:
        nodes.to_json(args.out)
    else:
        for m, (x, th) in enumerate(zip(nodes.points, nodes.angles)):
            print(f"{m},{float(x)!r},{float(th)!r}")


def _poly_samples(poly, n: int = 801):
    xs = np.linspace(-1.0, 1.0, n)
    return [[float(x), float(v)] for x, v in zip(xs, poly(xs))]


def _cmd_bmn(args) -> None:
    w = _weight_from_args(args)
    nodes = generate_nodes(w, args.M)
    res = compute_B(nodes, args.N, variant=args.variant)
    if args.format == "json":
        payload = res.to_json_dict()
        payload["poly_samples"] = _poly_samples(res.polynomial)
        payload["grid"] = [
            [float(x), float(res.polynomial(x))] for x in nodes.points
        ]
        _emit(args, json.dumps(payload, indent=2))
    else:
        lines = ["m,local_max,iterations"]
        for r in res.per_interval:
            iters = r.trace.iterations if r.trace is not None else 0
            lines.append(f"{r.m},{float(r.local_max)!r},{iters}")
        _emit(args, "\n".join(lines) + "\n")
        print(f"B = {res.B!r} (log10 {res.log10_B!r}) at x = {res.argmax_x!r}", file=sys.stderr)


def _cmd_bmnx(args) -> None:
    w = _weight_from_args(args)
    nodes = generate_nodes(w, args.M)
    val = compute_B_point(nodes, args.N, args.x, variant=args.variant)
    _emit(args, json.dumps({"x": args.x, "B": val}, indent=2) if args.format == "json" else f"{val!r}\n")


def _cmd_lebesgue(args) -> None:
    w = _weight_from_args(args)
    nodes = generate_nodes(w, args.M)
    lam = lebesgue_constant(nodes.points)
    _emit(args, json.dumps({"M": args.M, "lebesgue_constant": lam}, indent=2) if args.format == "json" else f"{lam!r}\n")


def _cmd_bounds(args) -> None:
    w = _weight_from_args(args)
    nodes = generate_nodes(w, args.M)
    rep = bounds_mod.bound_report(nodes, args.N)
    _emit(args, json.dumps(rep.to_json_dict(), indent=2))


def _cmd_witness(args) -> None:
    w = _weight_from_args(args)
    nodes = generate_nodes(w, args.M)
    side = args.side
    K = bounds_mod.find_K(nodes, args.N, side)
    poly, achieved = bounds_mod.witness_polynomial(nodes, args.N, side)
    logq = bounds_mod.log_Q(nodes, args.N, K, side)
    payload = {
        "M": args.M,
        "N": args.N,
        "side": side,
        "K": K,
        "log10_Q": logq / math.log(10),
        "achieved": achieved,
        "poly_samples": _poly_samples(poly, 2001),
        "grid": [[float(x), float(poly(x))] for x in nodes.points],
    }
    _emit(args, json.dumps(payload, indent=2))


def _cmd_mockcheb(args) -> None:
    w = _weight_from_args(args)
    nodes = generate_nodes(w, args.M)
    result = mockcheb_mod.mock_chebyshev_subset(nodes, args.N)
    if result is None:
        _emit(args, "n,x_star,z_left,z_right\n")
        print("no subset: N*zeta >= pi", file=sys.stderr)
        return
    points, _ = result
    from .polycore import chebyshev_second_kind_points

    z = chebyshev_second_kind_points(args.N)
    lines = ["n,x_star,z_left,z_right"]
    for n, p in enumerate(points, start=1):
        lines.append(f"{n},{float(p)!r},{float(z[n - 1])!r},{float(z[n])!r}")
    _emit(args, "\n".join(lines) + "\n")


def _cmd_lsq(args) -> None:
    w = _weight_from_args(args)
    nodes = generate_nodes(w, args.M)
    fns = {"exp": np.exp, "runge": lambda x: 1.0 / (1.0 + 25.0 * x * x)}
    f = fns[args.fn]
    fitres = leastsq_mod.fit(nodes, args.N, f(nodes.points))
    kappa = leastsq_mod.condition_number_inf(nodes, args.N).kappa_inf
    xs = np.linspace(-1, 1, 2001)
    payload = {
        "M": args.M,
        "N": args.N,
        "fn": args.fn,
        "kappa_inf": kappa,
        "residual_discrete": fitres.residual_discrete,
        "sup_error": float(np.max(np.abs(fitres(xs) - f(xs)))),
        "coeffs": fitres.coeffs.tolist(),
    }
    _emit(args, json.dumps(payload, indent=2))


def _cmd_exp(args) -> None:
    exp_mod.run_experiment(args.name, args.out or ".", args.config)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="maxpoly", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nodes", help="generate an equidistributed node set")
    _add_weight_args(p)
    p.set_defaults(func=_cmd_nodes)

    p = sub.add_parser("bmn", help="maximal growth B(M,N) via exchange algorithm")
    _add_weight_args(p, need_N=True)
    p.add_argument("--variant", choices=["first", "second"], default="second")
    p.set_defaults(func=_cmd_bmn)

    p = sub.add_parser("bmnx", help="pointwise maximal growth B(M,N,x)")
    _add_weight_args(p, need_N=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--variant", choices=["first", "second"], default="second")
    p.set_defaults(func=_cmd_bmnx)

    p = sub.add_parser("lebesgue", help="Lebesgue constant of the node set")
    _add_weight_args(p)
    p.set_defaults(func=_cmd_lebesgue)

    p = sub.add_parser("bounds", help="lower/upper bracket report for B(M,N)")
    _add_weight_args(p, need_N=True)
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("witness", help="explicit lower-bound witness polynomial")
    _add_weight_args(p, need_N=True)
    p.add_argument("--side", choices=["minus", "plus"], default="minus")
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("mockcheb", help="interlacing mock-Chebyshev subset")
    _add_weight_args(p, need_N=True)
    p.set_defaults(func=_cmd_mockcheb)

    p = sub.add_parser("lsq", help="least-squares fit with condition estimate")
    _add_weight_args(p, need_N=True)
    p.add_argument("--fn", choices=["exp", "runge"], default="exp")
    p.set_defaults(func=_cmd_lsq)

    p = sub.add_parser("exp", help="run a named experiment sweep")
    p.add_argument("name", choices=["points", "growth", "growth_rates", "scaling", "contour", "remez", "lsq"])
    p.add_argument("--out", default=".")
    p.add_argument("--config", default=None)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=_cmd_exp)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        args.func(args)
    except (ValueError, FileNotFoundError) as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except (RemezError, ArithmeticError, RuntimeError) as exc:
        diag = {"error": type(exc).__name__, "message": str(exc)}
        print(json.dumps(diag), file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
