"""Scripted experiment sweeps exported as deterministic CSV data files.

Every experiment is a pure function of its parameter block; parameters
live in a single TOML config whose hash is recorded next to each export
so downstream figure scripts can reference the exact run.
"""

from __future__ import annotations

import hashlib
import json
import math
import os

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

import numpy as np

from . import bounds as bounds_mod
from . import leastsq as leastsq_mod
from .polycore import max_on_interval
from .remez import compute_B, solve_subinterval
from .weights import cdf, generate_nodes, preset

__all__ = [
    "DEFAULT_CONFIG_TEXT",
    "load_config",
    "config_hash",
    "growth_sweep",
    "scaling_fit",
    "contour_grid",
    "remez_convergence",
    "lsq_stability_sweep",
    "points_export",
    "run_experiment",
    "write_csv",
]

DEFAULT_CONFIG_TEXT = """\
# experiment parameter blocks; hashes of this text tag every export

[points]
presets = ["C2", "UC", "C1", "OC"]
M = 10
cdf_samples = 401

[growth]
presets = ["C2", "U", "UC"]
ratio = 0.5
M_list = [8, 12, 16, 20, 24, 28, 32, 36, 40]

[growth_rates]
presets = ["C2", "UC", "OC"]
ratios = [1.0, 0.6666666666666666, 0.5]
M_list = [8, 12, 16, 20, 24, 28, 32]

[scaling]
presets = ["U", "C2", "UC", "OC"]
N_list = [8, 11, 16, 22, 30, 40]
threshold = 10.0

[contour]
presets = ["U", "UC", "OC"]
M_min = 2
M_max = 48
M_step = 2
N_min = 0
N_max = 32
N_step = 2

[remez]
preset = "OC"
M = 500
N = 300
m = 200

[lsq]
presets = ["U", "C2"]
M_list = [64, 144, 256, 400]
c = 3.0
"""


def load_config(path: str | None = None) -> tuple[dict, str]:
    """Parse the experiment config; returns (config, raw text)."""
    if path is None:
        text = DEFAULT_CONFIG_TEXT
    else:
        with open(path) as fh:
            text = fh.read()
    return tomllib.loads(text), text


def config_hash(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def write_csv(path, header: list[str], rows: list[tuple]) -> None:
    with open(path, "w") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(
                ",".join(
                    ""
                    if v is None
                    else repr(float(v))
                    if isinstance(v, (float, np.floating))
                    else str(v)
                    for v in row
                )
            )
            fh.write("\n")


def _write_meta(out_dir, name: str, params: dict, cfg_text: str) -> None:
    meta = {"experiment": name, "params": params, "config_hash": config_hash(cfg_text)}
    with open(os.path.join(out_dir, f"{name}.meta.json"), "w") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)


def _sup_norm(poly) -> float:
    _, v = max_on_interval(lambda xs: np.abs(poly(xs)), -1.0, 1.0, grid=1024, refine=5)
    return v


LN10 = math.log(10)


def growth_sweep(preset_name: str, ratio: float, M_list) -> list[tuple]:
    """Rows (M, N, log10_B, log10_Q, log10_witness, status) for N = ratio*M."""
    w = preset(preset_name)
    rows = []
    for M in sorted(M_list):
        N = max(1, int(round(ratio * M)))
        if N > M:
            continue
        nodes = generate_nodes(w, M)
        rep = bounds_mod.bound_report(nodes, N)
        try:
            res = compute_B(nodes, N)
            log10_B = res.log10_B
            status = "ok" if not res.partial else "partial"
        except Exception:
            log10_B, status = None, "error"
        log10_wit = None
        side = "minus" if rep.K_minus >= rep.K_plus else "plus"
        if max(rep.K_minus, rep.K_plus) >= 2:
            wpoly, _ = bounds_mod.witness_polynomial(nodes, N, side)
            log10_wit = math.log10(_sup_norm(wpoly))
        rows.append((M, N, log10_B, rep.log_lower / LN10, log10_wit, status))
    return rows


def scaling_fit(preset_name: str, N_list, threshold: float = 10.0):
    """Smallest M with bounded growth per N, plus the log-log slope and the
    linear-law coefficient.  Returns (rows, fit dict)."""
    from .remez import smallest_M_for_bounded_B

    w = preset(preset_name)
    rows = []
    for N in sorted(N_list):
        M_star = smallest_M_for_bounded_B(w, N, threshold=threshold)
        rows.append((N, M_star))
    Ns = np.array([r[0] for r in rows], dtype=float)
    Ms = np.array([r[1] for r in rows], dtype=float)
    slope, intercept = np.polyfit(np.log(Ns), np.log(Ms), 1)
    linear_coef = float(np.sum(Ms * Ns) / np.sum(Ns * Ns))
    fit = {
        "preset": preset_name,
        "loglog_slope": float(slope),
        "loglog_intercept": float(intercept),
        "linear_coef": linear_coef,
    }
    return rows, fit


SATURATION_LOG10 = 13.0


def contour_grid(preset_name: str, M_range, N_range) -> list[tuple]:
    """Rows (M, N, log10_B, status); values above 10^13 saturate."""
    w = preset(preset_name)
    rows = []
    for M in sorted(M_range):
        nodes = generate_nodes(w, M)
        for N in sorted(N_range):
            if N == 0:
                rows.append((M, 0, 0.0, "ok"))
                continue
            if N > M:
                rows.append((M, N, None, "skipped"))
                continue
            try:
                res = compute_B(nodes, N, max_cap=10.0**SATURATION_LOG10)
                if res.capped or res.log10_B > SATURATION_LOG10:
                    rows.append((M, N, SATURATION_LOG10, "saturated"))
                else:
                    rows.append((M, N, res.log10_B, "ok"))
            except Exception:
                rows.append((M, N, None, "error"))
    return rows


def remez_convergence(preset_name: str = "OC", M: int = 500, N: int = 300, m: int = 200):
    """Per-iteration probe values for both exchange variants on one
    subinterval.  Returns (rows, info) with rows (variant, iteration, lvalue)."""
    w = preset(preset_name)
    nodes = generate_nodes(w, M)
    rows = []
    info = {}
    for variant in ("first", "second"):
        poly, _, trace = solve_subinterval(nodes, N, m, variant=variant)
        for it, lv in enumerate(trace.lvalues, start=1):
            rows.append((variant, it, lv))
        _, local = max_on_interval(poly, nodes.points[m], nodes.points[m + 1])
        info[variant] = {"iterations": trace.iterations, "local_max": local}
    return rows, info


def lsq_stability_sweep(preset_name: str, M_list, c: float = 3.0) -> list[tuple]:
    """Rows (M, N, kappa, sup_error_exp, sup_error_runge) with the stable
    degree N chosen from the weight's clustering exponent."""
    w = preset(preset_name)
    probe = np.linspace(-1.0, 1.0, 4001)
    f_exp = np.exp
    f_runge = lambda x: 1.0 / (1.0 + 25.0 * x * x)
    rows = []
    for M in sorted(M_list):
        N = leastsq_mod.stable_degree(w, M, c=c)
        nodes = generate_nodes(w, M)
        kappa = leastsq_mod.condition_number_inf(nodes, N).kappa_inf
        errs = []
        for f in (f_exp, f_runge):
            fitres = leastsq_mod.fit(nodes, N, f(nodes.points))
            errs.append(float(np.max(np.abs(fitres(probe) - f(probe)))))
        rows.append((M, N, kappa, errs[0], errs[1]))
    return rows


def points_export(out_dir: str, presets, M: int, cdf_samples: int, cfg_text: str) -> None:
    xs = np.linspace(-1.0, 1.0, cdf_samples)
    for name in presets:
        w = preset(name)
        nodes = generate_nodes(w, M)
        nodes.to_csv(os.path.join(out_dir, f"nodes_{name}.csv"))
        nodes.to_json(os.path.join(out_dir, f"nodes_{name}.json"))
        write_csv(
            os.path.join(out_dir, f"cdf_{name}.csv"),
            ["x", "F"],
            [(float(x), float(v)) for x, v in zip(xs, cdf(w, xs))],
        )
    _write_meta(out_dir, "points", {"presets": list(presets), "M": M}, cfg_text)


def run_experiment(name: str, out_dir: str, config_path: str | None = None) -> None:
    """Run one named experiment block and write its CSV exports."""
    cfg, text = load_config(config_path)
    os.makedirs(out_dir, exist_ok=True)
    if name == "points":
        blk = cfg["points"]
        points_export(out_dir, blk["presets"], blk["M"], blk["cdf_samples"], text)
    elif name == "growth":
        blk = cfg["growth"]
        for pre in blk["presets"]:
            rows = growth_sweep(pre, blk["ratio"], blk["M_list"])
            write_csv(
                os.path.join(out_dir, f"growth_{pre}.csv"),
                ["M", "N", "log10_B", "log10_Q", "log10_witness", "status"],
                rows,
            )
        _write_meta(out_dir, "growth", blk, text)
    elif name == "growth_rates":
        blk = cfg["growth_rates"]
        for pre in blk["presets"]:
            for ratio in blk["ratios"]:
                tag = f"{round(ratio * 12):02d}"  # 12ths avoid float names
                rows = growth_sweep(pre, ratio, blk["M_list"])
                write_csv(
                    os.path.join(out_dir, f"growth_rates_{pre}_{tag}.csv"),
                    ["M", "N", "log10_B", "log10_Q", "log10_witness", "status"],
                    rows,
                )
        _write_meta(out_dir, "growth_rates", blk, text)
    elif name == "scaling":
        blk = cfg["scaling"]
        fits = []
        for pre in blk["presets"]:
            rows, fit = scaling_fit(pre, blk["N_list"], blk["threshold"])
            write_csv(os.path.join(out_dir, f"scaling_{pre}.csv"), ["N", "M_star"], rows)
            fits.append(fit)
        with open(os.path.join(out_dir, "scaling_fits.json"), "w") as fh:
            json.dump(fits, fh, indent=2, sort_keys=True)
        _write_meta(out_dir, "scaling", blk, text)
    elif name == "contour":
        blk = cfg["contour"]
        Ms = range(blk["M_min"], blk["M_max"] + 1, blk["M_step"])
        Ns = range(blk["N_min"], blk["N_max"] + 1, blk["N_step"])
        for pre in blk["presets"]:
            rows = contour_grid(pre, Ms, Ns)
            write_csv(
                os.path.join(out_dir, f"contour_{pre}.csv"),
                ["M", "N", "log10_B", "status"],
                rows,
            )
        _write_meta(out_dir, "contour", blk, text)
    elif name == "remez":
        blk = cfg["remez"]
        rows, info = remez_convergence(blk["preset"], blk["M"], blk["N"], blk["m"])
        write_csv(
            os.path.join(out_dir, "remez_convergence.csv"),
            ["variant", "iteration", "lvalue"],
            rows,
        )
        with open(os.path.join(out_dir, "remez_convergence.json"), "w") as fh:
            json.dump(info, fh, indent=2, sort_keys=True)
        _write_meta(out_dir, "remez", blk, text)
    elif name == "lsq":
        blk = cfg["lsq"]
        for pre in blk["presets"]:
            rows = lsq_stability_sweep(pre, blk["M_list"], blk["c"])
            write_csv(
                os.path.join(out_dir, f"lsq_{pre}.csv"),
                ["M", "N", "kappa", "sup_error_exp", "sup_error_runge"],
                rows,
            )
        _write_meta(out_dir, "lsq", blk, text)
    else:
        raise ValueError(f"unknown experiment {name!r}")
