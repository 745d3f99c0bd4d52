"""Render figures from exported data files.

Usage:
    maxpoly-figures <figure> --data <dir> --out <file>
    maxpoly-figures all --data <dir> --out-dir <dir>

Every renderer takes a data directory and returns a matplotlib Figure; the
numbers are read from the exports as-is, never recomputed.
"""

from __future__ import annotations

import argparse
import glob
import os
import sys

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .io import SchemaError, find_one, read_csv, read_json

POINT_PRESET_ORDER = ["C2", "UC", "C1", "OC"]

# reference scaling-law exponents per preset (2*(gamma+1)); OC is linear
SCALING_EXPONENTS = {"U": 2.0, "C2": 3.0, "UC": 1.5}
OC_LINEAR_COEF = 1.65


def _presets_with(data_dir: str, pattern: str) -> list[str]:
    names = []
    for path in sorted(glob.glob(os.path.join(data_dir, pattern))):
        base = os.path.basename(path)
        names.append(base.split("_", 1)[1].rsplit(".", 1)[0])
    return names


def render_points(data_dir: str):
    presets = [p for p in POINT_PRESET_ORDER if os.path.exists(os.path.join(data_dir, f"nodes_{p}.csv"))]
    if not presets:
        presets = _presets_with(data_dir, "nodes_*.csv")
    if not presets:
        raise FileNotFoundError(f"no nodes_*.csv in {data_dir}")
    ncols = 2 if len(presets) > 1 else 1
    nrows = (len(presets) + ncols - 1) // ncols
    fig, axes = plt.subplots(nrows, ncols, figsize=(4.2 * ncols, 3.2 * nrows), squeeze=False)
    for ax, name in zip(axes.flat, presets):
        nodes = read_csv(os.path.join(data_dir, f"nodes_{name}.csv"), "nodes")
        xs = [r["x"] for r in nodes]
        M = len(nodes) - 1
        cdf_path = os.path.join(data_dir, f"cdf_{name}.csv")
        if os.path.exists(cdf_path):
            cdf = read_csv(cdf_path, "cdf")
            ax.plot([r["x"] for r in cdf], [r["F"] for r in cdf], "-", lw=1.2, label="F(x)")
        ax.plot(xs, [m / M for m in range(M + 1)], "o", ms=4, mfc="none", label="nodes")
        ax.set_title(f"({name})")
        ax.set_xlabel("x")
        ax.set_ylabel("F")
        ax.set_xlim(-1.05, 1.05)
    for ax in axes.flat[len(presets):]:
        ax.set_visible(False)
    fig.tight_layout()
    return fig


def render_witness(data_dir: str):
    path = find_one(data_dir, ("witness.json", "witness_minus.json", "witness_plus.json"))
    doc = read_json(path, ("M", "N", "K", "log10_Q", "poly_samples", "grid"))
    samples = np.asarray(doc["poly_samples"], dtype=float)
    grid = np.asarray(doc["grid"], dtype=float)
    fig, ax = plt.subplots(figsize=(6.0, 3.6))
    ax.plot(samples[:, 0], samples[:, 1], "-", lw=1.0, label="witness polynomial")
    ax.plot(grid[:, 0], grid[:, 1], "k.", ms=6, label="grid values")
    ax.axhline(1.0, color="gray", lw=0.6, ls=":")
    ax.axhline(-1.0, color="gray", lw=0.6, ls=":")
    q = 10.0 ** doc["log10_Q"]
    ax.axhline(q, color="C3", lw=0.8, ls="--", label="lower bound Q")
    ax.set_title(f"M={doc['M']}, N={doc['N']}, K={doc['K']}")
    ax.set_xlabel("x")
    ax.legend(fontsize=8)
    fig.tight_layout()
    return fig


def _plot_growth_file(ax, path, label_prefix=""):
    rows = read_csv(path, "growth")
    Ms = [r["M"] for r in rows]
    ax.plot(Ms, [r["log10_B"] for r in rows], "o-", ms=3, label=f"{label_prefix}B(M,N)")
    qs = [r["log10_Q"] for r in rows]
    if any(q is not None for q in qs):
        ax.plot(Ms, qs, "s--", ms=3, label=f"{label_prefix}Q(K,N)")
    ws = [r["log10_witness"] for r in rows]
    if all(w is not None for w in ws):
        ax.plot(Ms, ws, "^:", ms=3, label=f"{label_prefix}witness norm")


def render_compare_growth(data_dir: str):
    paths = sorted(glob.glob(os.path.join(data_dir, "growth_*.csv")))
    paths = [p for p in paths if not os.path.basename(p).startswith("growth_rates_")]
    if not paths:
        raise FileNotFoundError(f"no growth_*.csv in {data_dir}")
    fig, axes = plt.subplots(1, len(paths), figsize=(4.2 * len(paths), 3.4), squeeze=False)
    for ax, path in zip(axes.flat, paths):
        name = os.path.basename(path)[len("growth_"):-len(".csv")]
        _plot_growth_file(ax, path)
        ax.set_title(f"({name})")
        ax.set_xlabel("M")
        ax.set_ylabel("log10")
        ax.legend(fontsize=8)
    fig.tight_layout()
    return fig


def render_growth(data_dir: str):
    paths = sorted(glob.glob(os.path.join(data_dir, "growth_rates_*.csv")))
    if not paths:
        paths = [
            p
            for p in sorted(glob.glob(os.path.join(data_dir, "growth_*.csv")))
            if not os.path.basename(p).startswith("growth_rates_")
        ]
    if not paths:
        raise FileNotFoundError(f"no growth data in {data_dir}")
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for path in paths:
        rows = read_csv(path, "growth")
        tag = os.path.basename(path).rsplit(".", 1)[0]
        tag = tag.replace("growth_rates_", "").replace("growth_", "")
        ax.plot(
            [r["M"] for r in rows],
            [r["log10_B"] for r in rows],
            "o-",
            ms=3,
            label=tag,
        )
    ax.set_xlabel("M")
    ax.set_ylabel("log10 B(M,N)")
    ax.legend(fontsize=8)
    fig.tight_layout()
    return fig


def render_scaling(data_dir: str):
    paths = sorted(glob.glob(os.path.join(data_dir, "scaling_*.csv")))
    paths = [p for p in paths if os.path.basename(p) != "scaling_fits.json"]
    if not paths:
        raise FileNotFoundError(f"no scaling_*.csv in {data_dir}")
    fig, ax = plt.subplots(figsize=(5.4, 4.2))
    for path in paths:
        name = os.path.basename(path)[len("scaling_"):-len(".csv")]
        rows = read_csv(path, "scaling")
        Ns = np.array([r["N"] for r in rows], dtype=float)
        Ms = np.array([r["M_star"] for r in rows], dtype=float)
        ax.loglog(Ns, Ms, "o", ms=4, label=f"({name})")
        if name in SCALING_EXPONENTS:
            ax.loglog(Ns, (Ns / 3.0) ** SCALING_EXPONENTS[name], "--", lw=0.8)
        elif name == "OC":
            ax.loglog(Ns, OC_LINEAR_COEF * Ns, "--", lw=0.8)
    ax.set_xlabel("N")
    ax.set_ylabel("smallest M with bounded growth")
    ax.legend(fontsize=8)
    fig.tight_layout()
    return fig


def render_contour(data_dir: str):
    paths = sorted(glob.glob(os.path.join(data_dir, "contour_*.csv")))
    if not paths:
        raise FileNotFoundError(f"no contour_*.csv in {data_dir}")
    fig, axes = plt.subplots(1, len(paths), figsize=(4.6 * len(paths), 3.8), squeeze=False)
    for ax, path in zip(axes.flat, paths):
        name = os.path.basename(path)[len("contour_"):-len(".csv")]
        rows = read_csv(path, "contour")
        Ms = sorted({r["M"] for r in rows})
        Ns = sorted({r["N"] for r in rows})
        Z = np.full((len(Ns), len(Ms)), np.nan)
        for r in rows:
            i, j = Ns.index(r["N"]), Ms.index(r["M"])
            if r["status"] == "saturated":
                Z[i, j] = np.inf
            elif r["status"] == "ok":
                Z[i, j] = r["log10_B"]
        finite = np.where(np.isfinite(Z), Z, np.nan)
        mesh = ax.pcolormesh(Ms, Ns, finite, shading="nearest", cmap="viridis")
        sat_i, sat_j = np.nonzero(np.isinf(Z))
        if len(sat_i):
            ax.plot(np.asarray(Ms)[sat_j], np.asarray(Ns)[sat_i], "ks", ms=3)
        fig.colorbar(mesh, ax=ax, label="log10 B(M,N)")
        ax.set_title(f"({name})")
        ax.set_xlabel("M")
        ax.set_ylabel("N")
    fig.tight_layout()
    return fig


def render_remez_convergence(data_dir: str):
    path = os.path.join(data_dir, "remez_convergence.csv")
    rows = read_csv(path, "remez_convergence")
    fig, ax = plt.subplots(figsize=(5.6, 3.8))
    for variant, style in (("first", "o-"), ("second", "s-")):
        sel = [r for r in rows if r["variant"] == variant]
        if not sel:
            continue
        ax.semilogy(
            [r["iteration"] for r in sel],
            [r["lvalue"] for r in sel],
            style,
            ms=3,
            label=f"{variant} variant",
        )
    ax.set_xlabel("iteration")
    ax.set_ylabel("probe value")
    ax.legend(fontsize=8)
    fig.tight_layout()
    return fig


def render_maximal_poly(data_dir: str):
    path = find_one(data_dir, ("maximal_poly.json", "bmn.json"))
    doc = read_json(path, ("B", "poly_samples", "grid"))
    samples = np.asarray(doc["poly_samples"], dtype=float)
    grid = np.asarray(doc["grid"], dtype=float)
    fig, ax = plt.subplots(figsize=(6.0, 3.6))
    ax.plot(samples[:, 0], samples[:, 1], "-", lw=1.0, label="maximal polynomial")
    active = np.abs(np.abs(grid[:, 1]) - 1.0) <= 1e-6
    ax.plot(grid[~active, 0], grid[~active, 1], "o", ms=4, mfc="none", label="grid values")
    ax.plot(grid[active, 0], grid[active, 1], "k.", ms=7, label="active (= ±1)")
    ax.axhline(1.0, color="gray", lw=0.6, ls=":")
    ax.axhline(-1.0, color="gray", lw=0.6, ls=":")
    ax.set_title(f"B = {doc['B']:.6g}")
    ax.set_xlabel("x")
    ax.legend(fontsize=8)
    fig.tight_layout()
    return fig


FIGURES = {
    "points": render_points,
    "witness": render_witness,
    "compare_growth": render_compare_growth,
    "growth": render_growth,
    "scaling": render_scaling,
    "contour": render_contour,
    "remez_convergence": render_remez_convergence,
    "maximal_poly": render_maximal_poly,
}


def render(figure: str, data_dir: str, out_path: str):
    """Render one named figure from data_dir and write it to out_path."""
    if figure not in FIGURES:
        raise ValueError(f"unknown figure {figure!r}; choose from {sorted(FIGURES)}")
    fig = FIGURES[figure](data_dir)
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return out_path


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="maxpoly-figures", description=__doc__)
    ap.add_argument("figure", choices=sorted(FIGURES) + ["all"])
    ap.add_argument("--data", required=True, help="directory with exported data files")
    ap.add_argument("--out", help="output image path (single figure)")
    ap.add_argument("--out-dir", help="output directory (with 'all')")
    args = ap.parse_args(argv)
    try:
        if args.figure == "all":
            out_dir = args.out_dir or "."
            os.makedirs(out_dir, exist_ok=True)
            for name in sorted(FIGURES):
                try:
                    render(name, args.data, os.path.join(out_dir, f"{name}.png"))
                    print(f"{name}: ok")
                except FileNotFoundError as exc:
                    print(f"{name}: skipped ({exc})")
        else:
            out = args.out or f"{args.figure}.png"
            render(args.figure, args.data, out)
    except (SchemaError, FileNotFoundError, ValueError) as exc:
        print(str(exc), file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
