"""Render figures from collective-transport output files.

Four figure families, one per pipeline product:

    pop             steady CSV (m,P)              population profile
    flux-vs-alpha   sweep CSV (N,alpha,J,...)     flux versus coupling per size
    opt-scaling     scaling JSON                  log-log optimal-coupling drift
    noise           sweep CSV (...,S,FF,...)      noise and Fano versus coupling

The package talks to the transport pipeline only through these files; the
opt-scaling panel refits the power law from the tabulated optima so the
annotated exponent always describes the plotted points.
"""
import csv
import json

import numpy as np
import matplotlib.pyplot as plt

FIGURES = ("pop", "flux-vs-alpha", "opt-scaling", "noise")


class DataFormatError(ValueError):
    """The input file does not follow the expected CSV/JSON schema."""


def _read_csv(path, columns):
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in columns if c not in header]
        if missing:
            raise DataFormatError(f"{path}: missing columns {missing} "
                                  f"(header {header})")
        rows = list(reader)
    if not rows:
        raise DataFormatError(f"{path}: no data rows")
    try:
        return {c: np.array([float(r[c]) for r in rows]) for c in columns}
    except ValueError as exc:
        raise DataFormatError(f"{path}: non-numeric cell: {exc}") from exc


def load_steady(path):
    return _read_csv(path, ("m", "P"))


def load_sweep(path):
    data = _read_csv(path, ("N", "alpha", "J", "S", "FF"))
    data["N"] = data["N"].astype(int)
    return data


def load_scaling(path):
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    for key in ("sizes", "alpha_opt"):
        if key not in doc:
            raise DataFormatError(f"{path}: missing key `{key}`")
    sizes = np.asarray(doc["sizes"], dtype=float)
    alpha = np.asarray(doc["alpha_opt"], dtype=float)
    if len(sizes) != len(alpha) or len(sizes) < 2:
        raise DataFormatError(f"{path}: sizes and alpha_opt must be equally "
                              "long lists with >= 2 entries")
    return {"sizes": sizes, "alpha_opt": alpha,
            "value_opt": np.asarray(doc.get("value_opt", []), dtype=float)}


def _fig_pop(data):
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    ax.bar(data["m"], data["P"], width=0.7, color="#4878a8",
           edgecolor="black", linewidth=0.6)
    ax.set_xlabel(r"$m$")
    ax.set_ylabel(r"$P_m$")
    ax.set_xticks(data["m"])
    return fig


def _fig_flux(data):
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    for n in np.unique(data["N"]):
        sel = data["N"] == n
        ax.plot(data["alpha"][sel], data["J"][sel], "o-", ms=3.5,
                label=rf"$N={n}$")
    ax.set_xscale("log")
    ax.set_xlabel(r"coupling $\alpha$")
    ax.set_ylabel(r"energy flux $J$")
    ax.legend(frameon=False)
    return fig


def _fig_opt_scaling(data):
    sizes, alpha = data["sizes"], data["alpha_opt"]
    slope, intercept = np.polyfit(np.log(sizes), np.log(alpha), 1)
    gamma = -slope
    fig, ax = plt.subplots(figsize=(4.6, 3.4))
    ax.loglog(sizes, alpha, "o", color="#4878a8")
    grid = np.linspace(sizes.min(), sizes.max(), 64)
    ax.loglog(grid, np.exp(intercept) * grid**slope, "--", color="0.3", lw=1.0)
    ax.text(0.95, 0.92, f"γ={gamma:.2f}", transform=ax.transAxes,
            ha="right", va="top")
    ax.set_xlabel(r"$N$")
    ax.set_ylabel(r"$\alpha_{\rm opt}$")
    return fig


def _fig_noise(data):
    fig, (ax_s, ax_f) = plt.subplots(2, 1, figsize=(5.0, 5.2), sharex=True)
    for n in np.unique(data["N"]):
        sel = data["N"] == n
        ax_s.plot(data["alpha"][sel], data["S"][sel], "o-", ms=3.5,
                  label=rf"$N={n}$")
        ok = sel & np.isfinite(data["FF"])
        ax_f.plot(data["alpha"][ok], data["FF"][ok], "s-", ms=3.5)
    ax_s.set_xscale("log")
    ax_s.set_ylabel(r"noise $S$")
    ax_s.legend(frameon=False)
    ax_f.set_yscale("log")
    ax_f.set_ylabel(r"Fano ratio $S/J$")
    ax_f.set_xlabel(r"coupling $\alpha$")
    return fig


_BUILDERS = {"pop": (_fig_pop, load_steady),
             "flux-vs-alpha": (_fig_flux, load_sweep),
             "opt-scaling": (_fig_opt_scaling, load_scaling),
             "noise": (_fig_noise, load_sweep)}


def render(figure, data_path, out_path, title=None, dpi=200):
    """Build the requested figure from `data_path` and save it to `out_path`.

    Returns the matplotlib Figure (the caller owns closing it).
    """
    if figure not in _BUILDERS:
        raise ValueError(f"unknown figure `{figure}`; choose from {FIGURES}")
    build, load = _BUILDERS[figure]
    fig = build(load(data_path))
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(out_path, dpi=dpi)
    return fig
