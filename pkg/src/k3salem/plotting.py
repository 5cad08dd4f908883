"""Figures for the report directory (Agg backend, files only)."""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

plt.rcParams.update({
    "figure.figsize": (5, 4),
    "font.size": 9,
    "axes.linewidth": 0.6,
    "savefig.dpi": 150,
})


def _tidy(ax):
    ax.spines[["right", "top"]].set_visible(False)
    ax.tick_params(width=0.6)


def plot_spectrum(mu_coeffs, path: Path, title: str = "") -> Path:
    """Roots of the characteristic polynomial: complex plane near |z| = 1, and log|z|.

    Root locations are floating-point and for display only; the certified
    data lives in the TSV/JSON output.
    """
    roots = np.roots([float(c) for c in reversed(mu_coeffs)])
    off = np.abs(np.abs(roots) - 1) > 1e-6
    fig, (ax, bx) = plt.subplots(1, 2, figsize=(8, 4), gridspec_kw={"width_ratios": [1, 1.2]})
    th = np.linspace(0, 2 * np.pi, 400)
    ax.plot(np.cos(th), np.sin(th), lw=0.6, color="0.6")
    ax.scatter(roots[~off].real, roots[~off].imag, s=14, color="tab:blue", label="on |z| = 1")
    inside = off & (np.abs(roots) < 1)
    ax.scatter(roots[inside].real, roots[inside].imag, s=22, marker="x", color="tab:red", label="1/a")
    ax.set_xlim(-1.3, 1.3)
    ax.set_ylim(-1.3, 1.3)
    ax.set_aspect("equal")
    ax.set_xlabel("Re z")
    ax.set_ylabel("Im z")
    ax.legend(frameon=False, loc="upper right", fontsize=8)
    order = np.argsort(np.abs(roots))
    logs = np.log(np.abs(roots[order]))
    bx.bar(range(len(logs)), logs, color=["tab:red" if o else "tab:blue" for o in off[order]])
    bx.axhline(0, lw=0.6, color="0.3")
    bx.set_xlabel("root (sorted by modulus)")
    bx.set_ylabel("log |z|")
    for a in (ax, bx):
        _tidy(a)
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_entropy(primes, entropies, path: Path) -> Path:
    """Entropy interval midpoints against p."""
    fig, ax = plt.subplots()
    ax.plot(primes, entropies, "o-", lw=0.8, ms=4)
    ax.set_xlabel("p")
    ax.set_ylabel("entropy log a")
    _tidy(ax)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path
