"""Figure construction for the map and scan CSV schemas.

Output is deterministic: fixed figure geometry, fixed [0, 1] color scale
for both panels, and PNG metadata stripped so identical input bytes yield
identical image bytes.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .io import MapCsv, ScanCsv

# Strips the default Software tag; PNG then carries no varying metadata.
_PNG_KWARGS = {"format": "png", "dpi": 150, "metadata": {"Software": None}}


def _edges(centers: np.ndarray) -> np.ndarray:
    """Cell edges around sample centers, for pcolormesh."""
    if centers.size == 1:
        half = 0.5 if centers[0] == 0.0 else 0.5 * abs(centers[0])
        return np.array([centers[0] - half, centers[0] + half])
    mids = 0.5 * (centers[:-1] + centers[1:])
    first = centers[0] - (mids[0] - centers[0])
    last = centers[-1] + (centers[-1] - mids[-1])
    return np.concatenate([[first], mids, [last]])


def render_map(data: MapCsv, out_path) -> None:
    """Two-panel heatmap of J0 and P over the (alpha, phi_w) grid."""
    fig, axes = plt.subplots(1, 2, figsize=(11.0, 4.2), constrained_layout=True)
    x = _edges(data.alpha)
    y = _edges(data.phi_w)
    for ax, values, title in (
        (axes[0], data.j0, "objective at the special control, $J_0$"),
        (axes[1], data.p, "probability $P$ of $J < J_0$ nearby"),
    ):
        mesh = ax.pcolormesh(x, y, values.T, vmin=0.0, vmax=1.0, cmap="viridis")
        ax.set_xlabel(r"$\alpha$ (coupling angle, rad)")
        ax.set_ylabel(r"$\varphi_W$ (target angle, rad)")
        ax.set_title(title)
        fig.colorbar(mesh, ax=ax)
    fig.savefig(out_path, **_PNG_KWARGS)
    plt.close(fig)


def render_scan(data: ScanCsv, out_path) -> None:
    """Line plot of P(alpha) with the 1/2 reference level."""
    fig, ax = plt.subplots(figsize=(7.0, 4.2), constrained_layout=True)
    if data.alpha.size == 1:
        ax.plot(data.alpha, data.p, "o", color="C0")
    else:
        ax.plot(data.alpha, data.p, "-o", color="C0", markersize=3.5)
    ax.axhline(0.5, color="C3", linestyle="--", linewidth=1.0, label="P = 1/2")
    ax.set_xlabel(r"$\alpha$ (coupling angle, rad)")
    ax.set_ylabel(r"$P$")
    ax.set_ylim(0.0, 1.0)
    ax.set_title("probability of falling below the special-control objective")
    ax.legend(loc="upper right")
    fig.savefig(out_path, **_PNG_KWARGS)
    plt.close(fig)
