"""Matplotlib summary figure for region scans."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
from matplotlib.colors import ListedColormap
from matplotlib.patches import Patch

from .scan import BOUNDARY_COLORS, BOUNDARY_CURVES, LAYER_COLORS, RegionGrid

# painted back-to-front; later layers sit inside earlier ones
_STACK = ("positive", "pos_not_cp", "two_pos_not_cp", "cp")


def render_overview(grid: RegionGrid, path) -> None:
    """Render all region layers of a scan into one figure file.

    The raster is color-coded by the innermost true layer; the boundary
    curves are drawn on top.  The output format follows the file extension.
    """
    cfg = grid.config
    coded = np.zeros((cfg.resolution, cfg.resolution), dtype=int)
    for rank, name in enumerate(_STACK, start=1):
        coded[grid.layer(name)] = rank
    colors = ["white"] + [LAYER_COLORS[name] for name in _STACK]
    fig, ax = plt.subplots(figsize=(7, 6))
    ax.imshow(
        coded,
        origin="lower",
        extent=(cfg.beta_min, cfg.beta_max, cfg.alpha_min, cfg.alpha_max),
        cmap=ListedColormap(colors),
        vmin=0,
        vmax=len(_STACK),
        aspect="auto",
        interpolation="nearest",
    )
    betas = np.linspace(cfg.beta_min, cfg.beta_max, 512)
    for name, curve in BOUNDARY_CURVES.items():
        ax.plot(betas, [curve(float(b)) for b in betas],
                color=BOUNDARY_COLORS[name], lw=1.2, label=f"{name} boundary")
    ax.set_xlim(cfg.beta_min, cfg.beta_max)
    ax.set_ylim(cfg.alpha_min, cfg.alpha_max)
    ax.set_xlabel(r"$\beta$")
    ax.set_ylabel(r"$\alpha$")
    ax.set_title("parameter-plane regions")
    handles = [Patch(facecolor=LAYER_COLORS[name], label=name) for name in _STACK]
    handles += ax.get_legend_handles_labels()[0]
    ax.legend(handles=handles, loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
