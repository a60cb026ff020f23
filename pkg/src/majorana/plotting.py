"""Static Bloch-sphere figures of star sets, written to image files."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .representation import bloch_array

COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"]


def _sphere(ax, alpha=0.08):
    u = np.linspace(0, 2 * np.pi, 41)
    v = np.linspace(0, np.pi, 21)
    x = np.outer(np.cos(u), np.sin(v))
    y = np.outer(np.sin(u), np.sin(v))
    z = np.outer(np.ones_like(u), np.cos(v))
    ax.plot_surface(x, y, z, color="#dddddd", alpha=alpha, linewidth=0)
    ax.plot_wireframe(x, y, z, color="gray", linewidth=0.3, alpha=0.3, rstride=4, cstride=4)
    for axis in np.eye(3):
        ax.plot(*np.vstack([-axis, axis]).T, color="gray", linewidth=0.6)
    ax.text(0, 0, 1.15, "|0>", ha="center")
    ax.text(0, 0, -1.25, "|1>", ha="center")


def plot_star_sets(star_sets, path, labels=None, title=None, figsize=(4.5, 4.5), dpi=150):
    """Scatter the Bloch points of one or more star sets on a sphere and save to ``path``.

    The format follows the file extension (png, pdf, svg, ...).
    """
    fig = plt.figure(figsize=figsize)
    ax = fig.add_subplot(projection="3d")
    _sphere(ax)
    for k, A in enumerate(star_sets):
        pts = bloch_array(A)
        label = labels[k] if labels else None
        ax.scatter(*pts.T, s=40, color=COLORS[k % len(COLORS)], depthshade=False, label=label)
    ax.set_box_aspect((1, 1, 1))
    ax.set_xlim(-1, 1)
    ax.set_ylim(-1, 1)
    ax.set_zlim(-1, 1)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_zlabel("z")
    if title:
        ax.set_title(title)
    if labels:
        ax.legend(loc="upper left", fontsize="small", frameon=False)
    fig.tight_layout()
    # no version stamp, so reruns produce identical files
    fig.savefig(path, dpi=dpi, metadata={"Software": None} if str(path).endswith(".png") else None)
    plt.close(fig)
