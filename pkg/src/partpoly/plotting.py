"""SVG figures of root sets, written deterministically with matplotlib."""

from __future__ import annotations

from contextlib import contextmanager

import matplotlib
import numpy as np
from matplotlib.figure import Figure
from matplotlib.patches import Circle

__all__ = ["save_root_scatter", "save_radial_histogram", "figure_style"]

_STYLE = {
    "svg.hashsalt": "partpoly",
    "svg.fonttype": "none",
    "font.size": 9,
    "axes.linewidth": 0.8,
    "lines.linewidth": 0.8,
}


@contextmanager
def figure_style():
    with matplotlib.rc_context(_STYLE):
        yield


def _save(fig: Figure, path) -> None:
    # no timestamp, fixed id salt: identical bytes on every run
    fig.savefig(path, format="svg", metadata={"Date": None})


def save_root_scatter(r, path, title: str | None = None, size: float = 5.0) -> None:
    """Roots as points with the unit circle stroked; square axes at ``+-max(1.1, max|z|)``."""
    with figure_style():
        fig = Figure(figsize=(size, size))
        ax = fig.add_subplot(1, 1, 1)
        roots = np.asarray(r.roots)
        lim = max(1.1, float(np.abs(roots).max()) * 1.05 if len(roots) else 0.0)
        ax.add_patch(Circle((0, 0), 1.0, fill=False, color="0.5", linewidth=0.8))
        ax.axhline(0, color="0.85", linewidth=0.5, zorder=0)
        ax.axvline(0, color="0.85", linewidth=0.5, zorder=0)
        if len(roots):
            ax.scatter(roots.real, roots.imag, s=6, color="black", linewidths=0)
        ax.set_xlim(-lim, lim)
        ax.set_ylim(-lim, lim)
        ax.set_aspect("equal")
        ax.set_xlabel("Re")
        ax.set_ylabel("Im")
        if title:
            ax.set_title(title)
        _save(fig, path)


def save_radial_histogram(profile, path, title: str | None = None) -> None:
    with figure_style():
        fig = Figure(figsize=(5.0, 3.0))
        ax = fig.add_subplot(1, 1, 1)
        edges = np.asarray(profile.edges)
        if len(edges):
            ax.stairs(profile.counts, edges, fill=True, color="0.6")
            ax.axvspan(1 - profile.delta, 1 + profile.delta, color="0.9", zorder=0)
        ax.set_xlabel("|z|")
        ax.set_ylabel("roots")
        if title:
            ax.set_title(title)
        fig.tight_layout()
        _save(fig, path)
