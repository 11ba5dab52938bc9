"""Matplotlib figures rendered to SVG files with reproducible bytes."""

from __future__ import annotations

from pathlib import Path
from typing import TYPE_CHECKING

import matplotlib

matplotlib.use("Agg")  # file output only, no display backend

import matplotlib.pyplot as plt
import numpy as np

if TYPE_CHECKING:
    from .engine import EpcaResult

# Fixed hashsalt plus a scrubbed Date field make the SVG bytes a pure
# function of the figure content.
_SVG_RC = {"svg.hashsalt": "epca"}
_SVG_META = {"Date": None}


def _save(fig, path: Path) -> None:
    with matplotlib.rc_context(_SVG_RC):
        fig.savefig(path, format="svg", metadata=_SVG_META)
    plt.close(fig)


def render_scree(result: "EpcaResult", path) -> Path:
    """Bar chart of explained variance ratios with the cumulative curve."""
    path = Path(path)
    ratios = result.explained_ratio
    components = np.arange(1, ratios.shape[0] + 1)
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.bar(components, ratios, color="#4878a8", label="ratio")
    ax.plot(
        components,
        np.cumsum(ratios),
        color="#b04030",
        marker="o",
        markersize=3,
        linewidth=1.2,
        label="cumulative",
    )
    ax.set_xlabel("component")
    ax.set_ylabel("explained variance ratio")
    ax.set_ylim(0.0, 1.05)
    if ratios.shape[0] <= 20:
        ax.set_xticks(components)
    ax.legend(loc="center right")
    fig.tight_layout()
    _save(fig, path)
    return path


def render_scores(result: "EpcaResult", path) -> Path | None:
    """Scatter of the first two tangent scores; None if under 2 components."""
    if result.n_components < 2:
        return None
    path = Path(path)
    scores = result.scores
    fig, ax = plt.subplots(figsize=(5.0, 5.0))
    ax.scatter(scores[:, 0], scores[:, 1], s=14, color="#4878a8")
    ax.axhline(0.0, color="#999999", linewidth=0.6)
    ax.axvline(0.0, color="#999999", linewidth=0.6)
    ax.set_xlabel("score 1")
    ax.set_ylabel("score 2")
    ax.set_aspect("equal", adjustable="datalim")
    fig.tight_layout()
    _save(fig, path)
    return path


def render_mean_contour(result: "EpcaResult", path) -> Path:
    """Closed polygon of the extrinsic mean shape."""
    path = Path(path)
    mean = result.extrinsic_mean
    xs = np.append(mean.real, mean.real[0])
    ys = np.append(mean.imag, mean.imag[0])
    fig, ax = plt.subplots(figsize=(5.0, 5.0))
    ax.plot(xs, ys, color="#b04030", linewidth=1.2)
    ax.set_aspect("equal", adjustable="datalim")
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    fig.tight_layout()
    _save(fig, path)
    return path
