"""Matplotlib figures for verification reports and small graphs (Agg backend)."""

from __future__ import annotations

import math
from collections.abc import Sequence
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .graph import Graph, vertex_label  # noqa: E402
from .verify import VerificationReport  # noqa: E402


def plot_report_summary(reports: Sequence[VerificationReport], path: str | Path) -> Path:
    """Checks per suite (log scale) with failure and budget counts annotated."""
    path = Path(path)
    names = [r.suite for r in reports]
    checks = [max(r.checks, 1) for r in reports]
    colors = ["tab:red" if r.failures else "tab:orange" if r.budget_exhausted else "tab:green"
              for r in reports]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 0.5 * len(reports) + 2), sharey=True)
    ax1.barh(names, checks, color=colors)
    ax1.set_xscale("log")
    ax1.set_xlabel("checks")
    ax1.invert_yaxis()
    for y, r in enumerate(reports):
        ax1.text(checks[y], y, f" {len(r.failures)} fail / {r.budget_exhausted} unknown",
                 va="center", fontsize=8)
    ax2.barh(names, [r.wall_time for r in reports], color="tab:blue")
    ax2.set_xlabel("wall time (s)")
    fig.suptitle("verification summary")
    fig.tight_layout()
    fig.savefig(path, dpi=100)
    plt.close(fig)
    return path


def _circle_layout(g: Graph) -> dict:
    n = max(g.order, 1)
    return {v: (math.cos(2 * math.pi * k / n), math.sin(2 * math.pi * k / n))
            for k, v in enumerate(g.vertices)}


def draw_graph(g: Graph, ax, highlight: Sequence = (), title: str = "") -> None:
    """Vertices on a circle; loops drawn as small rings; ``highlight`` vertices filled red."""
    pos = _circle_layout(g)
    hi = set(highlight)
    for u, v in g.edges:
        (x0, y0), (x1, y1) = pos[u], pos[v]
        if u == v:
            ax.add_patch(plt.Circle((x0 * 1.15, y0 * 1.15), 0.12, fill=False, color="gray"))
        else:
            ax.plot([x0, x1], [y0, y1], color="gray", zorder=1)
    for v, (x, y) in pos.items():
        ax.scatter([x], [y], s=300, color="tab:red" if v in hi else "white",
                   edgecolors="black", zorder=2)
        ax.text(x, y, vertex_label(v), ha="center", va="center", fontsize=8, zorder=3)
    ax.set_title(title)
    ax.set_aspect("equal")
    ax.set_xlim(-1.5, 1.5)
    ax.set_ylim(-1.5, 1.5)
    ax.axis("off")


def plot_pleat(original: Graph, pleat_graph: Graph, path: str | Path) -> Path:
    """Side-by-side drawing of a graph (pleat vertices highlighted) and its pleat."""
    path = Path(path)
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(8, 4))
    draw_graph(original, ax1, highlight=pleat_graph.vertices, title="graph")
    draw_graph(pleat_graph, ax2, title="pleat")
    fig.tight_layout()
    fig.savefig(path, dpi=100)
    plt.close(fig)
    return path
