"""Matplotlib renderings of defining graphs and cube complex 1-skeletons."""
from __future__ import annotations

import math
from typing import Dict, Iterable, Optional, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .cubulation import PrimeGraphResult  # noqa: E402
from .graph import SimplicialGraph  # noqa: E402

Point = Tuple[float, float]


def circular_layout(labels: Sequence[str]) -> Dict[str, Point]:
    n = max(len(labels), 1)
    return {v: (math.cos(2 * math.pi * i / n + math.pi / 2), math.sin(2 * math.pi * i / n + math.pi / 2))
            for i, v in enumerate(labels)}


def draw_graph(ax, G: SimplicialGraph, title: str = "", highlight: Iterable[str] = (),
               pos: Optional[Dict[str, Point]] = None) -> None:
    pos = pos or circular_layout(G.vertices)
    marked = set(highlight)
    for u, v in G.sorted_edges():
        (x1, y1), (x2, y2) = pos[u], pos[v]
        ax.plot([x1, x2], [y1, y2], color="0.55", lw=1.0, zorder=1)
    xs = [pos[v][0] for v in G.vertices]
    ys = [pos[v][1] for v in G.vertices]
    colors = ["tab:orange" if v in marked else "tab:blue" for v in G.vertices]
    ax.scatter(xs, ys, s=260, c=colors, zorder=2, edgecolors="k", linewidths=0.6)
    for v in G.vertices:
        ax.text(pos[v][0], pos[v][1], v, ha="center", va="center", fontsize=7, color="white", zorder=3)
    ax.set_title(title, fontsize=10)
    ax.set_aspect("equal")
    ax.set_xlim(-1.3, 1.3)
    ax.set_ylim(-1.3, 1.45)
    ax.axis("off")


def draw_skeleton(ax, result: PrimeGraphResult) -> None:
    """1-skeleton of the dual cube complex, vertices on a circle, edges coloured by wall."""
    X = result.complex
    labels = [str(i) for i in range(len(X.vertices))]
    pos = circular_layout(labels) if len(labels) > 1 else {"0": (0.0, 0.0)}
    cmap = plt.get_cmap("tab10")
    for x, y, w in X.edges:
        (x1, y1), (x2, y2) = pos[str(x)], pos[str(y)]
        ax.plot([x1, x2], [y1, y2], color=cmap(w % 10), lw=2.0, zorder=1)
    ax.scatter([p[0] for p in pos.values()], [p[1] for p in pos.values()], s=200, c="0.2", zorder=2)
    for k, (px, py) in pos.items():
        ax.text(px, py, k, ha="center", va="center", fontsize=8, color="white", zorder=3)
    ax.set_title(f"dual complex: {len(X.vertices)} vertices, {len(X.squares)} squares", fontsize=10)
    ax.set_aspect("equal")
    ax.set_xlim(-1.3, 1.3)
    ax.set_ylim(-1.3, 1.45)
    ax.axis("off")


def prime_graph_figure(G: SimplicialGraph, result: PrimeGraphResult, path) -> None:
    """Write a three panel figure: Γ with Φ(x₀) marked, the complex, and Γ′."""
    fig, axes = plt.subplots(1, 3, figsize=(13, 4.5))
    draw_graph(axes[0], G, "input graph", highlight=result.complex.phi[0])
    draw_skeleton(axes[1], result)
    draw_graph(axes[2], result.prime_graph, f"prime graph (index {result.index})")
    fig.tight_layout()
    # drop the version tag so the bytes do not depend on the matplotlib release
    fig.savefig(path, metadata={"Software": None} if str(path).endswith(".png") else None)
    plt.close(fig)


def pair_figure(G1: SimplicialGraph, G2: SimplicialGraph, path, titles=("graph 1", "graph 2")) -> None:
    fig, axes = plt.subplots(1, 2, figsize=(9, 4.5))
    draw_graph(axes[0], G1, titles[0])
    draw_graph(axes[1], G2, titles[1])
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None} if str(path).endswith(".png") else None)
    plt.close(fig)
