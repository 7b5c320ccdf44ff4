"""Matplotlib figures written next to the CLI's delimited output."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.labelsize": 9,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
}


def plot_sweep(rows, path, title=None):
    """Success rate against adversary size, one line per (d, k)."""
    series = {}
    for row in rows:
        series.setdefault((row["d"], row["k"]), []).append((row["adversary"], row["success_rate"]))
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(4.5, 3.0))
        for (d, k), pts in sorted(series.items()):
            pts.sort()
            ax.plot([a for a, _ in pts], [s for _, s in pts], marker="o",
                    label=f"d={d}, k={k} (corrects {(k - d) // 2})")
        ax.set_xlabel("adversary nodes")
        ax.set_ylabel("delivery rate")
        ax.set_ylim(-0.05, 1.05)
        if title:
            ax.set_title(title)
        ax.legend(frameon=False)
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)


def circle_layout(n):
    return [(math.cos(2 * math.pi * i / max(n, 1)), math.sin(2 * math.pi * i / max(n, 1)))
            for i in range(n)]


def plot_graph(g, path, highlight=(), muted=(), title=None):
    """Draw ``g`` on a circle; ``highlight`` vertices are filled, ``muted`` ones greyed."""
    pos = circle_layout(g.n)
    highlight, muted = set(highlight), set(muted)
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(3.5, 3.5))
        for u, v in g.sorted_edges():
            faded = u in muted or v in muted
            ax.plot([pos[u][0], pos[v][0]], [pos[u][1], pos[v][1]],
                    color="0.8" if faded else "0.3", lw=1, zorder=1)
        for v, (x, y) in enumerate(pos):
            face = "0.85" if v in muted else ("tab:blue" if v in highlight else "white")
            ax.scatter([x], [y], s=260, c=face, edgecolors="0.2", zorder=2)
            ax.annotate(str(v), (x, y), ha="center", va="center", fontsize=8, zorder=3)
        ax.set_aspect("equal")
        ax.axis("off")
        if title:
            ax.set_title(title)
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
