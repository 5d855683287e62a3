"""Figure rendering for sweep tables.

Sweep commands emit CSV as the contract; a figure is rendered next to the
CSV only when asked for. Uses the Agg backend so it works headless.
"""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def render_sweep(rows: list[dict], x_name: str, path: str, title: str = "") -> str:
    """Render depth and gate curves of a sweep table to an image file."""
    variants = sorted({r["variant"] for r in rows})
    fig, (ax_d, ax_g) = plt.subplots(1, 2, figsize=(10, 4))
    for variant in variants:
        sub = [r for r in rows if r["variant"] == variant]
        xs = [r["x"] for r in sub]
        ax_d.plot(xs, [r["depth_measured"] for r in sub], marker="o", ms=3, label=variant)
        ax_g.plot(xs, [r["gates_measured"] for r in sub], marker="o", ms=3, label=variant)
        if any(r["depth_predicted"] != "" for r in sub):
            ax_d.plot(xs, [r["depth_predicted"] for r in sub], ls="--", lw=1, alpha=0.6)
        if any(r["gates_predicted"] != "" for r in sub):
            ax_g.plot(xs, [r["gates_predicted"] for r in sub], ls="--", lw=1, alpha=0.6)
    ax_d.set_xlabel(x_name)
    ax_d.set_ylabel("time slices")
    ax_g.set_xlabel(x_name)
    ax_g.set_ylabel("elementary gates")
    ax_d.legend(fontsize=7)
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
