"""Synthesized passive values versus width, one series per current or
per gain target.  Infeasible grid points appear as gaps."""

from __future__ import annotations

from .io import load_rows, series_by
from .recipes import FigureRecipe, validate
from .style import marker_for, plt, save_pair

PANELS = [("ls", 1e9, "L_S (nH)"),
          ("lg", 1e9, "L_g (nH)"),
          ("cx", 1e12, "C_X (pF)")]


def _series_text(recipe: FigureRecipe, value: float) -> str:
    if recipe.series_label == "id":
        return f"ID = {value * 1e3:g} mA"
    return f"G = {value:g} dB"


def build(recipe: FigureRecipe):
    validate(recipe)
    rows = load_rows(recipe.inputs["sweep"])
    series_col = recipe.columns.get("series", "id")
    fig, axes = plt.subplots(1, 3, figsize=(10.2, 3.4))
    for k, (column, scale, label) in enumerate(PANELS):
        ax = axes[k]
        for i, (value, group) in enumerate(series_by(rows, series_col).items()):
            group = sorted(group, key=lambda r: r["w1"])
            # feasible points only: synthesis gaps stay visible
            xs = [r["w1"] * 1e6 for r in group if r["status"] == "Feasible"]
            ys = [r[column] * scale for r in group if r["status"] == "Feasible"]
            ax.plot(xs, ys, marker=marker_for(i), ms=4, lw=1.0,
                    mfc="none", label=_series_text(recipe, value))
        ax.set_xlabel("W1 (um)")
        ax.set_ylabel(label)
    axes[0].legend(fontsize=7)
    fig.tight_layout()
    return fig


def render(recipe: FigureRecipe, out_dir: str) -> list[str]:
    return save_pair(build(recipe), out_dir, recipe.stem())
