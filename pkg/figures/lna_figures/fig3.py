"""Hypothetical C_X versus width, one curve per bias current."""

from __future__ import annotations

from .io import load_rows, series_by
from .recipes import FigureRecipe, validate
from .style import plt, save_pair


def build(recipe: FigureRecipe):
    validate(recipe)
    rows = load_rows(recipe.inputs["curves"])
    fig, ax = plt.subplots(figsize=(5.0, 3.6))
    for id_value, group in series_by(rows, "id").items():
        w = [r["w"] for r in group]
        cx = [r["cx"] for r in group]
        ax.plot(w, cx, lw=1.4, label=f"ID = {id_value:g}")
    ax.axhline(0.0, color="0.6", lw=0.8)
    ax.set_xlabel("transistor width (unit constants)")
    ax.set_ylabel("required C_X (unit constants)")
    ax.legend(fontsize=8)
    ax.set_title("Required gate-source cap vs width")
    fig.tight_layout()
    return fig


def render(recipe: FigureRecipe, out_dir: str) -> list[str]:
    return save_pair(build(recipe), out_dir, recipe.stem())
