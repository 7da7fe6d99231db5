"""Inductor design space: Q vs L and Q vs parallel resistance.

Dashed overlays mark the selection envelopes (highest Q per inductance
bin, lowest Q per resistance bin) and a square-enclosed circle marks the
drain inductor pick, all read from the envelopes CSV.
"""

from __future__ import annotations

from .io import load_rows
from .recipes import FigureRecipe, validate
from .style import plt, save_pair


def build(recipe: FigureRecipe):
    validate(recipe)
    lib = load_rows(recipe.inputs["library"])
    env = load_rows(recipe.inputs["envelopes"])
    maxq = [r for r in env if r["kind"] == "maxq"]
    minq = [r for r in env if r["kind"] == "minq"]
    drain = [r for r in env if r["kind"] == "drain"]

    fig, (ax_l, ax_r) = plt.subplots(1, 2, figsize=(8.4, 3.6))
    nh = 1e9
    ax_l.scatter([r["L"] * nh for r in lib], [r["Q"] for r in lib],
                 s=4, color="0.65", label="library")
    ax_l.plot([r["L"] * nh for r in maxq], [r["Q"] for r in maxq],
              "k--", lw=1.2, label="highest Q")
    ax_l.set_xlabel("L (nH)")
    ax_l.set_ylabel("Q")
    ax_l.set_title("Quality factor vs inductance")

    ax_r.scatter([r["r_parallel"] / 1e3 for r in lib], [r["Q"] for r in lib],
                 s=4, color="0.65", label="library")
    minq_sorted = sorted(minq, key=lambda r: r["r_parallel"])
    ax_r.plot([r["r_parallel"] / 1e3 for r in minq_sorted],
              [r["Q"] for r in minq_sorted], "k--", lw=1.2, label="lowest Q")
    ax_r.set_xlabel("parallel resistance (kOhm)")
    ax_r.set_ylabel("Q")
    ax_r.set_title("Quality factor vs parallel resistance")

    for r in drain:
        for ax, x in ((ax_l, r["L"] * nh), (ax_r, r["r_parallel"] / 1e3)):
            ax.plot([x], [r["Q"]], "o", ms=6, mfc="none", mec="k")
            ax.plot([x], [r["Q"]], "s", ms=11, mfc="none", mec="k",
                    label="drain pick")
    for ax in (ax_l, ax_r):
        ax.legend(fontsize=8, loc="lower right")
    fig.tight_layout()
    return fig


def render(recipe: FigureRecipe, out_dir: str) -> list[str]:
    return save_pair(build(recipe), out_dir, recipe.stem())
