"""Noise figure and IIP3 versus width with receiver-requirement overlays.

The dashed horizontal lines carry the spec thresholds from the recipe
(defaults: NF below 3 dB, IIP3 above -4 dBm)."""

from __future__ import annotations

from .io import load_rows, series_by
from .recipes import FigureRecipe, validate
from .style import marker_for, plt, save_pair


def build(recipe: FigureRecipe):
    validate(recipe)
    rows = load_rows(recipe.inputs["sweep"])
    series_col = recipe.columns.get("series", "id")
    fig, (ax_nf, ax_ip) = plt.subplots(2, 1, figsize=(5.2, 6.2), sharex=True)
    for i, (value, group) in enumerate(series_by(rows, series_col).items()):
        group = sorted(group, key=lambda r: r["w1"])
        feas = [r for r in group if r["status"] == "Feasible"]
        xs = [r["w1"] * 1e6 for r in feas]
        ax_nf.plot(xs, [r["nf_db"] for r in feas], marker=marker_for(i),
                   ms=4, lw=1.0, mfc="none", label=f"ID = {value * 1e3:g} mA")
        ax_ip.plot(xs, [r["iip3_dbm"] for r in feas], marker=marker_for(i),
                   ms=4, lw=1.0, mfc="none")
    ax_nf.axhline(recipe.thresholds["nf_db"], color="k", ls="--", lw=1.0)
    ax_ip.axhline(recipe.thresholds["iip3_dbm"], color="k", ls="--", lw=1.0)
    ax_nf.set_ylabel("NF (dB)")
    ax_ip.set_ylabel("IIP3 (dBm)")
    ax_ip.set_xlabel("W1 (um)")
    ax_nf.legend(fontsize=7)
    fig.tight_layout()
    return fig


def render(recipe: FigureRecipe, out_dir: str) -> list[str]:
    return save_pair(build(recipe), out_dir, recipe.stem())
