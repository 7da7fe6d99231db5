"""Figure recipes: which CSVs feed which plot, and how columns map.

One registry entry per figure kind.  Input CSVs come from the synthesis
engine's CLI exports; the scripts never recompute engine math.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .io import require_columns


@dataclass(frozen=True)
class FigureRecipe:
    kind: str                          # cx_curves | inductor_space |
    #                                    passives_vs_width | nf_iip3
    inputs: dict[str, str]             # role -> CSV path
    columns: dict[str, str] = field(default_factory=dict)
    thresholds: dict[str, float] = field(default_factory=dict)
    series_label: str = ""             # legend prefix for series values
    out_stem: str = ""

    def stem(self) -> str:
        return self.out_stem or self.kind


# role -> required columns, per figure kind
REQUIRED = {
    "cx_curves": {"curves": ["id", "w", "cx"]},
    "inductor_space": {
        "library": ["L", "Q", "r_parallel"],
        "envelopes": ["kind", "L", "Q", "r_parallel"],
    },
    "passives_vs_width": {
        "sweep": ["w1", "ls", "lg", "cx", "status"],
    },
    "nf_iip3": {
        "sweep": ["w1", "nf_db", "iip3_dbm", "status"],
    },
}


def validate(recipe: FigureRecipe) -> None:
    if recipe.kind not in REQUIRED:
        raise ValueError(f"unknown figure kind {recipe.kind!r}")
    for role, columns in REQUIRED[recipe.kind].items():
        if role not in recipe.inputs:
            raise ValueError(f"recipe for {recipe.kind} needs input {role!r}")
        extra = [recipe.columns.get("series")] if recipe.columns.get("series") else []
        require_columns(recipe.inputs[role], columns + extra)


def cx_curves_recipe(curves_csv: str) -> FigureRecipe:
    """Hypothetical C_X(W1) family for several bias currents."""
    return FigureRecipe(kind="cx_curves", inputs={"curves": curves_csv},
                        series_label="id")


def inductor_space_recipe(library_csv: str, envelopes_csv: str) -> FigureRecipe:
    """Q vs L and Q vs parallel resistance with selection envelopes."""
    return FigureRecipe(kind="inductor_space",
                        inputs={"library": library_csv,
                                "envelopes": envelopes_csv})


def passives_recipe(sweep_csv: str, series: str = "id",
                    out_stem: str = "") -> FigureRecipe:
    """Passive values versus width, one series per current or gain."""
    return FigureRecipe(kind="passives_vs_width", inputs={"sweep": sweep_csv},
                        columns={"series": series},
                        series_label="id" if series == "id" else "gain",
                        out_stem=out_stem)


def nf_iip3_recipe(sweep_csv: str, nf_max_db: float = 3.0,
                   iip3_min_dbm: float = -4.0) -> FigureRecipe:
    """Noise figure and IIP3 versus width with requirement overlays."""
    return FigureRecipe(kind="nf_iip3", inputs={"sweep": sweep_csv},
                        columns={"series": "id"},
                        thresholds={"nf_db": nf_max_db,
                                    "iip3_dbm": iip3_min_dbm})
