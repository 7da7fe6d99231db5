"""Figure regeneration from lna-forge CSV exports."""

from . import fig3, fig5, fig67, fig8
from .io import EmptySelection, MissingColumns
from .recipes import (FigureRecipe, cx_curves_recipe, inductor_space_recipe,
                      nf_iip3_recipe, passives_recipe, validate)

RENDERERS = {
    "cx_curves": fig3.render,
    "inductor_space": fig5.render,
    "passives_vs_width": fig67.render,
    "nf_iip3": fig8.render,
}


def render(recipe: FigureRecipe, out_dir: str) -> list[str]:
    """Dispatch a recipe to its renderer; returns the written paths."""
    return RENDERERS[recipe.kind](recipe, out_dir)

__version__ = "0.1.0"
