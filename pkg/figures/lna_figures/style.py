"""Deterministic matplotlib setup and the shared presentation idiom."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

# fixed salt keeps SVG clip-path ids stable run to run
matplotlib.rcParams["svg.hashsalt"] = "lna-figures"
matplotlib.rcParams["figure.dpi"] = 110

# marker sequence for bias-current series (0.3 ... 0.7 mA) and gains
SERIES_MARKERS = ["^", "D", "s", "o", "v", "<", ">", "p"]


def marker_for(index: int) -> str:
    return SERIES_MARKERS[index % len(SERIES_MARKERS)]


def save_pair(fig, out_dir: str, stem: str) -> list[str]:
    """Write the vector + raster pair with stable metadata."""
    paths = []
    svg = f"{out_dir}/{stem}.svg"
    png = f"{out_dir}/{stem}.png"
    fig.savefig(svg, metadata={"Date": None})
    fig.savefig(png)
    plt.close(fig)
    paths.extend([svg, png])
    return paths
