"""Recipes that regenerate the figure data as CSV + SVG.

``fig1_scaled`` is a desk-scale version of a run at n = 10**6 sampled once
per million zeros: it uses the first 100,000 zeros with a checkpoint every
1000 zeros and plots the checkpoints against their ordinal.
"""

import math
from dataclasses import dataclass

import numpy as np

from .svg import emit_svg
from .term_engine import series_to_csv, sum_series


@dataclass(frozen=True)
class Recipe:
    figure_id: str
    n: int
    zeros: int
    quantity: str
    title: str
    stride: int = 1000


RECIPES = {
    r.figure_id: r
    for r in (
        Recipe("fig1_scaled", 10**6, 100_000, "checkpoint_re",
               "Accumulated real part, n = 10^6, checkpoint every 1000 zeros (100,000 zeros)"),
        Recipe("fig3", 1295, 30_000, "cum_re", "Accumulated real part, 30,000 zeros, n = 1295"),
        Recipe("fig4", 1302, 30_000, "cum_re", "Accumulated real part, 30,000 zeros, n = 1302"),
        Recipe("fig5", 1302, 30_000, "cum_im_minus_pi_k",
               "Accumulated imaginary part minus pi*k, 30,000 zeros, n = 1302"),
        Recipe("fig7", 12, 4_000, "re_term", "Real part of li(12^rho), 4,000 zeros"),
        Recipe("fig8", 12, 4_000, "cum_re", "Accumulated real part, 4,000 zeros, n = 12"),
    )
}


def figure_xy(recipe, series):
    """The (x, y) data plotted for ``recipe``."""
    k = series.indices.astype(float)
    q = recipe.quantity
    if q == "checkpoint_re":
        ys = np.array([c[1] for c in series.checkpoints])
        return np.arange(1, ys.size + 1, dtype=float), ys
    if q == "cum_re":
        return k, series.cum_re
    if q == "re_term":
        return k, series.terms.real
    if q == "cum_im_minus_pi_k":
        # each term carries +i*pi; removing it exposes the oscillation
        return k, series.cum_im - math.pi * (k - series.start_index + 1)
    raise ValueError(f"unknown quantity {q!r}")


def write_checkpoints_csv(series, stream):
    lines = ["checkpoint,index,cum_re,cum_im"]
    for j, (idx, re, im) in enumerate(series.checkpoints, start=1):
        lines.append(f"{j},{idx},{re:.17g},{im:.17g}")
    stream.write(("\n".join(lines) + "\n").encode("ascii"))


def run_recipe(recipe, catalog, out_dir, jobs=1):
    """Compute the series for ``recipe`` and write ``<id>.csv`` and ``<id>.svg``.

    Returns the ``TermSeries`` and the two output paths.
    """
    cat = catalog.head(recipe.zeros)
    series = sum_series(cat, recipe.n, checkpoint_stride=recipe.stride, jobs=jobs)
    csv_path = out_dir / f"{recipe.figure_id}.csv"
    svg_path = out_dir / f"{recipe.figure_id}.svg"
    with open(csv_path, "wb") as fh:
        if recipe.quantity == "checkpoint_re":
            write_checkpoints_csv(series, fh)
        else:
            series_to_csv(series, fh)
    xs, ys = figure_xy(recipe, series)
    with open(svg_path, "wb") as fh:
        emit_svg(xs, ys, recipe.title, fh)
    return series, csv_path, svg_path
