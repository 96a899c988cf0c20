"""Offline figure generator for scheduling sweep CSVs.

One series per algorithm, mean sum-rate against U, Z, or p, standard
errors as bars.  Everything flows through PlotSpec -> render().
"""

from .figure import SCHEMA, X_COLUMNS, PlotSpec, Series, render, summarize

__all__ = [
    "SCHEMA",
    "X_COLUMNS",
    "PlotSpec",
    "Series",
    "render",
    "summarize",
]
