"""Fold a sweep CSV into per-algorithm mean curves and draw them.

The input contract is the CSV written by `cransched sweep`:

    seed,U,B,Z,shadow_sigma_db,p,algorithm,sum_rate_bps_hz,solver_nodes,runtime_ms

Rows group by (algorithm, x value); each group contributes one point
whose height is the mean sum-rate and whose error bar is one standard
error over the rows behind it.  Cells the sweep left blank (an errored
run's rate, or the p column for algorithms that take no fraction) drop
out of the aggregation rather than poisoning it.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, NamedTuple

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

SCHEMA = (
    "seed",
    "U",
    "B",
    "Z",
    "shadow_sigma_db",
    "p",
    "algorithm",
    "sum_rate_bps_hz",
    "solver_nodes",
    "runtime_ms",
)
X_COLUMNS = ("U", "Z", "p")
Y_COLUMN = "sum_rate_bps_hz"

_X_LABELS = {
    "U": "number of users U",
    "Z": "power zones per site Z",
    "p": "fraction of associations kept p",
}


@dataclass(frozen=True)
class PlotSpec:
    """What to draw: which CSV, which x column, which rows, and where to."""

    csv_path: str | Path
    x_axis: str
    out_path: str | Path
    filters: tuple[tuple[str, str], ...] = ()

    def __post_init__(self) -> None:
        if self.x_axis not in X_COLUMNS:
            raise ValueError(f"x_axis must be one of {X_COLUMNS}, got {self.x_axis!r}")


class Series(NamedTuple):
    """One algorithm's curve, point by point."""

    label: str
    x: tuple[float, ...]
    mean: tuple[float, ...]
    se: tuple[float, ...]
    n: tuple[int, ...]


def _read(csv_path: str | Path) -> tuple[list[str], list[dict[str, str]]]:
    with open(csv_path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = list(reader.fieldnames or ())
        missing = [c for c in SCHEMA if c not in header]
        if missing:
            raise ValueError(f"{csv_path}: missing columns: {', '.join(missing)}")
        return header, list(reader)


def _matches(cell: str, wanted: str) -> bool:
    # numeric columns round-trip through repr, so "8" must match "8.0"
    try:
        return float(cell) == float(wanted)
    except ValueError:
        return cell == wanted


def summarize(
    csv_path: str | Path,
    x_axis: str,
    filters: Iterable[tuple[str, str]] = (),
) -> tuple[Series, ...]:
    """Aggregate the CSV into one Series per algorithm.

    Series keep the order algorithms first appear in the file; x values
    sort ascending.  Raises ValueError for a missing column, a filter on
    a column the file does not have, or a selection with nothing left to
    plot.
    """
    if x_axis not in X_COLUMNS:
        raise ValueError(f"x_axis must be one of {X_COLUMNS}, got {x_axis!r}")
    header, rows = _read(csv_path)
    wanted = tuple(filters)
    for key, _ in wanted:
        if key not in header:
            raise ValueError(f"no such column: {key!r} (file has {', '.join(header)})")

    groups: dict[str, dict[float, list[float]]] = {}
    order: list[str] = []
    for row in rows:
        if not all(_matches(row[k], v) for k, v in wanted):
            continue
        if not row[x_axis] or not row[Y_COLUMN]:
            continue
        label = row["algorithm"]
        if label not in groups:
            groups[label] = {}
            order.append(label)
        groups[label].setdefault(float(row[x_axis]), []).append(float(row[Y_COLUMN]))

    if not order:
        raise ValueError("empty selection: no plottable rows left after filters")

    series = []
    for label in order:
        xs = sorted(groups[label])
        means, ses, ns = [], [], []
        for xv in xs:
            ys = groups[label][xv]
            m = math.fsum(ys) / len(ys)
            if len(ys) > 1:
                var = math.fsum((y - m) ** 2 for y in ys) / (len(ys) - 1)
                se = math.sqrt(var / len(ys))
            else:
                se = 0.0
            means.append(m)
            ses.append(se)
            ns.append(len(ys))
        series.append(Series(label, tuple(xs), tuple(means), tuple(ses), tuple(ns)))
    return tuple(series)


def _savefig_options(out_path: Path) -> dict:
    # strip the volatile metadata so identical input gives identical bytes
    suffix = out_path.suffix.lower()
    if suffix == ".svg":
        return {"metadata": {"Date": None}}
    if suffix == ".pdf":
        return {"metadata": {"CreationDate": None}}
    return {}


def render(spec: PlotSpec) -> tuple[Series, ...]:
    """Draw the spec to its output path and return the plotted series."""
    series = summarize(spec.csv_path, spec.x_axis, spec.filters)
    out_path = Path(spec.out_path)

    with matplotlib.rc_context({"svg.hashsalt": "plotview"}):
        fig, ax = plt.subplots(figsize=(6.4, 4.4), dpi=130)
        for s in series:
            ax.errorbar(s.x, s.mean, yerr=s.se, marker="o", capsize=3, label=s.label)
        ax.set_xlabel(_X_LABELS[spec.x_axis])
        ax.set_ylabel("sum-rate [bps/Hz]")
        ax.grid(True, alpha=0.3)
        ax.legend(title="algorithm")
        fig.text(
            0.99,
            0.01,
            "error bars: ±1 standard error over seeds",
            ha="right",
            va="bottom",
            fontsize=7,
            color="0.4",
        )
        fig.tight_layout(rect=(0, 0.03, 1, 1))
        try:
            fig.savefig(out_path, **_savefig_options(out_path))
        finally:
            plt.close(fig)
    return series
