"""Shipping gate for the figure package.

Two checks: plotted group means must agree with independently computed
CSV means to 1e-9, and the standard two-algorithm user sweep (seven
x-points) must render cleanly.  A third check drives the real `cransched
sweep` command when it is installed, so the CSV contract is exercised
end to end rather than only against hand-rolled files.
"""

import csv
import shutil
import statistics
import subprocess

import pytest

from plotview import PlotSpec, render

from csv_cases import build_fig4_csv

pytestmark = pytest.mark.acceptance


def group_means(csv_path, x_col):
    groups = {}
    with open(csv_path, newline="") as fh:
        for row in csv.DictReader(fh):
            if row[x_col] and row["sum_rate_bps_hz"]:
                key = (row["algorithm"], float(row[x_col]))
                groups.setdefault(key, []).append(float(row["sum_rate_bps_hz"]))
    return {k: statistics.fmean(v) for k, v in groups.items()}


def test_plotted_means_match_the_csv_to_1e9(tmp_path):
    path = build_fig4_csv(tmp_path)
    expected = group_means(path, "U")
    series = render(PlotSpec(csv_path=path, x_axis="U", out_path=tmp_path / "f.png"))
    checked = 0
    for s in series:
        for x, mean in zip(s.x, s.mean):
            assert abs(mean - expected[(s.label, x)]) < 1e-9
            checked += 1
    assert checked == len(expected) == 14


def test_user_sweep_renders_two_series_with_seven_points(tmp_path):
    path = build_fig4_csv(tmp_path)
    out = tmp_path / "users.png"
    series = render(PlotSpec(csv_path=path, x_axis="U", out_path=out))
    assert [s.label for s in series] == ["opt", "heu"]
    assert all(len(s.x) == 7 for s in series)
    assert all(s.x == tuple(range(4, 11)) for s in series)
    assert out.stat().st_size > 0


@pytest.mark.skipif(shutil.which("cransched") is None,
                    reason="scheduler CLI not installed")
def test_real_sweep_csv_flows_through_unchanged(tmp_path):
    cfg = tmp_path / "users.cfg"
    cfg.write_text(
        "sweep = num_users\n"
        "values = 4,5,6,7,8,9,10\n"
        "bs = 3\n"
        "pz = 2\n"
        "shadow_db = 8.0\n"
        "algorithms = opt,heu\n"
        "num_seeds = 3\n"
        "seed = 11\n"
    )
    csv_path = tmp_path / "users.csv"
    proc = subprocess.run(
        ["cransched", "sweep", str(cfg), "--out", str(csv_path), "--jobs", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr

    out = tmp_path / "users.png"
    series = render(PlotSpec(csv_path=csv_path, x_axis="U", out_path=out))
    expected = group_means(csv_path, "U")
    assert sorted(s.label for s in series) == ["heu", "opt"]
    for s in series:
        assert len(s.x) == 7
        for x, mean in zip(s.x, s.mean):
            assert abs(mean - expected[(s.label, x)]) < 1e-9
    assert out.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
