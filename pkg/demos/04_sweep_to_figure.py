"""End-to-end: sweep the user count, collect a CSV, draw the figure.

Same flow as `cransched sweep` + `plotview`, but driven from Python so
the intermediate objects are visible.  Output lands in demos/out/.
"""

import statistics
from collections import defaultdict
from csv import DictReader
from pathlib import Path

from cransched import parse_sweep_config, run_sweep

CONFIG = """\
# sum-rate vs. user count, 3 sites x 4 zones
sweep = num_users
values = 3,4,5,6,7,8,9
bs = 3
pz = 4
shadow_db = 8.0
algorithms = opt,heu
num_seeds = 10
seed = 2026
"""

out_dir = Path(__file__).parent / "out"
out_dir.mkdir(exist_ok=True)
csv_path = out_dir / "users_sweep.csv"

cfg = parse_sweep_config(CONFIG, source="<demo>")
summary = run_sweep(cfg, out_path=csv_path, check=True)
print(f"wrote {summary.num_rows} rows to {csv_path}")
print(f"blanking relaxation tight in {summary.blanking_full}/{summary.blanking_runs} runs"
      if summary.blanking_runs else "blanking not part of this sweep")
print()

# fold the CSV into mean sum-rate per (algorithm, U)
groups = defaultdict(list)
with open(csv_path, newline="") as fh:
    for row in DictReader(fh):
        if row["sum_rate_bps_hz"]:
            groups[(row["algorithm"], int(row["U"]))].append(
                float(row["sum_rate_bps_hz"])
            )

algos = sorted({a for a, _ in groups})
xs = sorted({u for _, u in groups})
print(f"{'U':>3}" + "".join(f" {a:>12}" for a in algos) + f" {'gap %':>8}")
for u in xs:
    means = {a: statistics.fmean(groups[(a, u)]) for a in algos}
    gap = 100.0 * (means["opt"] - means["heu"]) / means["opt"]
    print(f"{u:>3}" + "".join(f" {means[a]:>12.4f}" for a in algos) + f" {gap:>8.3f}")

# the greedy gap lives at the scarce end (U close to B): with users to
# spare, each zone has several near-best candidates and greedy is enough


# the companion package turns the same CSV into a figure
try:
    from plotview import PlotSpec, render
except ImportError:
    print("\ninstall the plotview package to render this CSV as a figure")
else:
    png_path = out_dir / "users_sweep.png"
    series = render(PlotSpec(csv_path=csv_path, x_axis="U", out_path=png_path))
    print(f"\nrendered {len(series)} series to {png_path}")
