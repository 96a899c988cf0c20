"""Walk through the pieces of the channel model, one at a time.

Shows the unit bookkeeping (spectral densities integrated over a zone's
bandwidth), the SUI terrain-B distance law, and sample statistics of the
two random channel effects.
"""

import numpy as np

from cransched import (
    Dimensions,
    SimParams,
    bs_grid,
    dbm_per_hz_to_watts,
    fading_gain,
    path_loss_db,
    shadowing_db,
    watts_to_dbm,
)

params = SimParams()  # 2.5 GHz, 500 m sites, h_b=30 m, h_r=1.5 m, sigma=8 dB

# --- power bookkeeping ------------------------------------------------
# Each site spreads -42.60 dBm/Hz over the band; a zone owns 1/Z of it.
zone_bw = params.bandwidth_hz / 4
p_w = dbm_per_hz_to_watts(params.power_dbm_per_hz, zone_bw)
n_w = dbm_per_hz_to_watts(params.noise_dbm_per_hz, zone_bw)
print(f"zone bandwidth      {zone_bw/1e6:.1f} MHz")
print(f"tx power per zone   {p_w:.4f} W  ({watts_to_dbm(p_w):.2f} dBm)")
print(f"noise per zone      {n_w:.3e} W  ({watts_to_dbm(n_w):.2f} dBm)")
print()

# --- distance law -----------------------------------------------------
# Below the 100 m reference distance the loss is clamped; past it the
# slope is 10*gamma dB per decade with gamma set by the antenna height.
print("SUI terrain-B path loss:")
for d in (50, 100, 200, 500, 1000, 2000):
    print(f"  {d:>5} m  {path_loss_db(float(d), params):8.2f} dB")
print()

# --- random effects ---------------------------------------------------
dims = Dimensions(num_users=200, num_bs=3, num_pz=4)
shadow = shadowing_db(params, 500, 100)
fade = fading_gain(params, dims)
print(f"shadowing: std {shadow.std(ddof=1):.3f} dB "
      f"(configured {params.shadow_sigma_db}), mean {shadow.mean():+.3f} dB")
print(f"fading:    mean power {fade.mean():.4f} (unit mean by design), "
      f"min {fade.min():.2e}")
print()

# --- site geometry ----------------------------------------------------
for b in (3, 7, 21):
    sites = bs_grid(b, params.cell_to_cell_m)
    radius = np.hypot(sites[:, 0], sites[:, 1]).max()
    print(f"B={b:<2} farthest site sits {radius:7.1f} m from the origin")
