"""Synthetic network generator: hexagonal sites, SUI path loss, shadowing,
fast fading, and the dBm/Hz power bookkeeping that turns a parameter set
plus a seed into a concrete Instance.

Randomness is split into named sub-streams, one per (quantity, user), so
e.g. raising the user count or toggling fading never disturbs the draws of
existing users.  Everything is reproducible from SimParams.seed alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from shapely.geometry import MultiPoint, Point

from .model import Dimensions, Instance

SPEED_OF_LIGHT = 299_792_458.0

# SUI reference distance and terrain-B constants (suburban, flat, light trees).
SUI_D0_M = 100.0
SUI_TERRAIN_B = (4.0, 0.0065, 17.1)  # a, b [1/m], c [m]

# Base-station counts with a native layout; anything else needs allow_any_b.
NATIVE_BS_COUNTS = (1, 3, 4, 7, 9, 21)

_DOMAIN_POSITION = 0
_DOMAIN_SHADOWING = 1
_DOMAIN_FADING = 2


def dbm_to_watts(dbm: float) -> float:
    return 10.0 ** ((dbm - 30.0) / 10.0)


def watts_to_dbm(watts: float) -> float:
    if watts <= 0:
        raise ValueError("power must be positive")
    return 10.0 * math.log10(watts) + 30.0


def dbm_per_hz_to_watts(dbm_per_hz: float, bandwidth_hz: float) -> float:
    """Total power in watts of a flat spectral density over a bandwidth."""
    if bandwidth_hz <= 0:
        raise ValueError("bandwidth must be positive")
    return dbm_to_watts(dbm_per_hz + 10.0 * math.log10(bandwidth_hz))


@dataclass(frozen=True)
class SimParams:
    """Knobs of the synthetic network.

    Powers are spectral densities (dBm/Hz) and get scaled by the per-zone
    bandwidth, so changing Z automatically re-splits the band.  shadow and
    fading control the two random channel effects; d_min_m keeps users out
    of the immediate vicinity of a mast where the path-loss model (and the
    SINR) would explode.
    """

    cell_to_cell_m: float = 500.0
    carrier_hz: float = 2.5e9
    bs_height_m: float = 30.0
    user_height_m: float = 1.5
    shadow_sigma_db: float = 8.0
    bandwidth_hz: float = 1e7
    power_dbm_per_hz: float = -42.60
    noise_dbm_per_hz: float = -168.60
    sinr_gap_db: float = 0.0
    fading: str = "rayleigh"
    seed: int = 0
    d_min_m: float = 20.0

    def __post_init__(self) -> None:
        for name in ("cell_to_cell_m", "carrier_hz", "bs_height_m", "user_height_m", "bandwidth_hz"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.shadow_sigma_db < 0:
            raise ValueError("shadow_sigma_db must be >= 0")
        if self.sinr_gap_db < 0:
            raise ValueError("sinr_gap_db must be >= 0 (linear gap >= 1)")
        if self.fading not in ("rayleigh", "none"):
            raise ValueError(f"fading must be 'rayleigh' or 'none', got {self.fading!r}")
        if not isinstance(self.seed, int) or self.seed < 0:
            raise ValueError("seed must be a nonnegative integer")
        if self.d_min_m < 0:
            raise ValueError("d_min_m must be >= 0")


@dataclass(frozen=True, eq=False)
class NetworkLayout:
    """Site and user coordinates in meters; arrays are (B, 2) and (U, 2)."""

    bs_positions: np.ndarray
    user_positions: np.ndarray

    def __post_init__(self) -> None:
        bs = np.asarray(self.bs_positions, dtype=float)
        users = np.asarray(self.user_positions, dtype=float)
        if bs.ndim != 2 or bs.shape[1] != 2 or users.ndim != 2 or users.shape[1] != 2:
            raise ValueError("positions must be (n, 2) arrays")
        bs.setflags(write=False)
        users.setflags(write=False)
        object.__setattr__(self, "bs_positions", bs)
        object.__setattr__(self, "user_positions", users)

    def distances(self) -> np.ndarray:
        """User-to-site distance matrix, shape (U, B)."""
        diff = self.user_positions[:, None, :] - self.bs_positions[None, :, :]
        return np.hypot(diff[..., 0], diff[..., 1])


def _rng(params: SimParams, domain: int, index: int) -> np.random.Generator:
    seq = np.random.SeedSequence(entropy=params.seed, spawn_key=(domain, index))
    return np.random.Generator(np.random.PCG64(seq))


def _grid_positions(count: int, cols: int, spacing: float) -> np.ndarray:
    """Rectangular patch of a triangular lattice: odd rows shift half a step."""
    pts = []
    row_h = spacing * math.sqrt(3.0) / 2.0
    row = 0
    while len(pts) < count:
        x0 = spacing / 2.0 if row % 2 else 0.0
        for col in range(cols):
            if len(pts) == count:
                break
            pts.append((x0 + col * spacing, row * row_h))
        row += 1
    return np.array(pts, dtype=float)


def _ring_positions(count: int, spacing: float) -> np.ndarray:
    """Center site plus concentric lattice rings, nearest (then lowest
    angle) first, truncated to count."""
    sites = []
    e1 = (spacing, 0.0)
    e2 = (spacing / 2.0, spacing * math.sqrt(3.0) / 2.0)
    reach = 4  # lattice shells; plenty for the counts used here
    for m in range(-reach, reach + 1):
        for n in range(-reach, reach + 1):
            x = m * e1[0] + n * e2[0]
            y = m * e1[1] + n * e2[1]
            r = math.hypot(x, y)
            theta = math.atan2(y, x) % (2.0 * math.pi)
            sites.append((round(r, 6), theta, x, y))
    sites.sort()
    if count > len(sites):
        raise ValueError(f"ring construction too small for B={count}")
    return np.array([(x, y) for _, _, x, y in sites[:count]], dtype=float)


def bs_grid(num_bs: int, spacing: float, allow_any_b: bool = False) -> np.ndarray:
    """Site coordinates for num_bs base-stations, spaced `spacing` apart.

    1 sits at the origin; 3, 4, 9 form offset-row patches; 7 and 21 are a
    center with one and two-plus rings.  Other counts are refused unless
    allow_any_b is set, in which case a generic patch with ceil(sqrt(B))
    columns is produced.
    """
    if num_bs < 1:
        raise ValueError("num_bs must be >= 1")
    if num_bs == 1:
        return np.zeros((1, 2))
    if num_bs in (3, 4):
        return _grid_positions(num_bs, 2, spacing)
    if num_bs == 9:
        return _grid_positions(9, 3, spacing)
    if num_bs in (7, 21):
        return _ring_positions(num_bs, spacing)
    if not allow_any_b:
        raise ValueError(
            f"no native layout for B={num_bs} (choose from {NATIVE_BS_COUNTS} "
            "or pass allow_any_b / an explicit layout)"
        )
    return _grid_positions(num_bs, math.ceil(math.sqrt(num_bs)), spacing)


def generate_layout(
    dims: Dimensions,
    params: SimParams,
    bs_positions: Sequence[tuple[float, float]] | np.ndarray | None = None,
    allow_any_b: bool = False,
) -> NetworkLayout:
    """Place sites on the lattice (or take given ones) and drop users
    uniformly over the coverage region.

    The region is the convex hull of the sites padded by one cell radius
    (half the site spacing); draws closer than d_min_m to any site are
    rejected and retried.  User u's coordinates come from u's own random
    stream, so layouts for different U agree on their common prefix.
    """
    if bs_positions is None:
        bs = bs_grid(dims.num_bs, params.cell_to_cell_m, allow_any_b)
    else:
        bs = np.asarray(bs_positions, dtype=float)
        if bs.shape != (dims.num_bs, 2):
            raise ValueError(f"expected {(dims.num_bs, 2)} site array, got {bs.shape}")
    region = MultiPoint([tuple(p) for p in bs]).convex_hull.buffer(
        params.cell_to_cell_m / 2.0
    )
    minx, miny, maxx, maxy = region.bounds
    users = np.empty((dims.num_users, 2))
    for u in range(dims.num_users):
        rng = _rng(params, _DOMAIN_POSITION, u)
        for _ in range(100_000):
            x = rng.uniform(minx, maxx)
            y = rng.uniform(miny, maxy)
            if not region.covers(Point(x, y)):
                continue
            if np.hypot(bs[:, 0] - x, bs[:, 1] - y).min() >= params.d_min_m:
                users[u] = (x, y)
                break
        else:  # pragma: no cover - d_min would have to swallow the region
            raise RuntimeError("could not place a user; d_min_m too large?")
    return NetworkLayout(bs, users)


def path_loss_db(distance_m: float, params: SimParams) -> float:
    """SUI suburban path loss (terrain type B) in dB at a given distance.

    Below the 100 m reference distance the model is clamped flat; the usual
    frequency and receiver-height correction terms are applied for carriers
    away from 2 GHz and antennas away from 2 m.
    """
    if distance_m <= 0:
        raise ValueError("distance must be positive")
    a, b, c = SUI_TERRAIN_B
    wavelength = SPEED_OF_LIGHT / params.carrier_hz
    intercept = 20.0 * math.log10(4.0 * math.pi * SUI_D0_M / wavelength)
    gamma = a - b * params.bs_height_m + c / params.bs_height_m
    x_f = 6.0 * math.log10(params.carrier_hz / 2e9)
    x_h = -10.8 * math.log10(params.user_height_m / 2.0)
    d = max(distance_m, SUI_D0_M)
    return intercept + 10.0 * gamma * math.log10(d / SUI_D0_M) + x_f + x_h


def shadowing_db(params: SimParams, num_users: int, num_bs: int) -> np.ndarray:
    """Log-normal shadowing offsets in dB, shape (U, B): one draw per
    user-site link, shared by all of that link's power-zones."""
    out = np.empty((num_users, num_bs))
    for u in range(num_users):
        out[u] = _rng(params, _DOMAIN_SHADOWING, u).normal(0.0, params.shadow_sigma_db, num_bs)
    return out


def fading_gain(params: SimParams, dims: Dimensions) -> np.ndarray:
    """Small-scale power gains, shape (U, B, Z): unit-mean exponential per
    association ('rayleigh'), or all ones ('none')."""
    shape = (dims.num_users, dims.num_bs, dims.num_pz)
    if params.fading == "none":
        return np.ones(shape)
    out = np.empty(shape)
    for u in range(dims.num_users):
        out[u] = _rng(params, _DOMAIN_FADING, u).exponential(1.0, shape[1:])
    return out


def generate_instance(
    dims: Dimensions,
    params: SimParams,
    bs_positions: Sequence[tuple[float, float]] | np.ndarray | None = None,
    allow_any_b: bool = False,
) -> Instance:
    """Draw a full scheduling instance: layout, large- and small-scale
    channel effects, and per-zone power/noise levels.

    The band splits evenly into Z zones of bandwidth_hz/Z each; every site
    transmits the same spectral density, so P[b][z] is uniform.  Squared
    channel magnitudes combine SUI path loss, shadowing, and fading:
    gain_sq = 10^(-(PL + S)/10) * F.
    """
    layout = generate_layout(dims, params, bs_positions, allow_any_b)
    w_z = params.bandwidth_hz / dims.num_pz
    power = np.full(
        (dims.num_bs, dims.num_pz), dbm_per_hz_to_watts(params.power_dbm_per_hz, w_z)
    )
    noise_w = dbm_per_hz_to_watts(params.noise_dbm_per_hz, w_z)

    dist = layout.distances()
    pl = np.empty_like(dist)
    for u in range(dims.num_users):
        for b in range(dims.num_bs):
            pl[u, b] = path_loss_db(dist[u, b], params)
    large_scale_db = pl + shadowing_db(params, dims.num_users, dims.num_bs)
    gain_sq = 10.0 ** (-large_scale_db[:, :, None] / 10.0) * fading_gain(params, dims)

    return Instance(
        dims=dims,
        power=power,
        gain_sq=gain_sq,
        noise_w=noise_w,
        sinr_gap=10.0 ** (params.sinr_gap_db / 10.0),
    )
