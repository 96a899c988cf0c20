"""Core domain types for coordinated downlink scheduling.

A network instance fixes per-power-zone transmit powers and channel gains;
a schedule is a set of (user, base-station, power-zone) associations.  The
rules a schedule must obey:

  C1: a user may appear at only one base-station (any number of its PZs),
  C2: each (base-station, power-zone) pair serves at most one user,

and a *full* schedule additionally covers every one of the B*Z power-zones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np


@dataclass(frozen=True)
class Dimensions:
    """Problem size: U users, B base-stations, Z power-zones per BS frame."""

    num_users: int
    num_bs: int
    num_pz: int

    def __post_init__(self):
        for name in ("num_users", "num_bs", "num_pz"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")

    @property
    def z_tot(self) -> int:
        """Total number of power-zones across the network (B*Z)."""
        return self.num_bs * self.num_pz

    @property
    def num_associations(self) -> int:
        return self.num_users * self.num_bs * self.num_pz

    def schedulable(self) -> bool:
        """A full schedule exists iff U >= B: every BS needs at least one
        user of its own, and users cannot span base-stations."""
        return self.num_users >= self.num_bs


class Association(NamedTuple):
    """One (user, base-station, power-zone) assignment, all 0-based."""

    user: int
    bs: int
    pz: int


@dataclass(frozen=True)
class Schedule:
    """A duplicate-free set of associations (the decision variable)."""

    entries: frozenset[Association]

    @classmethod
    def of(cls, items: Iterable[tuple[int, int, int]]) -> "Schedule":
        return cls(frozenset(Association(*t) for t in items))

    def sorted_entries(self) -> list[Association]:
        return sorted(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


EMPTY_SCHEDULE = Schedule(frozenset())


@dataclass(frozen=True, eq=False)
class Instance:
    """Fixed-power downlink snapshot: everything needed to price associations.

    power[b, z]        transmit power of PZ z at BS b, watts
    gain_sq[u, b, z]   squared channel magnitude |h|^2, linear
    noise_w            Gaussian noise power, watts
    sinr_gap           SINR gap Gamma >= 1, linear
    """

    dims: Dimensions
    power: np.ndarray
    gain_sq: np.ndarray
    noise_w: float
    sinr_gap: float = 1.0

    def __post_init__(self):
        d = self.dims
        power = np.ascontiguousarray(np.asarray(self.power, dtype=np.float64))
        gain = np.ascontiguousarray(np.asarray(self.gain_sq, dtype=np.float64))
        if power.shape != (d.num_bs, d.num_pz):
            raise ValueError(f"power shape {power.shape} != {(d.num_bs, d.num_pz)}")
        if gain.shape != (d.num_users, d.num_bs, d.num_pz):
            raise ValueError(
                f"gain_sq shape {gain.shape} != {(d.num_users, d.num_bs, d.num_pz)}"
            )
        if not np.all(power > 0) or not np.all(np.isfinite(power)):
            raise ValueError("all powers must be finite and strictly positive")
        if not np.all(gain > 0) or not np.all(np.isfinite(gain)):
            raise ValueError("all channel gains must be finite and strictly positive")
        if not (self.noise_w > 0 and math.isfinite(self.noise_w)):
            raise ValueError("noise power must be finite and strictly positive")
        if not (self.sinr_gap >= 1 and math.isfinite(self.sinr_gap)):
            raise ValueError("sinr_gap must be >= 1 (linear)")
        power.flags.writeable = False
        gain.flags.writeable = False
        object.__setattr__(self, "power", power)
        object.__setattr__(self, "gain_sq", gain)


@dataclass(frozen=True, eq=False)
class BenefitTensor:
    """Per-association utility a[u, b, z]; every solver consumes only this."""

    dims: Dimensions
    a: np.ndarray

    def __post_init__(self):
        d = self.dims
        a = np.ascontiguousarray(np.asarray(self.a, dtype=np.float64))
        if a.shape != (d.num_users, d.num_bs, d.num_pz):
            raise ValueError(
                f"benefit shape {a.shape} != {(d.num_users, d.num_bs, d.num_pz)}"
            )
        if not np.all(np.isfinite(a)):
            raise ValueError("benefits must be finite")
        a.flags.writeable = False
        object.__setattr__(self, "a", a)


def _check_index(name: str, value: int, bound: int) -> None:
    if not 0 <= value < bound:
        raise IndexError(f"{name}={value} out of range [0, {bound})")


def sinr(inst: Instance, u: int, b: int, z: int) -> float:
    """SINR of user u served on power-zone z of base-station b.

        P[b,z] |h[u,b,z]|^2 / ( Gamma * (noise + sum_{b' != b} P[b',z] |h[u,b',z]|^2) )

    Interference comes from the *same* zone index z at the other
    base-stations: frames are synchronized network-wide.
    """
    d = inst.dims
    _check_index("u", u, d.num_users)
    _check_index("b", b, d.num_bs)
    _check_index("z", z, d.num_pz)
    interference = 0.0
    for other in range(d.num_bs):
        if other != b:
            interference += inst.power[other, z] * inst.gain_sq[u, other, z]
    signal = inst.power[b, z] * inst.gain_sq[u, b, z]
    return signal / (inst.sinr_gap * (inst.noise_w + interference))


def sinr_tensor(inst: Instance) -> np.ndarray:
    """Vectorized SINR for all (u, b, z) at once; matches sinr() pointwise."""
    signal = inst.power[np.newaxis, :, :] * inst.gain_sq  # (U, B, Z)
    total = signal.sum(axis=1, keepdims=True)             # received power per (u, z)
    interference = total - signal
    return signal / (inst.sinr_gap * (inst.noise_w + interference))


def sum_rate_benefits(inst: Instance) -> BenefitTensor:
    """Spectral-efficiency benefits a[u,b,z] = log2(1 + SINR), bps/Hz."""
    return BenefitTensor(inst.dims, np.log2(1.0 + sinr_tensor(inst)))


def schedule_utility(s: Schedule, benefits: BenefitTensor) -> float:
    """Sum of benefits over the schedule's entries (0.0 when empty).

    Summation runs in sorted (u, b, z) order so the result is reproducible
    bit-for-bit regardless of how the schedule was assembled.
    """
    a = benefits.a
    total = 0.0
    for e in s.sorted_entries():
        total += a[e.user, e.bs, e.pz]
    return total


@dataclass(frozen=True)
class Violation:
    """One broken scheduling rule; validity == empty violation list."""

    kind: str  # 'c1' | 'c2' | 'cardinality' | 'range'
    message: str


def validate_schedule(
    s: Schedule, dims: Dimensions, require_full: bool = False
) -> list[Violation]:
    """Report every rule the schedule breaks (an empty list means valid).

    Kinds: 'c1' a user appears at two base-stations; 'c2' a (bs, pz) pair is
    assigned twice; 'cardinality' (only with require_full) the schedule does
    not cover all B*Z power-zones; 'range' an entry lies outside dims.
    """
    out: list[Violation] = []
    in_range = []
    for e in s.sorted_entries():
        if (
            0 <= e.user < dims.num_users
            and 0 <= e.bs < dims.num_bs
            and 0 <= e.pz < dims.num_pz
        ):
            in_range.append(e)
        else:
            out.append(Violation("range", f"entry {tuple(e)} outside {dims}"))

    bs_of_user: dict[int, int] = {}
    user_of_pz: dict[tuple[int, int], int] = {}
    for e in in_range:
        seen_bs = bs_of_user.setdefault(e.user, e.bs)
        if seen_bs != e.bs:
            out.append(
                Violation(
                    "c1", f"user {e.user} appears at BS {seen_bs} and BS {e.bs}"
                )
            )
        pz_key = (e.bs, e.pz)
        owner = user_of_pz.setdefault(pz_key, e.user)
        if owner != e.user:
            out.append(
                Violation(
                    "c2",
                    f"power-zone {pz_key} assigned to users {owner} and {e.user}",
                )
            )
    if require_full and len(s.entries) != dims.z_tot:
        out.append(
            Violation(
                "cardinality",
                f"schedule has {len(s.entries)} entries, needs z_tot={dims.z_tot}",
            )
        )
    return out
