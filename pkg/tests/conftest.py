import itertools

import numpy as np
import pytest

from cransched import BenefitTensor, Dimensions, Instance
from cransched.graph import encode


def uniform_benefits(dims: Dimensions, value: float = 1.0) -> BenefitTensor:
    a = np.full((dims.num_users, dims.num_bs, dims.num_pz), value, dtype=float)
    return BenefitTensor(dims, a)


def brute_force_full_schedules(dims: Dimensions) -> set[frozenset[int]]:
    """Independent enumeration of full schedules: every slot-to-user map
    that books each user on at most one BS, as vertex-id sets."""
    slots = [(b, z) for b in range(dims.num_bs) for z in range(dims.num_pz)]
    out = set()
    for users in itertools.product(range(dims.num_users), repeat=len(slots)):
        bs_of = {}
        ok = True
        for (b, _z), u in zip(slots, users):
            if bs_of.setdefault(u, b) != b:
                ok = False
                break
        if ok:
            out.add(
                frozenset(encode(dims, u, b, z) for (b, z), u in zip(slots, users))
            )
    return out


def random_benefits(dims: Dimensions, rng: np.random.Generator) -> BenefitTensor:
    a = rng.uniform(0.1, 10.0, size=(dims.num_users, dims.num_bs, dims.num_pz))
    return BenefitTensor(dims, a)


def tiny_instance(dims: Dimensions, rng: np.random.Generator) -> Instance:
    """A physically plausible instance without going through the simulator."""
    power = rng.uniform(0.05, 0.2, size=(dims.num_bs, dims.num_pz))
    gain = rng.uniform(1e-12, 1e-8, size=(dims.num_users, dims.num_bs, dims.num_pz))
    return Instance(dims, power, gain, noise_w=3.45e-14)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)
