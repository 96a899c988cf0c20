"""Branch-and-bound solvers against the brute-force oracle."""

import numpy as np
import pytest

from cransched import (
    STATUS_INFEASIBLE,
    STATUS_OPTIMAL,
    BenefitTensor,
    Dimensions,
    brute_force_schedule,
    build_graph,
    schedule_utility,
    solve_exact,
    solve_exact_blanking,
    validate_schedule,
)
from conftest import random_benefits, uniform_benefits


def test_uniform_weights_small_case():
    # Both full cliques weigh 4.0; either is an acceptable argmax.
    dims = Dimensions(2, 2, 2)
    g = build_graph(dims, uniform_benefits(dims))
    res = solve_exact(g)
    assert res.status == STATUS_OPTIMAL
    assert res.weight == pytest.approx(4.0, abs=1e-12)
    assert len(res.schedule) == 4
    assert validate_schedule(res.schedule, dims, require_full=True) == []


def test_classic_greedy_trap_optimum():
    dims = Dimensions(2, 2, 1)
    a = np.array([[[10.0], [9.0]], [[9.0], [1.0]]])
    g = build_graph(dims, BenefitTensor(dims, a))
    res = solve_exact(g)
    assert res.weight == pytest.approx(18.0, abs=1e-12)
    assert {(e.user, e.bs) for e in res.schedule.entries} == {(0, 1), (1, 0)}


def test_too_few_users_is_infeasible():
    dims = Dimensions(2, 3, 2)
    g = build_graph(dims, uniform_benefits(dims))
    res = solve_exact(g)
    assert res.status == STATUS_INFEASIBLE
    assert res.weight == 0.0
    assert len(res.schedule) == 0


def test_matches_brute_force_on_random_instances(rng):
    for trial in range(30):
        dims = Dimensions(
            int(rng.integers(2, 5)), int(rng.integers(2, 4)), int(rng.integers(1, 4))
        )
        bens = random_benefits(dims, rng)
        g = build_graph(dims, bens)
        fast = solve_exact(g)
        slow = brute_force_schedule(dims, bens)
        assert fast.status == slow.status
        if fast.status == STATUS_OPTIMAL:
            assert fast.weight == pytest.approx(slow.weight, abs=1e-9)
            assert validate_schedule(fast.schedule, dims, require_full=True) == []


def test_reported_weight_is_recomputed_utility(rng):
    dims = Dimensions(3, 2, 2)
    bens = random_benefits(dims, rng)
    g = build_graph(dims, bens)
    res = solve_exact(g)
    assert res.weight == schedule_utility(res.schedule, bens)


def test_search_stats_populated(rng):
    dims = Dimensions(3, 3, 2)
    g = build_graph(dims, random_benefits(dims, rng))
    res = solve_exact(g)
    assert res.stats.nodes_explored > 0
    assert res.stats.elapsed_s >= 0.0


class TestBlanking:
    def test_never_below_full_optimum(self, rng):
        for _ in range(20):
            dims = Dimensions(
                int(rng.integers(2, 5)), int(rng.integers(2, 4)), int(rng.integers(1, 3))
            )
            g = build_graph(dims, random_benefits(dims, rng))
            full = solve_exact(g)
            relaxed = solve_exact_blanking(g)
            if full.status == STATUS_OPTIMAL:
                assert relaxed.weight >= full.weight - 1e-9

    def test_partial_answer_when_users_scarce(self):
        # One user, two BSs: no full schedule exists, but the relaxation
        # still pockets the single best association.
        dims = Dimensions(1, 2, 1)
        a = np.array([[[3.0], [5.0]]])
        g = build_graph(dims, BenefitTensor(dims, a))
        full = solve_exact(g)
        relaxed = solve_exact_blanking(g)
        assert full.status == STATUS_INFEASIBLE
        assert relaxed.weight == pytest.approx(5.0, abs=1e-12)
        assert {(e.user, e.bs, e.pz) for e in relaxed.schedule.entries} == {(0, 1, 0)}

    def test_result_is_valid_partial_schedule(self, rng):
        dims = Dimensions(3, 3, 2)
        g = build_graph(dims, random_benefits(dims, rng))
        res = solve_exact_blanking(g)
        assert validate_schedule(res.schedule, dims) == []


class TestBruteForceOracle:
    def test_exhausts_tiny_case(self):
        dims = Dimensions(2, 2, 1)
        a = np.array([[[10.0], [9.0]], [[9.0], [1.0]]])
        res = brute_force_schedule(dims, BenefitTensor(dims, a))
        assert res.weight == pytest.approx(18.0, abs=1e-12)

    def test_infeasible_dims(self):
        dims = Dimensions(1, 2, 1)
        res = brute_force_schedule(dims, uniform_benefits(dims))
        assert res.status == STATUS_INFEASIBLE

    def test_guard_refuses_oversized_enumeration(self):
        dims = Dimensions(11, 2, 4)  # 11^4 rows per BS exceeds the cap
        with pytest.raises(ValueError):
            brute_force_schedule(dims, uniform_benefits(dims))
