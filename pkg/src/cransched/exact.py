"""Exact schedulers: branch-and-bound clique search plus a brute-force oracle.

solve_exact finds the maximum-weight clique of size exactly z_tot, i.e. the
optimal full schedule.  solve_exact_blanking drops the size requirement,
which models letting power-zones idle, and therefore accepts negative
benefits.  brute_force_schedule solves the same problem by direct
enumeration over user-to-zone maps and never touches the graph machinery,
so it can vouch for the other two.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass

from .graph import OrderedView, SchedulingGraph, ordered_view, vertices_to_schedule
from .model import (
    EMPTY_SCHEDULE,
    BenefitTensor,
    Dimensions,
    Schedule,
    schedule_utility,
)

STATUS_OPTIMAL = "optimal"
STATUS_FEASIBLE = "feasible"
STATUS_INFEASIBLE = "infeasible"

# Brute force is an oracle for toy sizes; refuse anything bigger.
BRUTE_FORCE_MAX_PER_BS = 10_000
BRUTE_FORCE_MAX_TOTAL = 100_000_000


@dataclass(frozen=True)
class SearchStats:
    nodes_explored: int
    elapsed_s: float


@dataclass(frozen=True)
class SolveResult:
    """A schedule plus its recomputed utility and how the search went.

    weight always equals schedule_utility(schedule, benefits) bit-for-bit;
    solvers re-sum the returned entries in canonical order rather than
    reporting their internal running total.
    """

    schedule: Schedule
    weight: float
    status: str
    stats: SearchStats


class _CliqueSearch:
    """Depth-first branch and bound on an OrderedView.

    Branching takes the max-weight candidate first (lowest bit in the view's
    ordering), so ties resolve toward low vertex ids and the first incumbent
    resembles the greedy schedule.  The completion bound adds, for every
    power-zone block not yet filled, the best candidate weight inside that
    block: a clique can take at most one vertex per block.  In full mode an
    unfilled block with no candidates kills the subtree outright, which
    subsumes the plain |clique| + |candidates| >= z_tot counting argument.
    """

    def __init__(self, view: OrderedView, require_full: bool):
        self.view = view
        self.require_full = require_full
        self.nodes = 0
        self.best = -math.inf
        self.best_set: list[int] | None = None
        self.chosen: list[int] = []
        if not require_full:
            # The empty clique is legal once blanking is allowed.
            self.best = 0.0
            self.best_set = []

    def run(self, cand: int) -> None:
        all_blocks = (1 << self.view.graph.dims.z_tot) - 1
        self._expand(cand, all_blocks, 0.0)

    def _expand(self, cand: int, open_blocks: int, cur: float) -> None:
        self.nodes += 1
        require_full = self.require_full
        if not require_full and cur > self.best:
            self.best = cur
            self.best_set = self.chosen.copy()
        if open_blocks == 0:
            if require_full and cur > self.best:
                self.best = cur
                self.best_set = self.chosen.copy()
            return

        view = self.view
        bmask = view.bmask
        rw = view.rw
        radj = view.radj
        while cand:
            bound = 0.0
            blocks = open_blocks
            while blocks:
                low = blocks & -blocks
                blocks ^= low
                in_block = cand & bmask[low.bit_length() - 1]
                if not in_block:
                    if require_full:
                        return  # this power-zone can no longer be served
                    continue
                top = rw[(in_block & -in_block).bit_length() - 1]
                if require_full or top > 0.0:
                    bound += top
            if cur + bound <= self.best:
                return
            low = cand & -cand
            v = low.bit_length() - 1
            self.chosen.append(v)
            self._expand(
                cand & radj[v], open_blocks & ~(1 << view.block_of[v]), cur + rw[v]
            )
            self.chosen.pop()
            cand ^= low


def _finish(g: SchedulingGraph, search: _CliqueSearch, t0: float) -> SolveResult:
    elapsed = time.perf_counter() - t0
    stats = SearchStats(search.nodes, elapsed)
    if search.best_set is None:
        return SolveResult(EMPTY_SCHEDULE, 0.0, STATUS_INFEASIBLE, stats)
    ids = search.view.to_original(search.best_set)
    schedule = vertices_to_schedule(g.dims, ids)
    weight = float(sum(g.weights[v] for v in ids))
    return SolveResult(schedule, weight, STATUS_OPTIMAL, stats)


def solve_exact(g: SchedulingGraph) -> SolveResult:
    """Maximum-weight clique of size exactly z_tot, as a Schedule.

    Infeasible exactly when U < B (each base-station needs a user of its
    own); the search also proves that on its own, but the check is cheap.
    """
    t0 = time.perf_counter()
    if not g.dims.schedulable():
        return SolveResult(
            EMPTY_SCHEDULE, 0.0, STATUS_INFEASIBLE, SearchStats(0, time.perf_counter() - t0)
        )
    view = ordered_view(g)
    search = _CliqueSearch(view, require_full=True)
    search.run(view.full)
    return _finish(g, search, t0)


def solve_exact_blanking(g: SchedulingGraph) -> SolveResult:
    """Maximum-weight clique with no size constraint (power-zones may idle).

    Weights of any sign are fine; the empty schedule (weight 0) is a legal
    answer and wins when every vertex hurts.
    """
    t0 = time.perf_counter()
    view = ordered_view(g)
    search = _CliqueSearch(view, require_full=False)
    search.run(view.full)
    return _finish(g, search, t0)


def brute_force_schedule(dims: Dimensions, benefits: BenefitTensor) -> SolveResult:
    """Enumerate full schedules directly and return the best one.

    Per base-station, every map from its Z zones to users is listed
    (U**Z of them); the cross product over base-stations is then filtered
    to combinations whose per-BS user sets are pairwise disjoint.  No graph
    code is involved, which is the whole point of this oracle.
    """
    if benefits.dims != dims:
        raise ValueError("benefit dims do not match")
    U, B, Z = dims.num_users, dims.num_bs, dims.num_pz
    per_bs_count = U**Z
    if per_bs_count > BRUTE_FORCE_MAX_PER_BS or per_bs_count**B > BRUTE_FORCE_MAX_TOTAL:
        raise ValueError(
            f"instance too large for brute force: U^Z={per_bs_count}, (U^Z)^B={per_bs_count ** B}"
        )
    t0 = time.perf_counter()
    a = benefits.a

    options = []
    for b in range(B):
        rows = []
        for mapping in itertools.product(range(U), repeat=Z):
            used = 0
            w = 0.0
            for z, u in enumerate(mapping):
                used |= 1 << u
                w += a[u, b, z]
            rows.append((mapping, used, w))
        options.append(rows)

    best_w = -math.inf
    best: list[tuple[int, ...]] | None = None
    nodes = 0

    def assign(b: int, used: int, acc: float, picked: list[tuple[int, ...]]) -> None:
        nonlocal best_w, best, nodes
        nodes += 1
        if b == B:
            if acc > best_w:
                best_w = acc
                best = picked.copy()
            return
        for mapping, mask, w in options[b]:
            if mask & used:
                continue  # some user already serves an earlier BS
            picked.append(mapping)
            assign(b + 1, used | mask, acc + w, picked)
            picked.pop()

    assign(0, 0, 0.0, [])
    elapsed = time.perf_counter() - t0
    if best is None:
        return SolveResult(EMPTY_SCHEDULE, 0.0, STATUS_INFEASIBLE, SearchStats(nodes, elapsed))
    schedule = Schedule.of(
        (u, b, z) for b, mapping in enumerate(best) for z, u in enumerate(mapping)
    )
    weight = schedule_utility(schedule, benefits)
    return SolveResult(schedule, weight, STATUS_OPTIMAL, SearchStats(nodes, elapsed))
