"""Low-complexity schedulers: plain greedy and the pruned-graph variant.

heu_shd grows a clique by repeatedly grabbing the heaviest surviving vertex
and discarding everything not adjacent to it.  p_shd first throws away all
but the top fraction_p of vertices by weight, runs the same greedy (or,
optionally, the exact search) on what is left, then patches the clique back
up to full size from the discarded vertices if needed.

Both growers carry one safety rule the naive loop lacks: a pick that would
commit the last free users to already-served base-stations is skipped,
because after it some base-station could never be served again and the
schedule could not reach full size.  The rule is inert until the number of
uncommitted users drops to the number of user-less base-stations, so
whenever the naive loop would have produced a full schedule, the guarded
one picks the exact same vertices.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

from .exact import (
    STATUS_FEASIBLE,
    STATUS_INFEASIBLE,
    SearchStats,
    SolveResult,
    _CliqueSearch,
)
from .graph import OrderedView, SchedulingGraph, decode, ordered_view, vertices_to_schedule


@dataclass(frozen=True)
class HeuristicParams:
    """Settings for p_shd.

    fraction_p       keep the floor(fraction_p * n) heaviest vertices,
                     ties broken toward lower vertex id; must be in (0, 1]
    exact_on_pruned  run the exact clique search on the pruned graph instead
                     of the greedy pass (the costlier reading of the
                     pruning idea; default off)
    """

    fraction_p: float
    exact_on_pruned: bool = False

    def __post_init__(self) -> None:
        if not 0.0 < self.fraction_p <= 1.0:
            raise ValueError(f"fraction_p must be in (0, 1], got {self.fraction_p!r}")


class _Grower:
    """Clique growth, heaviest-first, with the unservable-BS guard.

    Tracks which users are committed (and to which BS implicitly) and which
    base-stations already hold a user.  While free users outnumber user-less
    base-stations any pick goes; once the counts are equal, vertices that
    would spend a free user on an already-served BS are withheld so every
    remaining BS keeps a user available.
    """

    def __init__(self, view: OrderedView):
        self.view = view
        dims = view.graph.dims
        self.chosen: list[int] = []
        self.adj_all = view.full  # vertices adjacent to every chosen one
        self.user_of = []
        self.bs_of = []
        umask = [0] * dims.num_users
        bmask = [0] * dims.num_bs
        for i, orig in enumerate(view.order):
            a = decode(dims, orig)
            self.user_of.append(a.user)
            self.bs_of.append(a.bs)
            umask[a.user] |= 1 << i
            bmask[a.bs] |= 1 << i
        self.umask = umask
        self.bsmask = bmask
        self.free = dims.num_users
        self.unserved = dims.num_bs
        self.committed = [False] * dims.num_users
        self.served = [False] * dims.num_bs
        self.committed_vmask = 0
        self.unserved_vmask = 0
        for m in bmask:
            self.unserved_vmask |= m

    def _add(self, v: int) -> None:
        self.chosen.append(v)
        u, b = self.user_of[v], self.bs_of[v]
        if not self.committed[u]:
            self.committed[u] = True
            self.free -= 1
            self.committed_vmask |= self.umask[u]
        if not self.served[b]:
            self.served[b] = True
            self.unserved -= 1
            self.unserved_vmask &= ~self.bsmask[b]
        self.adj_all &= self.view.radj[v]

    def adopt(self, permuted_ids: list[int]) -> None:
        """Seed the grower with an existing clique (in the given order)."""
        for v in permuted_ids:
            self._add(v)

    def grow(self, pool: int) -> None:
        """Extend the clique from vertices inside pool until none qualifies."""
        while True:
            cand = pool & self.adj_all
            if self.unserved and self.free == self.unserved:
                cand &= self.committed_vmask | self.unserved_vmask
            if not cand:
                return
            self._add((cand & -cand).bit_length() - 1)


def _package(
    g: SchedulingGraph, view: OrderedView, chosen: list[int], nodes: int, t0: float
) -> SolveResult:
    ids = view.to_original(chosen)
    schedule = vertices_to_schedule(g.dims, ids)
    weight = float(sum(g.weights[v] for v in ids))
    status = STATUS_FEASIBLE if len(ids) == g.dims.z_tot else STATUS_INFEASIBLE
    stats = SearchStats(nodes, time.perf_counter() - t0)
    return SolveResult(schedule, weight, status, stats)


def heu_shd(g: SchedulingGraph) -> SolveResult:
    """Greedy scheduler: take the heaviest admissible vertex, keep only its
    neighbors, repeat until nothing survives.

    Whenever U >= B the result fills all z_tot power-zones (the guard in
    _Grower makes that a certainty, not just a tendency).  Equal weights
    resolve toward the lowest vertex id.
    """
    t0 = time.perf_counter()
    view = ordered_view(g)
    grower = _Grower(view)
    grower.grow(view.full)
    return _package(g, view, grower.chosen, 0, t0)


def p_shd(g: SchedulingGraph, params: HeuristicParams) -> SolveResult:
    """Pruned greedy: drop all but the top-weight vertices, schedule on the
    rest, then refill the clique from the full vertex pool.

    Keeps k = floor(fraction_p * n) vertices; raises ValueError when that
    is zero.  The main pass stays inside the kept set; the completion pass
    lifts that restriction so pruned-away vertices can re-enter, heaviest
    first, until the clique reaches z_tot or nothing fits.  With
    fraction_p = 1 the output is identical to heu_shd, completion included.
    """
    t0 = time.perf_counter()
    view = ordered_view(g)
    n = g.num_vertices
    k = math.floor(params.fraction_p * n)
    if k == 0:
        raise ValueError(
            f"fraction_p={params.fraction_p} keeps floor({params.fraction_p}*{n}) = 0 vertices"
        )
    kept = (1 << k) - 1  # permuted ids 0..k-1 are exactly the top-k by weight

    nodes = 0
    grower = _Grower(view)
    if params.exact_on_pruned:
        search = _CliqueSearch(view, require_full=False)
        search.run(kept)
        grower.adopt(list(search.best_set or []))
        nodes = search.nodes
    else:
        grower.grow(kept)
    grower.grow(view.full)

    return _package(g, view, grower.chosen, nodes, t0)
