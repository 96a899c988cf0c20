"""Scheduling graph: one vertex per association, edges where two can coexist.

Vertices are integers encoding (u, b, z) u-major; the adjacency rows are
Python ints used as bitsets, so candidate-set intersections in the solvers
are single AND operations.  Two distinct vertices are connected iff

  * they do not claim the same (bs, pz), and
  * they do not place the same user at two different base-stations.

Any full schedule is exactly a clique of size z_tot in this graph.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .model import Association, BenefitTensor, Dimensions, Schedule

# Full-clique enumeration is for validation at toy sizes only.
MAX_ENUMERATION_VERTICES = 36


def encode(dims: Dimensions, u: int, b: int, z: int) -> int:
    """Vertex id of association (u, b, z): u-major, then b, then z."""
    return (u * dims.num_bs + b) * dims.num_pz + z


def decode(dims: Dimensions, vid: int) -> Association:
    """Inverse of encode."""
    z = vid % dims.num_pz
    rest = vid // dims.num_pz
    return Association(rest // dims.num_bs, rest % dims.num_bs, z)


def can_coexist(a1: Association, a2: Association) -> bool:
    """Edge predicate, straight from the coexistence rules (C1 and C2)."""
    if a1.bs == a2.bs and a1.pz == a2.pz:
        return False
    if a1.user == a2.user and a1.bs != a2.bs:
        return False
    return True


@dataclass(frozen=True, eq=False)
class SchedulingGraph:
    """Immutable vertex-weighted graph over all U*B*Z associations.

    adjacency[v] is a bitset of v's neighbours; weights[v] is the benefit of
    the association v encodes.  block_masks[b*Z + z] selects the vertices
    competing for power-zone (b, z): a clique holds at most one of them.
    """

    dims: Dimensions
    weights: np.ndarray
    adjacency: tuple[int, ...]
    block_masks: tuple[int, ...]

    @property
    def num_vertices(self) -> int:
        return self.dims.num_associations

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()

    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adjacency) // 2


def expected_degree(dims: Dimensions) -> int:
    """Every vertex has the same degree: n-1 minus the U-1 rivals for its
    power-zone and the (B-1)*Z placements of its user at other BSs."""
    n = dims.num_associations
    return n - 1 - (dims.num_users - 1) - (dims.num_bs - 1) * dims.num_pz


def build_graph(dims: Dimensions, benefits: BenefitTensor) -> SchedulingGraph:
    """Assemble adjacency bitsets and vertex weights for an instance.

    Rows are built from whole-block masks rather than pair loops, so the
    cost is O(n) big-int operations for the n = U*B*Z vertices.
    """
    if benefits.dims != dims:
        raise ValueError(f"benefit dims {benefits.dims} != graph dims {dims}")
    U, B, Z = dims.num_users, dims.num_bs, dims.num_pz
    n = dims.num_associations
    full = (1 << n) - 1

    # block_masks[b*Z + z]: one bit per user, spaced B*Z apart.
    block_masks = []
    for b in range(B):
        for z in range(Z):
            m = 0
            for u in range(U):
                m |= 1 << ((u * B + b) * Z + z)
            block_masks.append(m)

    frame = (1 << B * Z) - 1        # all associations of one user
    bs_slot = (1 << Z) - 1          # one user's zones at one BS
    adjacency = []
    for u in range(U):
        user_mask = frame << (u * B * Z)
        for b in range(B):
            own_bs = bs_slot << ((u * B + b) * Z)
            foreign_bs = user_mask & ~own_bs
            for z in range(Z):
                non_neighbors = block_masks[b * Z + z] | foreign_bs
                adjacency.append(full & ~non_neighbors)

    weights = np.ascontiguousarray(benefits.a.reshape(n).astype(np.float64))
    weights.flags.writeable = False
    return SchedulingGraph(dims, weights, tuple(adjacency), tuple(block_masks))


def adjacent(g: SchedulingGraph, v1: int, v2: int) -> bool:
    """True iff v1 and v2 can coexist in a schedule.  Undefined on v1 == v2."""
    n = g.num_vertices
    if not (0 <= v1 < n and 0 <= v2 < n):
        raise IndexError(f"vertex ids must lie in [0, {n})")
    if v1 == v2:
        raise ValueError("adjacency is undefined on a vertex and itself")
    return bool((g.adjacency[v1] >> v2) & 1)


def vertices_to_schedule(dims: Dimensions, vs: Iterable[int]) -> Schedule:
    return Schedule(frozenset(decode(dims, v) for v in vs))


def schedule_to_vertices(dims: Dimensions, s: Schedule) -> set[int]:
    return {encode(dims, *e) for e in s.entries}


def is_clique(g: SchedulingGraph, vs: Iterable[int]) -> bool:
    ids = sorted(set(vs))
    for i, v in enumerate(ids):
        row = g.adjacency[v]
        for w in ids[i + 1 :]:
            if not (row >> w) & 1:
                return False
    return True


def clique_is_feasible_schedule(g: SchedulingGraph, vs: Iterable[int]) -> bool:
    """True iff vs is pairwise adjacent and has full size z_tot.

    Must agree with validate_schedule(..., require_full=True) on the decoded
    entries; the two checks are independent routes used to test each other.
    """
    ids = set(vs)
    return len(ids) == g.dims.z_tot and is_clique(g, ids)


def enumerate_full_cliques(g: SchedulingGraph) -> Iterator[frozenset[int]]:
    """Yield every clique of size exactly z_tot (toy instances only).

    Walks power-zone blocks in a fixed order; since a full clique takes
    exactly one vertex per block, each clique is produced once.
    """
    n = g.num_vertices
    if n > MAX_ENUMERATION_VERTICES:
        raise ValueError(
            f"enumeration is limited to {MAX_ENUMERATION_VERTICES} vertices, got {n}"
        )
    z_tot = g.dims.z_tot
    full = (1 << n) - 1
    chosen: list[int] = []

    def walk(block: int, cand: int) -> Iterator[frozenset[int]]:
        if block == z_tot:
            yield frozenset(chosen)
            return
        pool = cand & g.block_masks[block]
        while pool:
            low = pool & -pool
            v = low.bit_length() - 1
            pool ^= low
            chosen.append(v)
            yield from walk(block + 1, cand & g.adjacency[v])
            chosen.pop()

    yield from walk(0, full)


class OrderedView:
    """The graph re-indexed by (descending weight, ties ascending id).

    Under this permutation the lowest set bit of any candidate bitset is its
    max-weight vertex, which is what both the greedy scheduler and the
    branch-and-bound branching rule repeatedly ask for.
    """

    __slots__ = ("graph", "order", "rank", "rw", "radj", "block_of", "bmask", "full")

    def __init__(self, g: SchedulingGraph):
        n = g.num_vertices
        w = g.weights
        order = sorted(range(n), key=lambda v: (-w[v], v))
        rank = [0] * n
        for i, v in enumerate(order):
            rank[v] = i

        # Permute adjacency rows through numpy bit matrices; repacking into
        # ints keeps candidate intersections word-parallel.
        nbytes = (n + 7) // 8
        mat = np.zeros((n, n), dtype=np.uint8)
        for v in range(n):
            raw = g.adjacency[v].to_bytes(nbytes, "little")
            mat[v] = np.unpackbits(
                np.frombuffer(raw, dtype=np.uint8), count=n, bitorder="little"
            )
        perm = np.asarray(order)
        pmat = mat[np.ix_(perm, perm)]

        self.graph = g
        self.order = order
        self.rank = rank
        self.rw = [float(w[v]) for v in order]
        self.radj = [
            int.from_bytes(np.packbits(pmat[i], bitorder="little").tobytes(), "little")
            for i in range(n)
        ]
        Z = g.dims.num_pz
        self.block_of = []
        for i in range(n):
            a = decode(g.dims, order[i])
            self.block_of.append(a.bs * Z + a.pz)
        self.bmask = [0] * g.dims.z_tot
        for i, blk in enumerate(self.block_of):
            self.bmask[blk] |= 1 << i
        self.full = (1 << n) - 1

    def to_original(self, permuted_ids: Iterable[int]) -> list[int]:
        return sorted(self.order[i] for i in permuted_ids)


_view_cache: "weakref.WeakKeyDictionary[SchedulingGraph, OrderedView]" = (
    weakref.WeakKeyDictionary()
)


def ordered_view(g: SchedulingGraph) -> OrderedView:
    """Cached OrderedView of g (the graph is immutable, so one is enough)."""
    view = _view_cache.get(g)
    if view is None:
        view = OrderedView(g)
        _view_cache[g] = view
    return view


def dump_edge_list(g: SchedulingGraph) -> str:
    """DIMACS-like text dump for debugging: no solver consumes this.

    `p edge n m` header, one `n <vertex> <weight>` line per vertex, then one
    `e <v1> <v2>` line per edge, all ids 1-based as DIMACS convention has it.
    """
    d = g.dims
    n = g.num_vertices
    lines = [
        f"c scheduling graph U={d.num_users} B={d.num_bs} Z={d.num_pz}",
        f"p edge {n} {g.num_edges()}",
    ]
    for v in range(n):
        lines.append(f"n {v + 1} {float(g.weights[v])!r}")
    for v in range(n):
        row = g.adjacency[v] & ~((1 << (v + 1)) - 1)  # neighbours above v only
        while row:
            low = row & -row
            lines.append(f"e {v + 1} {low.bit_length()}")
            row ^= low
    return "\n".join(lines) + "\n"
