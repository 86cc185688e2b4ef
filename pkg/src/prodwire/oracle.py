"""Independent brute-force ground truth at desk scale.

Everything here is exhaustive and exact: subset enumeration for the
maximum-internal / minimum-boundary objectives, and full permutation search
(with pruning that never changes the answer) for minimum wirelength.
"""
from __future__ import annotations

import warnings
from itertools import combinations

from .graphs import Graph, all_pairs_distances

SUBSET_CEILING = 24  # 2^24 subsets
PERMUTATION_CEILING = 8  # 8! bijections


def _check_subset_args(g: Graph, k: int, ceiling: int) -> None:
    if ceiling > SUBSET_CEILING:
        warnings.warn(
            f"subset ceiling raised to {ceiling}; enumeration may be very slow",
            stacklevel=3,
        )
    if g.vertex_count > ceiling:
        raise ValueError(
            f"graph has {g.vertex_count} vertices, above the ceiling {ceiling}"
        )
    if not 0 <= k <= g.vertex_count:
        raise ValueError(f"k={k} outside 0..{g.vertex_count}")


def _adjacency_masks(g: Graph) -> list[int]:
    masks = []
    for v in g.vertices():
        m = 0
        for w in g.neighbors(v):
            m |= 1 << (w - 1)
        masks.append(m)
    return masks


def max_internal_edges_exhaustive(
    g: Graph, k: int, ceiling: int = SUBSET_CEILING
) -> int:
    """Exact maximum number of edges inside any k-vertex subset."""
    _check_subset_args(g, k, ceiling)
    if k < 2:
        return 0
    adj = _adjacency_masks(g)
    best = 0
    for subset in combinations(range(g.vertex_count), k):
        mask = 0
        for v in subset:
            mask |= 1 << v
        inside = sum((adj[v] & mask).bit_count() for v in subset) // 2
        if inside > best:
            best = inside
    return best


def min_boundary_edges_exhaustive(
    g: Graph, k: int, ceiling: int = SUBSET_CEILING
) -> int:
    """Exact minimum number of edges leaving any k-vertex subset."""
    _check_subset_args(g, k, ceiling)
    if k == 0 or k == g.vertex_count:
        return 0
    adj = _adjacency_masks(g)
    best: int | None = None
    for subset in combinations(range(g.vertex_count), k):
        mask = 0
        for v in subset:
            mask |= 1 << v
        boundary = sum((adj[v] & ~mask).bit_count() for v in subset)
        if best is None or boundary < best:
            best = boundary
    return best or 0


def min_wirelength_exhaustive(
    guest: Graph, host: Graph, ceiling: int = PERMUTATION_CEILING
) -> tuple[int, tuple[int, ...]]:
    """Exact minimum wirelength over all bijections, with one witness.

    Uses shortest-path host distances; partial assignments are pruned when
    their cost already reaches the best known total, which cannot change
    the exact result.
    """
    if guest.vertex_count != host.vertex_count:
        raise ValueError(
            f"guest has {guest.vertex_count} vertices, host {host.vertex_count}; "
            f"need equal orders"
        )
    if guest.vertex_count > ceiling:
        if ceiling > PERMUTATION_CEILING:
            warnings.warn(
                f"permutation ceiling raised to {ceiling}; search may be very slow",
                stacklevel=2,
            )
        else:
            raise ValueError(
                f"{guest.vertex_count} vertices above the ceiling {ceiling}"
            )
    n = guest.vertex_count
    dist = all_pairs_distances(host)
    earlier_neighbors = [
        [w - 1 for w in guest.neighbors(v) if w < v] for v in guest.vertices()
    ]
    best = None
    best_assign: tuple[int, ...] = ()
    assign = [0] * n
    used = [False] * n

    def search(v0: int, cost: int) -> None:
        nonlocal best, best_assign
        if best is not None and cost >= best:
            return
        if v0 == n:
            best = cost
            best_assign = tuple(h + 1 for h in assign)
            return
        for h0 in range(n):
            if used[h0]:
                continue
            added = 0
            for w0 in earlier_neighbors[v0]:
                added += dist[assign[w0]][h0]
            if best is not None and cost + added >= best:
                continue
            used[h0] = True
            assign[v0] = h0
            search(v0 + 1, cost + added)
            used[h0] = False

    search(0, 0)
    assert best is not None
    return best, best_assign


def complement_optimality_check(
    g: Graph, k: int, ceiling: int = SUBSET_CEILING
) -> bool:
    """For a regular graph: every maximum-internal k-set has a
    maximum-internal complement."""
    if not g.is_regular():
        raise ValueError("complement optimality is defined for regular graphs")
    _check_subset_args(g, k, ceiling)
    n = g.vertex_count
    best_k = max_internal_edges_exhaustive(g, k, ceiling)
    best_rest = max_internal_edges_exhaustive(g, n - k, ceiling)
    adj = _adjacency_masks(g)
    full = (1 << n) - 1
    for subset in combinations(range(n), k):
        mask = 0
        for v in subset:
            mask |= 1 << v
        inside = sum((adj[v] & mask).bit_count() for v in subset) // 2
        if inside != best_k:
            continue
        comp = full & ~mask
        comp_inside = 0
        rest = comp
        while rest:
            v = (rest & -rest).bit_length() - 1
            comp_inside += (adj[v] & comp).bit_count()
            rest &= rest - 1
        if comp_inside // 2 != best_rest:
            return False
    return True
