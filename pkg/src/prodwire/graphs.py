"""Undirected simple graph core.

Vertices are 1-based integer labels.  Adjacency is stored as sorted tuples of
neighbor ids, so iteration order is deterministic everywhere.  Graphs are
immutable after construction.
"""
from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Sequence


class DisconnectedGraphError(ValueError):
    """Raised when an operation requires a connected graph."""


class Graph:
    """Simple undirected graph on vertices 1..vertex_count."""

    __slots__ = ("vertex_count", "_adjacency")

    def __init__(self, vertex_count: int, edges: Iterable[tuple[int, int]]):
        if vertex_count < 1:
            raise ValueError(f"vertex_count must be positive, got {vertex_count}")
        neighbor_sets: list[set[int]] = [set() for _ in range(vertex_count)]
        for u, v in edges:
            if not (1 <= u <= vertex_count and 1 <= v <= vertex_count):
                raise ValueError(f"edge ({u},{v}) outside 1..{vertex_count}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            neighbor_sets[u - 1].add(v)
            neighbor_sets[v - 1].add(u)
        self.vertex_count = vertex_count
        self._adjacency: tuple[tuple[int, ...], ...] = tuple(
            tuple(sorted(s)) for s in neighbor_sets
        )

    def neighbors(self, v: int) -> tuple[int, ...]:
        if not 1 <= v <= self.vertex_count:
            raise ValueError(f"vertex {v} outside 1..{self.vertex_count}")
        return self._adjacency[v - 1]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adjacency[u - 1]

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self._adjacency) // 2

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) with u < v, in ascending order."""
        out = []
        for u in range(1, self.vertex_count + 1):
            for v in self._adjacency[u - 1]:
                if u < v:
                    out.append((u, v))
        return out

    def vertices(self) -> range:
        return range(1, self.vertex_count + 1)

    def is_regular(self) -> bool:
        degs = {len(a) for a in self._adjacency}
        return len(degs) == 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.vertex_count == other.vertex_count
            and self._adjacency == other._adjacency
        )

    def __hash__(self) -> int:
        return hash((self.vertex_count, self._adjacency))

    def __repr__(self) -> str:
        return f"Graph(vertices={self.vertex_count}, edges={self.edge_count})"


def make_path(n: int) -> Graph:
    """Path on vertices 1..n with edges {i, i+1}."""
    if n < 1:
        raise ValueError(f"path needs at least 1 vertex, got {n}")
    return Graph(n, [(i, i + 1) for i in range(1, n)])


def make_cycle(n: int) -> Graph:
    """Cycle on vertices 1..n, including the wrap edge {1, n}."""
    if n < 3:
        raise ValueError(f"cycle needs at least 3 vertices, got {n}")
    return Graph(n, [(i, i + 1) for i in range(1, n)] + [(1, n)])


def make_complete_multipartite(part_sizes: Sequence[int]) -> Graph:
    """Complete multipartite graph with consecutively numbered parts.

    Part 1 holds labels 1..part_sizes[0], part 2 the next block, and so on.
    Edges are exactly the pairs whose endpoints lie in different parts.
    """
    if len(part_sizes) < 2:
        raise ValueError("need at least 2 parts")
    if any(s < 1 for s in part_sizes):
        raise ValueError("part sizes must be positive")
    n = sum(part_sizes)
    part_of = []
    for i, size in enumerate(part_sizes):
        part_of.extend([i] * size)
    edges = [
        (u, v)
        for u in range(1, n + 1)
        for v in range(u + 1, n + 1)
        if part_of[u - 1] != part_of[v - 1]
    ]
    return Graph(n, edges)


def cartesian_product(factors: Sequence[Graph]) -> Graph:
    """Cartesian product of the factor graphs.

    Vertices are all coordinate tuples; two tuples are adjacent iff they
    differ in exactly one coordinate by a factor edge.  Vertex ids are
    mixed-radix with dimension 1 varying fastest: a tuple of 0-based factor
    positions (x_1, ..., x_n) gets id 1 + sum_i x_i * prod_{k<i} |V(G_k)|.
    """
    if not factors:
        raise ValueError("need at least 1 factor")
    strides = []
    total = 1
    for g in factors:
        strides.append(total)
        total *= g.vertex_count
    edges = []
    for idx in range(total):
        coords = []
        x = idx
        for g in factors:
            coords.append(x % g.vertex_count)
            x //= g.vertex_count
        u = idx + 1
        for i, g in enumerate(factors):
            for w in g.neighbors(coords[i] + 1):
                w0 = w - 1
                if w0 > coords[i]:
                    v = u + (w0 - coords[i]) * strides[i]
                    edges.append((u, v))
    return Graph(total, edges)


def bfs_distances(g: Graph, source: int) -> dict[int, int]:
    """Hop distances from source to every vertex.

    Raises DisconnectedGraphError if any vertex is unreachable.
    """
    if not 1 <= source <= g.vertex_count:
        raise ValueError(f"source {source} outside 1..{g.vertex_count}")
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in g.neighbors(u):
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    if len(dist) != g.vertex_count:
        missing = g.vertex_count - len(dist)
        raise DisconnectedGraphError(
            f"{missing} vertices unreachable from {source}"
        )
    return dist


def all_pairs_distances(g: Graph) -> list[list[int]]:
    """Distance matrix indexed [u-1][v-1]; requires a connected graph."""
    out = []
    for s in g.vertices():
        d = bfs_distances(g, s)
        out.append([d[v] for v in g.vertices()])
    return out


def edge_list_text(g: Graph) -> str:
    """Text export: header line then one 'u v' line per edge, ascending."""
    lines = [f"# vertices {g.vertex_count}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"
