"""Host-side structure: product specs, coordinates, edge cuts, routing.

A host is an ordered Cartesian product of path and cycle factors whose sizes
are powers of two and nondecreasing.  Host vertices carry two naming schemes:
mixed-radix ids (dimension 1 fastest, matching graphs.cartesian_product) and
coordinate tuples of 0-based positions.  The edge cuts defined here partition
the host edges; dimension-order routing crosses each separating cut exactly
once, which turns congestion sums into distance sums identically.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

Coord = tuple[int, ...]

PATH = "path"
CYCLE = "cycle"


@dataclass(frozen=True)
class FactorSpec:
    """One product factor: a path or cycle on 2^log_size vertices."""

    kind: str
    log_size: int

    def __post_init__(self) -> None:
        if self.kind not in (PATH, CYCLE):
            raise ValueError(f"kind must be {PATH!r} or {CYCLE!r}, got {self.kind!r}")
        if self.kind == PATH and self.log_size < 1:
            raise ValueError(f"path factor needs log_size >= 1, got {self.log_size}")
        if self.kind == CYCLE and self.log_size < 2:
            raise ValueError(
                f"cycle factor needs log_size >= 2 (length >= 4), got {self.log_size}"
            )

    @property
    def size(self) -> int:
        return 1 << self.log_size

    @property
    def token(self) -> str:
        return ("P" if self.kind == PATH else "C") + str(self.log_size)


@dataclass(frozen=True)
class ProductSpec:
    """Ordered factor list with nondecreasing sizes."""

    factors: tuple[FactorSpec, ...]

    def __post_init__(self) -> None:
        if not self.factors:
            raise ValueError("need at least one factor")
        logs = [f.log_size for f in self.factors]
        if any(a > b for a, b in zip(logs, logs[1:])):
            raise ValueError(
                f"factor sizes must be nondecreasing, got {logs}"
            )

    @property
    def num_dims(self) -> int:
        return len(self.factors)

    @property
    def log_vertex_count(self) -> int:
        return sum(f.log_size for f in self.factors)

    @property
    def vertex_count(self) -> int:
        return 1 << self.log_vertex_count

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(f.size for f in self.factors)

    @property
    def strides(self) -> tuple[int, ...]:
        out = []
        acc = 1
        for f in self.factors:
            out.append(acc)
            acc *= f.size
        return tuple(out)

    @property
    def token(self) -> str:
        return ",".join(f.token for f in self.factors)

    def require_theorem_mode(self, relax: bool = False) -> None:
        """Closed-form work needs >= 3 dimensions unless explicitly relaxed."""
        if self.num_dims < 3 and not relax:
            raise ValueError(
                f"{self.num_dims} dimension(s): formulas assume >= 3 "
                f"(pass relax=True / --relax to allow small products)"
            )


def parse_product_spec(text: str, relax: bool = False) -> ProductSpec:
    """Parse 'P1,P1,C2'-style tokens (P/C + log2 of the factor size).

    Factors must come in nondecreasing size order; with relax=True an
    out-of-order list is stably reordered with a warning instead.
    """
    factors = []
    for token in text.split(","):
        token = token.strip()
        if len(token) < 2 or token[0] not in "PC" or not token[1:].isdigit():
            raise ValueError(
                f"bad factor token {token!r}: expected P<k> or C<k> with k >= 1"
            )
        factors.append(
            FactorSpec(PATH if token[0] == "P" else CYCLE, int(token[1:]))
        )
    logs = [f.log_size for f in factors]
    if any(a > b for a, b in zip(logs, logs[1:])):
        if not relax:
            raise ValueError(
                f"factor sizes must be nondecreasing in {text!r} "
                f"(pass relax=True / --relax to reorder)"
            )
        factors.sort(key=lambda f: f.log_size)
        warnings.warn(
            f"reordered factors of {text!r} into nondecreasing size order",
            stacklevel=2,
        )
    return ProductSpec(tuple(factors))


def coord_of_index(spec: ProductSpec, index: int) -> Coord:
    """0-based mixed-radix index -> coordinate tuple (dimension 1 fastest)."""
    if not 0 <= index < spec.vertex_count:
        raise ValueError(f"index {index} outside 0..{spec.vertex_count - 1}")
    out = []
    for s in spec.sizes:
        out.append(index % s)
        index //= s
    return tuple(out)


def index_of_coord(spec: ProductSpec, coord: Coord) -> int:
    """Coordinate tuple -> 0-based mixed-radix index."""
    if len(coord) != spec.num_dims:
        raise ValueError(f"expected {spec.num_dims} coordinates, got {len(coord)}")
    idx = 0
    for x, s, stride in zip(coord, spec.sizes, spec.strides):
        if not 0 <= x < s:
            raise ValueError(f"coordinate {x} outside 0..{s - 1}")
        idx += x * stride
    return idx


def host_graph(spec: ProductSpec):
    """The host as a Graph with mixed-radix vertex ids."""
    from .graphs import cartesian_product, make_cycle, make_path

    return cartesian_product(
        [
            make_path(f.size) if f.kind == PATH else make_cycle(f.size)
            for f in spec.factors
        ]
    )


@dataclass(frozen=True)
class EdgeCut:
    """One edge cut: removing `edges` splits the host into side_a | side_b.

    For a path dimension, cut j holds the edges between positions j-1 and j
    and side_a is the prefix {x_dim < j}.  For a cycle dimension, cut j pairs
    the two antipodal inter-position edge sets (after positions j-1 and
    j-1+size/2) and side_a is the half-window of positions starting at j.
    dim is 1-based; vertex ids are mixed-radix.
    """

    dim: int
    cut_id: int
    kind: str
    edges: frozenset[tuple[int, int]]
    side_a: frozenset[int]
    side_b: frozenset[int]
    positions_a: frozenset[int]

    def side_of(self, coord: Coord) -> int:
        """0 if the coordinate lies in side_a, else 1."""
        return 0 if coord[self.dim - 1] in self.positions_a else 1


@dataclass(frozen=True)
class CutFamily:
    spec: ProductSpec
    cuts: tuple[EdgeCut, ...]

    def validate_partition(self) -> None:
        """Check the cuts are disjoint and cover every host edge exactly."""
        host = host_graph(self.spec)
        all_edges = set(host.edges())
        seen: set[tuple[int, int]] = set()
        for cut in self.cuts:
            overlap = seen & cut.edges
            if overlap:
                raise ValueError(
                    f"cut (dim={cut.dim}, id={cut.cut_id}) repeats edges {sorted(overlap)[:3]}"
                )
            stray = cut.edges - all_edges
            if stray:
                raise ValueError(
                    f"cut (dim={cut.dim}, id={cut.cut_id}) has non-host edges {sorted(stray)[:3]}"
                )
            seen |= cut.edges
        if seen != all_edges:
            raise ValueError(
                f"cuts cover {len(seen)} of {len(all_edges)} host edges"
            )


def _ids_with_position(spec: ProductSpec, dim0: int, positions: set[int]) -> frozenset[int]:
    sizes = spec.sizes
    stride = spec.strides[dim0]
    s = sizes[dim0]
    below = stride  # combinations of dims before dim0
    above = spec.vertex_count // (stride * s)
    ids = set()
    for t in positions:
        base = t * stride
        for hi in range(above):
            start = hi * stride * s + base
            ids.update(range(start + 1, start + 1 + below))
    return frozenset(ids)


def _edges_between_positions(
    spec: ProductSpec, dim0: int, t: int, u: int
) -> set[tuple[int, int]]:
    """All host edges between positions t and u of dimension dim0+1."""
    stride = spec.strides[dim0]
    s = spec.sizes[dim0]
    below = stride
    above = spec.vertex_count // (stride * s)
    out = set()
    for hi in range(above):
        block = hi * stride * s
        for lo in range(below):
            a = block + t * stride + lo + 1
            b = block + u * stride + lo + 1
            out.add((min(a, b), max(a, b)))
    return out


def build_cut_family(spec: ProductSpec) -> CutFamily:
    """The per-dimension cuts that partition the host edges.

    Path dimension of size s: s-1 prefix cuts.  Cycle dimension of size s:
    s/2 cuts, each pairing two antipodal inter-position edge sets so that
    both sides hold exactly half the vertices.
    """
    cuts = []
    for dim0, factor in enumerate(spec.factors):
        s = factor.size
        if factor.kind == PATH:
            for j in range(1, s):
                pos_a = set(range(j))
                cuts.append(
                    EdgeCut(
                        dim=dim0 + 1,
                        cut_id=j,
                        kind=PATH,
                        edges=frozenset(
                            _edges_between_positions(spec, dim0, j - 1, j)
                        ),
                        side_a=_ids_with_position(spec, dim0, pos_a),
                        side_b=_ids_with_position(
                            spec, dim0, set(range(s)) - pos_a
                        ),
                        positions_a=frozenset(pos_a),
                    )
                )
        else:
            half = s // 2
            for j in range(1, half + 1):
                e1 = _edges_between_positions(spec, dim0, j - 1, j % s)
                e2 = _edges_between_positions(
                    spec, dim0, j - 1 + half, (j + half) % s
                )
                pos_a = {(j + t) % s for t in range(half)}
                cuts.append(
                    EdgeCut(
                        dim=dim0 + 1,
                        cut_id=j,
                        kind=CYCLE,
                        edges=frozenset(e1 | e2),
                        side_a=_ids_with_position(spec, dim0, pos_a),
                        side_b=_ids_with_position(
                            spec, dim0, set(range(s)) - pos_a
                        ),
                        positions_a=frozenset(pos_a),
                    )
                )
    return CutFamily(spec=spec, cuts=tuple(cuts))


def factor_distance(factor: FactorSpec, a: int, b: int) -> int:
    """Distance between two positions within one factor."""
    if factor.kind == PATH:
        return abs(a - b)
    s = factor.size
    d = (b - a) % s
    return min(d, s - d)


def _factor_steps(factor: FactorSpec, a: int, b: int) -> list[int]:
    """Positions visited moving a -> b: shortest, ties toward increasing."""
    if a == b:
        return [a]
    if factor.kind == PATH:
        step = 1 if b > a else -1
        return list(range(a, b + step, step))
    s = factor.size
    d = (b - a) % s
    if d <= s - d:  # tie (d == s/2) also goes the increasing way
        return [(a + t) % s for t in range(d + 1)]
    return [(a - t) % s for t in range(s - d + 1)]


def route(spec: ProductSpec, a: Coord, b: Coord) -> list[Coord]:
    """Dimension-order shortest path from a to b as a coordinate list.

    Coordinates are fixed in dimension order 1..n; within a cycle dimension
    the shorter arc is taken, with half-cycle ties broken toward increasing
    position index.  The returned list starts at a and ends at b.
    """
    cur = list(a)
    path = [tuple(cur)]
    for i, factor in enumerate(spec.factors):
        for pos in _factor_steps(factor, cur[i], b[i])[1:]:
            cur[i] = pos
            path.append(tuple(cur))
    return path


def route_length(spec: ProductSpec, a: Coord, b: Coord) -> int:
    """Length of the dimension-order route (sum of per-dimension distances)."""
    return sum(
        factor_distance(f, x, y) for f, x, y in zip(spec.factors, a, b)
    )


def route_cut_usage(
    spec: ProductSpec, cuts: CutFamily, a: Coord, b: Coord
) -> dict[tuple[int, int], int]:
    """How often the dimension-order route from a to b uses each cut.

    Walks the routed path edge by edge and attributes every edge to the cut
    that owns it.  Against crossing_cuts this checks the routing contract:
    the usage keys are the separating cuts, each used exactly once.
    """
    edge_owner: dict[tuple[int, int], tuple[int, int]] = {}
    for cut in cuts.cuts:
        for e in cut.edges:
            edge_owner[e] = (cut.dim, cut.cut_id)
    usage: dict[tuple[int, int], int] = {}
    path = route(spec, a, b)
    for ca, cb in zip(path, path[1:]):
        u = index_of_coord(spec, ca) + 1
        v = index_of_coord(spec, cb) + 1
        key = edge_owner[(min(u, v), max(u, v))]
        usage[key] = usage.get(key, 0) + 1
    return usage


def crossing_cuts(spec: ProductSpec, a: Coord, b: Coord) -> set[tuple[int, int]]:
    """The (dim, cut_id) pairs whose cuts separate coordinates a and b.

    The dimension-order route uses exactly one edge from each returned cut
    and none from any other.
    """
    out: set[tuple[int, int]] = set()
    for i, factor in enumerate(spec.factors):
        x, y = a[i], b[i]
        if x == y:
            continue
        if factor.kind == PATH:
            for j in range(min(x, y) + 1, max(x, y) + 1):
                out.add((i + 1, j))
        else:
            s = factor.size
            half = s // 2
            for j in range(1, half + 1):
                in_a_x = (x - j) % s < half
                in_a_y = (y - j) % s < half
                if in_a_x != in_a_y:
                    out.add((i + 1, j))
    return out
