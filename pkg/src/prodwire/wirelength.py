"""Wirelength evaluation, closed forms, and the lower-bound certificate.

Three mutually checking routes compute the wirelength of an embedding:

* distance route: sum of routed path lengths over guest edges;
* congestion route: sum over the host edge cuts of the number of guest
  edges they separate (equal to the distance sum because dimension-order
  routing crosses each separating cut exactly once);
* formula route: per-cut exact minima summed arithmetically.

The per-cut exact minimum for a side of size m is m * degree - 2 * I(m)
where I(m) is the maximum internal edge count of an m-subset of the guest.
When every side size is divisible by the class count 2^q this collapses to
the classical closed forms (products of powers of two); outside that regime
the closed forms undershoot and the exact per-cut sum is authoritative.
All arithmetic is exact integer arithmetic.
"""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field

from .graphs import Graph, bfs_distances
from .labeling import Labeling
from .multipartite import max_internal_edges
from .product import (
    CYCLE,
    PATH,
    CutFamily,
    ProductSpec,
    build_cut_family,
    factor_distance,
    index_of_coord,
    route,
    route_length,
)


# --------------------------------------------------------------------------
# Generic embeddings (arbitrary guest and host graphs)
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Embedding:
    """Injective vertex map from guest into host; paths come from a router."""

    guest: Graph
    host: Graph
    assignment: tuple[int, ...]  # assignment[v-1] = host vertex for guest v

    def __post_init__(self) -> None:
        if len(self.assignment) != self.guest.vertex_count:
            raise ValueError(
                f"assignment length {len(self.assignment)} != "
                f"{self.guest.vertex_count} guest vertices"
            )
        if len(set(self.assignment)) != len(self.assignment):
            raise ValueError("assignment is not injective")
        for h in self.assignment:
            if not 1 <= h <= self.host.vertex_count:
                raise ValueError(f"host vertex {h} out of range")

    def image(self, guest_vertex: int) -> int:
        return self.assignment[guest_vertex - 1]


def wirelength_by_distance(emb: Embedding) -> int:
    """Sum over guest edges of the host distance between the images."""
    dist_from: dict[int, dict[int, int]] = {}
    total = 0
    for u, v in emb.guest.edges():
        hu, hv = emb.image(u), emb.image(v)
        if hu not in dist_from:
            dist_from[hu] = bfs_distances(emb.host, hu)
        total += dist_from[hu][hv]
    return total


def dilation(emb: Embedding) -> int:
    """Maximum host distance over guest edges."""
    dist_from: dict[int, dict[int, int]] = {}
    worst = 0
    for u, v in emb.guest.edges():
        hu, hv = emb.image(u), emb.image(v)
        if hu not in dist_from:
            dist_from[hu] = bfs_distances(emb.host, hu)
        worst = max(worst, dist_from[hu][hv])
    return worst


def _bfs_parents(host: Graph, source: int) -> list[int]:
    """Deterministic BFS tree (sorted adjacency, FIFO discovery)."""
    parent = [0] * (host.vertex_count + 1)
    parent[source] = source
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in host.neighbors(u):
            if parent[w] == 0:
                parent[w] = u
                queue.append(w)
    return parent


def canonical_shortest_path(host: Graph, u: int, v: int) -> list[int]:
    """A deterministic shortest path from u to v."""
    parent = _bfs_parents(host, u)
    if parent[v] == 0 and v != u:
        raise ValueError(f"{v} unreachable from {u}")
    path = [v]
    while path[-1] != u:
        path.append(parent[path[-1]])
    path.reverse()
    return path


def host_edge_congestions(emb: Embedding, router=None) -> Counter:
    """Per-host-edge count of routed guest-edge paths using it.

    router(u, v) may supply host-vertex paths; the default is the canonical
    BFS shortest path.  The counts sum to the wirelength when the router is
    shortest-path.
    """
    if router is None:
        def router(a: int, b: int) -> list[int]:
            return canonical_shortest_path(emb.host, a, b)

    load: Counter = Counter()
    for u, v in emb.guest.edges():
        path = router(emb.image(u), emb.image(v))
        for a, b in zip(path, path[1:]):
            load[(min(a, b), max(a, b))] += 1
    return load


def max_edge_congestion(emb: Embedding, router=None) -> int:
    load = host_edge_congestions(emb, router)
    return max(load.values(), default=0)


# --------------------------------------------------------------------------
# Identity embeddings of the round-robin multipartite guest into a product
# host under a labeling.  Guest label l sits at host coordinate place(l);
# guest edges join labels with different residues mod 2^log_classes.
# --------------------------------------------------------------------------


def _check_log_classes(spec: ProductSpec, log_classes: int) -> None:
    if not 1 <= log_classes < spec.log_vertex_count:
        raise ValueError(
            f"log_classes must be in 1..{spec.log_vertex_count - 1}, "
            f"got {log_classes}"
        )


def guest_degree(spec: ProductSpec, log_classes: int) -> int:
    """Degree of the guest: everything except the own residue class."""
    p = 1 << log_classes
    return (spec.vertex_count // p) * (p - 1)


def identity_embedding(spec: ProductSpec, labeling: Labeling, log_classes: int) -> Embedding:
    """Materialize the identity embedding as graph objects (small instances)."""
    from .graphs import cartesian_product, make_cycle, make_path
    from .labeling import GuestLabeling
    from .multipartite import MultipartiteSpec

    _check_log_classes(spec, log_classes)
    guest = GuestLabeling(
        MultipartiteSpec(log_parts=log_classes, log_total=spec.log_vertex_count)
    ).to_graph()
    host = cartesian_product(
        [
            make_path(f.size) if f.kind == PATH else make_cycle(f.size)
            for f in spec.factors
        ]
    )
    assignment = tuple(
        index_of_coord(spec, labeling.place(label)) + 1
        for label in range(1, spec.vertex_count + 1)
    )
    return Embedding(guest=guest, host=host, assignment=assignment)


def identity_wirelength_by_distance(
    spec: ProductSpec, labeling: Labeling, log_classes: int
) -> int:
    """Distance-route wirelength of the identity embedding.

    Routed length decomposes per dimension, so the sum runs over label pairs
    in different classes with per-dimension distance tables.
    """
    _check_log_classes(spec, log_classes)
    p = 1 << log_classes
    n = spec.vertex_count
    tables = [
        [[factor_distance(f, a, b) for b in range(f.size)] for a in range(f.size)]
        for f in spec.factors
    ]
    coords = [labeling.place(label) for label in range(1, n + 1)]
    total = 0
    for u in range(n):
        cu = coords[u]
        ku = u % p
        for v in range(u + 1, n):
            if v % p == ku:
                continue
            cv = coords[v]
            d = 0
            for t, xu, xv in zip(tables, cu, cv):
                d += t[xu][xv]
            total += d
    return total


def identity_wirelength_by_congestion(
    spec: ProductSpec,
    labeling: Labeling,
    log_classes: int,
    cuts: CutFamily | None = None,
) -> tuple[int, list[int]]:
    """Congestion-route wirelength: per cut, the guest edges it separates.

    For side class counts c_k on a side of size m, the separated guest edge
    count is m * degree - m^2 + sum c_k^2.  Valid for any labeling because
    dimension-order routes cross each separating cut exactly once.
    """
    _check_log_classes(spec, log_classes)
    if cuts is None:
        cuts = build_cut_family(spec)
    p = 1 << log_classes
    deg = guest_degree(spec, log_classes)
    cls = labeling.classes_by_index(log_classes)
    per_cut = []
    for cut in cuts.cuts:
        counts = [0] * p
        for vid in cut.side_a:
            counts[cls[vid - 1]] += 1
        m = len(cut.side_a)
        per_cut.append(m * deg - m * m + sum(c * c for c in counts))
    return sum(per_cut), per_cut


def identity_dilation(spec: ProductSpec, labeling: Labeling, log_classes: int) -> int:
    """Maximum routed length over guest edges of the identity embedding."""
    _check_log_classes(spec, log_classes)
    p = 1 << log_classes
    n = spec.vertex_count
    coords = [labeling.place(label) for label in range(1, n + 1)]
    worst = 0
    for u in range(n):
        ku = u % p
        for v in range(u + 1, n):
            if v % p != ku:
                worst = max(worst, route_length(spec, coords[u], coords[v]))
    return worst


def identity_max_edge_congestion(
    spec: ProductSpec, labeling: Labeling, log_classes: int
) -> int:
    """Maximum per-host-edge load under dimension-order routing."""
    _check_log_classes(spec, log_classes)
    p = 1 << log_classes
    n = spec.vertex_count
    coords = [labeling.place(label) for label in range(1, n + 1)]
    load: Counter = Counter()
    for u in range(n):
        ku = u % p
        for v in range(u + 1, n):
            if v % p == ku:
                continue
            path = route(spec, coords[u], coords[v])
            ids = [index_of_coord(spec, c) for c in path]
            for a, b in zip(ids, ids[1:]):
                load[(min(a, b), max(a, b))] += 1
    return max(load.values(), default=0)


# --------------------------------------------------------------------------
# Formula route and lower bound
# --------------------------------------------------------------------------


def _side_size(spec: ProductSpec, dim: int, cut_id: int) -> int:
    factor = spec.factors[dim - 1]
    if factor.kind == PATH:
        if not 1 <= cut_id <= factor.size - 1:
            raise ValueError(f"path cut id {cut_id} outside 1..{factor.size - 1}")
        return (spec.vertex_count // factor.size) * cut_id
    if not 1 <= cut_id <= factor.size // 2:
        raise ValueError(f"cycle cut id {cut_id} outside 1..{factor.size // 2}")
    return spec.vertex_count // 2


def cut_congestion_formula(
    spec: ProductSpec, log_classes: int, dim: int, cut_id: int
) -> int:
    """Exact minimum congestion of one cut over all embeddings.

    Side size m yields m * degree - 2 * I(m); any embedding loads the cut at
    least this much, and a balanced labeling meets it.
    """
    _check_log_classes(spec, log_classes)
    m = _side_size(spec, dim, cut_id)
    p = 1 << log_classes
    deg = guest_degree(spec, log_classes)
    return m * deg - 2 * max_internal_edges(p, spec.vertex_count // p, m)


def cut_congestion_closed_form(
    spec: ProductSpec, log_classes: int, dim: int, cut_id: int
) -> int:
    """Power-of-two closed form of the per-cut minimum.

    Equals cut_congestion_formula whenever 2^log_classes divides the side
    size; below that it undershoots (it treats the balanced subset bound
    m^2 (1 - 2^-q) / 2 as attainable even when m < 2^q).
    """
    _check_log_classes(spec, log_classes)
    r = spec.log_vertex_count
    q = log_classes
    factor = spec.factors[dim - 1]
    _side_size(spec, dim, cut_id)  # validates cut_id
    if factor.kind == PATH:
        ri = factor.log_size
        j = cut_id
        return (1 << (2 * r - 2 * ri - q)) * ((1 << q) - 1) * ((1 << ri) - j) * j
    return (1 << (2 * r - q - 2)) * ((1 << q) - 1)


def minimum_wirelength_formula(
    spec: ProductSpec, log_classes: int, relax: bool = False
) -> int:
    """Minimum wirelength: exact per-cut minima summed over the cut family."""
    spec.require_theorem_mode(relax)
    _check_log_classes(spec, log_classes)
    total = 0
    for dim, factor in enumerate(spec.factors, start=1):
        if factor.kind == PATH:
            for j in range(1, factor.size):
                total += cut_congestion_formula(spec, log_classes, dim, j)
        else:
            total += (factor.size // 2) * cut_congestion_formula(
                spec, log_classes, dim, 1
            )
    return total


def minimum_wirelength_closed_form(
    spec: ProductSpec, log_classes: int, relax: bool = False
) -> int:
    """Mixed closed form: telescoped path-dimension sums plus cycle terms.

    Per path dimension the per-cut values sum to
    2^(2r - r_i - q) (2^q - 1) (2^(2 r_i) - 1) / 6, always an integer.
    Valid as the exact minimum only when every side size is divisible by
    2^q, i.e. q <= r - max(r_i); otherwise it is a strict underestimate.
    """
    spec.require_theorem_mode(relax)
    _check_log_classes(spec, log_classes)
    r = spec.log_vertex_count
    q = log_classes
    total = 0
    for factor in spec.factors:
        ri = factor.log_size
        if factor.kind == PATH:
            numer = (1 << (2 * r - ri - q)) * ((1 << q) - 1) * ((1 << (2 * ri)) - 1)
            if numer % 6:
                raise AssertionError(f"path term {numer} not divisible by 6")
            total += numer // 6
        else:
            total += (1 << (2 * r + ri - q - 3)) * ((1 << q) - 1)
    return total


def closed_form_matches_exact(spec: ProductSpec, log_classes: int) -> bool:
    """True iff every cut side size is divisible by the class count."""
    r = spec.log_vertex_count
    return log_classes <= r - max(f.log_size for f in spec.factors)


def grid_closed_form(spec: ProductSpec, log_classes: int, relax: bool = False) -> int:
    """Bracket closed form for all-path hosts:
    (2^(2r-q) (2^q - 1) / 6) * sum_i (2^(r_i) - 2^(-r_i))."""
    spec.require_theorem_mode(relax)
    _check_log_classes(spec, log_classes)
    if any(f.kind != PATH for f in spec.factors):
        raise ValueError("grid form needs all path factors")
    r = spec.log_vertex_count
    q = log_classes
    numer = ((1 << q) - 1) * sum(
        (1 << (2 * r - q + f.log_size)) - (1 << (2 * r - q - f.log_size))
        for f in spec.factors
    )
    if numer % 6:
        raise AssertionError(f"grid bracket {numer} not divisible by 6")
    return numer // 6


def torus_closed_form(spec: ProductSpec, log_classes: int, relax: bool = False) -> int:
    """Closed form for all-cycle hosts: 2^(2r-q-3) (2^q - 1) sum_i 2^(r_i)."""
    spec.require_theorem_mode(relax)
    _check_log_classes(spec, log_classes)
    if any(f.kind != CYCLE for f in spec.factors):
        raise ValueError("torus form needs all cycle factors")
    r = spec.log_vertex_count
    q = log_classes
    return (1 << (2 * r - q - 3)) * ((1 << q) - 1) * sum(f.size for f in spec.factors)


def cylinder_closed_form(spec: ProductSpec, log_classes: int, relax: bool = False) -> int:
    """Closed form for hosts with exactly one cycle factor:
    the path bracket plus (2^q - 1) 2^(2r + r_cycle - q - 3)."""
    spec.require_theorem_mode(relax)
    _check_log_classes(spec, log_classes)
    cycles = [f for f in spec.factors if f.kind == CYCLE]
    if len(cycles) != 1:
        raise ValueError("cylinder form needs exactly one cycle factor")
    r = spec.log_vertex_count
    q = log_classes
    numer = ((1 << q) - 1) * sum(
        (1 << (2 * r - q + f.log_size)) - (1 << (2 * r - q - f.log_size))
        for f in spec.factors
        if f.kind == PATH
    )
    if numer % 6:
        raise AssertionError(f"cylinder bracket {numer} not divisible by 6")
    return numer // 6 + ((1 << q) - 1) * (
        1 << (2 * r + cycles[0].log_size - q - 3)
    )


def wirelength_lower_bound(
    spec: ProductSpec,
    log_classes: int,
    cuts: CutFamily | None = None,
    relax: bool = False,
) -> int:
    """Lower bound on the wirelength of every embedding.

    Sums, over the measured cut family, side_size * degree - 2 * I(side_size).
    Each routed guest edge crosses each separating cut once, so each cut's
    load is at least its bound; equality with an achieved wirelength
    certifies optimality.
    """
    spec.require_theorem_mode(relax)
    _check_log_classes(spec, log_classes)
    if cuts is None:
        cuts = build_cut_family(spec)
    p = 1 << log_classes
    deg = guest_degree(spec, log_classes)
    part = spec.vertex_count // p
    total = 0
    for cut in cuts.cuts:
        m = len(cut.side_a)
        total += m * deg - 2 * max_internal_edges(p, part, m)
    return total


# --------------------------------------------------------------------------
# Reports
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CutReport:
    dim: int
    cut_id: int
    side_size: int
    congestion: int
    predicted: int

    @property
    def optimal(self) -> bool:
        return self.congestion == self.predicted


@dataclass(frozen=True)
class WirelengthReport:
    """All computation routes for one labeled product instance."""

    spec_token: str
    log_classes: int
    algo: str
    balance_passed: bool
    wl_distance: int
    wl_congestion: int
    wl_formula: int | None
    lower_bound: int | None
    per_cut: tuple[CutReport, ...]
    dilation: int | None = None
    max_edge_congestion: int | None = None
    extras: dict = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        """Optimality certificate: all routes agree and balance holds."""
        return (
            self.balance_passed
            and self.wl_distance == self.wl_congestion
            and self.wl_formula is not None
            and self.lower_bound is not None
            and self.wl_distance == self.wl_formula == self.lower_bound
        )

    def to_json_obj(self) -> dict:
        obj = {
            "spec": self.spec_token,
            "log_classes": self.log_classes,
            "algo": self.algo,
            "balance_passed": self.balance_passed,
            "wl_distance": self.wl_distance,
            "wl_congestion": self.wl_congestion,
            "wl_formula": self.wl_formula,
            "lower_bound": self.lower_bound,
            "certified": self.certified,
            "per_cut": [
                {
                    "dim": c.dim,
                    "cut_id": c.cut_id,
                    "side_size": c.side_size,
                    "congestion": c.congestion,
                    "predicted": c.predicted,
                    "optimal": c.optimal,
                }
                for c in self.per_cut
            ],
        }
        if self.dilation is not None:
            obj["dilation"] = self.dilation
        if self.max_edge_congestion is not None:
            obj["max_edge_congestion"] = self.max_edge_congestion
        obj.update(self.extras)
        return obj

    def to_csv(self) -> str:
        lines = ["dim,cut_id,side_size,congestion,predicted,optimal"]
        for c in self.per_cut:
            lines.append(
                f"{c.dim},{c.cut_id},{c.side_size},{c.congestion},"
                f"{c.predicted},{str(c.optimal).lower()}"
            )
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        lines = [
            f"host {self.spec_token}  classes 2^{self.log_classes}  algo {self.algo}",
            f"balance: {'PASS' if self.balance_passed else 'FAIL'}",
            f"wirelength by distance:   {self.wl_distance}",
            f"wirelength by congestion: {self.wl_congestion}",
        ]
        if self.wl_formula is not None:
            lines.append(f"wirelength by formula:    {self.wl_formula}")
        if self.lower_bound is not None:
            lines.append(f"lower bound:              {self.lower_bound}")
        if self.dilation is not None:
            lines.append(f"dilation:                 {self.dilation}")
        if self.max_edge_congestion is not None:
            lines.append(f"max edge congestion:      {self.max_edge_congestion}")
        lines.append("certified: " + ("YES" if self.certified else "NO"))
        return "\n".join(lines) + "\n"


def evaluate_labeling(
    spec: ProductSpec,
    labeling: Labeling,
    log_classes: int,
    algo: str = "given",
    cuts: CutFamily | None = None,
    relax: bool = False,
    with_path_metrics: bool = False,
) -> WirelengthReport:
    """Evaluate one labeling through every route and assemble the report."""
    from .labeling import verify_balance

    _check_log_classes(spec, log_classes)
    if cuts is None:
        cuts = build_cut_family(spec)
    balance = verify_balance(spec, labeling, log_classes, cuts)
    wl_dist = identity_wirelength_by_distance(spec, labeling, log_classes)
    wl_cong, per_cut_values = identity_wirelength_by_congestion(
        spec, labeling, log_classes, cuts
    )
    per_cut = tuple(
        CutReport(
            dim=cut.dim,
            cut_id=cut.cut_id,
            side_size=len(cut.side_a),
            congestion=ec,
            predicted=cut_congestion_formula(spec, log_classes, cut.dim, cut.cut_id),
        )
        for cut, ec in zip(cuts.cuts, per_cut_values)
    )
    try:
        spec.require_theorem_mode(relax)
        wl_formula = minimum_wirelength_formula(spec, log_classes, relax)
        bound = wirelength_lower_bound(spec, log_classes, cuts, relax)
    except ValueError:
        wl_formula = None
        bound = None
    dil = max_ec = None
    if with_path_metrics:
        dil = identity_dilation(spec, labeling, log_classes)
        max_ec = identity_max_edge_congestion(spec, labeling, log_classes)
    return WirelengthReport(
        spec_token=spec.token,
        log_classes=log_classes,
        algo=algo,
        balance_passed=balance.passed,
        wl_distance=wl_dist,
        wl_congestion=wl_cong,
        wl_formula=wl_formula,
        lower_bound=bound,
        per_cut=per_cut,
        dilation=dil,
        max_edge_congestion=max_ec,
    )
