"""Guest and host labelings, balance verification, and the balance solver.

The guest labeling assigns partite classes round-robin, so every label prefix
is an optimal set.  Host labelings are bijections label -> coordinate; the
identity embedding then sends guest label l to the host vertex labeled l.
A labeling satisfies the balance contract for a class count 2^q when every
cut side holds, from each residue class of the labels, counts differing by
at most one.  The rotation schemes achieve this in easy regimes; the solver
achieves it in general by recursive even splitting.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache

from .graphs import Graph
from .multipartite import MultipartiteSpec
from .product import (
    Coord,
    CutFamily,
    ProductSpec,
    build_cut_family,
    coord_of_index,
    index_of_coord,
)

ALGO_ROTATION = "rotation"
ALGO_ROTATION_LITERAL = "rotation-literal"
ALGO_SOLVER = "solver"
ALGORITHMS = (ALGO_ROTATION, ALGO_ROTATION_LITERAL, ALGO_SOLVER)


class InfeasibleBalanceError(RuntimeError):
    """No class assignment satisfies the balance contract.

    This would contradict the achievability of the closed-form wirelength,
    so it is surfaced as a finding rather than swallowed.
    """


@dataclass(frozen=True)
class GuestLabeling:
    """Round-robin partite assignment: label l belongs to part ((l-1) mod parts) + 1."""

    spec: MultipartiteSpec

    def part_of(self, label: int) -> int:
        if not 1 <= label <= self.spec.num_vertices:
            raise ValueError(f"label {label} outside 1..{self.spec.num_vertices}")
        return (label - 1) % self.spec.num_parts + 1

    def parts(self) -> list[list[int]]:
        """Labels of each part, ascending."""
        p = self.spec.num_parts
        return [
            list(range(i + 1, self.spec.num_vertices + 1, p)) for i in range(p)
        ]

    def to_graph(self) -> Graph:
        """The guest graph: all edges between labels of different parts."""
        n = self.spec.num_vertices
        p = self.spec.num_parts
        edges = [
            (u, v)
            for u in range(1, n + 1)
            for v in range(u + 1, n + 1)
            if (u - 1) % p != (v - 1) % p
        ]
        return Graph(n, edges)


def guest_labeling(spec: MultipartiteSpec) -> GuestLabeling:
    return GuestLabeling(spec)


class Labeling:
    """Bijection between host labels 1..2^r and coordinates."""

    __slots__ = ("spec", "_coords", "_label_of_index")

    def __init__(self, spec: ProductSpec, coords: list[Coord]):
        if len(coords) != spec.vertex_count:
            raise ValueError(
                f"expected {spec.vertex_count} coordinates, got {len(coords)}"
            )
        self.spec = spec
        self._coords = tuple(coords)
        label_of_index = [0] * spec.vertex_count
        seen = 0
        for lab0, c in enumerate(coords):
            idx = index_of_coord(spec, c)
            if label_of_index[idx]:
                raise ValueError(f"coordinate {c} assigned twice")
            label_of_index[idx] = lab0 + 1
            seen += 1
        self._label_of_index = tuple(label_of_index)

    def place(self, label: int) -> Coord:
        if not 1 <= label <= self.spec.vertex_count:
            raise ValueError(f"label {label} outside 1..{self.spec.vertex_count}")
        return self._coords[label - 1]

    def label_at(self, coord: Coord) -> int:
        return self._label_of_index[index_of_coord(self.spec, coord)]

    def label_of_index(self, index: int) -> int:
        """Label of the host vertex with the given 0-based mixed-radix index."""
        return self._label_of_index[index]

    def classes_by_index(self, log_classes: int) -> list[int]:
        """Vertex index -> 0-based class of its label (residue mod 2^log_classes)."""
        p = 1 << log_classes
        return [(lab - 1) % p for lab in self._label_of_index]


def host_labeling_rotation(spec: ProductSpec, literal: bool = False) -> Labeling:
    """Recursive rotation labeling.

    The 1-dimensional base is the identity along dimension 1.  Extending by
    dimension k concatenates its copies of the smaller labeling, with copy i
    cyclically shifted by i-1 along dimension 1.  With literal=True only the
    outermost dimension's copies are shifted; the generalized form (default)
    shifts at every level.  Bijective by construction; balance is not
    guaranteed, run verify_balance.
    """
    sizes = spec.sizes
    n = len(sizes)
    coords: list[Coord] = [(x,) for x in range(sizes[0])]
    for k in range(1, n):
        rotate_here = (not literal) or (k == n - 1)
        grown: list[Coord] = []
        for copy in range(sizes[k]):
            shift = copy if rotate_here else 0
            for c in coords:
                grown.append(((c[0] + shift) % sizes[0],) + c[1:] + (copy,))
        coords = grown
    return Labeling(spec, coords)


@dataclass(frozen=True)
class BalanceReport:
    """Per-cut class-count spreads for one labeling and class count."""

    log_classes: int
    spreads: tuple[tuple[int, int, int], ...]  # (dim, cut_id, spread)

    @property
    def passed(self) -> bool:
        return all(s <= 1 for _, _, s in self.spreads)

    @property
    def offending(self) -> tuple[tuple[int, int, int], ...]:
        return tuple(e for e in self.spreads if e[2] > 1)

    @property
    def max_spread(self) -> int:
        return max((s for _, _, s in self.spreads), default=0)


def verify_balance(
    spec: ProductSpec,
    labeling: Labeling,
    log_classes: int,
    cuts: CutFamily | None = None,
) -> BalanceReport:
    """Check every cut side against the balance contract.

    A side's spread is max minus min over the 2^log_classes class counts;
    complementary sides always share the same spread, so one value per cut
    suffices.
    """
    if not 1 <= log_classes < spec.log_vertex_count:
        raise ValueError(
            f"log_classes must be in 1..{spec.log_vertex_count - 1}, got {log_classes}"
        )
    if cuts is None:
        cuts = build_cut_family(spec)
    num_classes = 1 << log_classes
    cls = labeling.classes_by_index(log_classes)
    spreads = []
    for cut in cuts.cuts:
        counts = [0] * num_classes
        for vid in cut.side_a:
            counts[cls[vid - 1]] += 1
        spreads.append((cut.dim, cut.cut_id, max(counts) - min(counts)))
    return BalanceReport(log_classes=log_classes, spreads=tuple(spreads))


# --------------------------------------------------------------------------
# Balance solver: recursive even splitting.
#
# If every (class, side) intersection is split ceil/floor-evenly at each of
# log_classes halving levels, the leaf class counts on every side stay within
# floor/ceil of |side| / 2^log_classes, i.e. spread <= 1.  Splits are searched
# among parity functionals on the vertex index bits first (cheap bitmask
# checks; vertex indices are bit strings because all sizes are powers of two),
# then by per-vertex backtracking.  Failed subtrees retry the next candidate
# split, so the search is complete up to the deadline.
# --------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _parity_masks(log_vertex_count: int) -> tuple[int, ...]:
    """For each nonzero functional phi, the mask of indices v with even
    popcount of v & phi."""
    n = 1 << log_vertex_count
    masks = []
    for phi in range(1, n):
        m = 0
        for v in range(n):
            if (v & phi).bit_count() % 2 == 0:
                m |= 1 << v
        masks.append(m)
    return tuple(masks)


class _SplitSearch:
    def __init__(self, side_masks: list[int], parity_masks: tuple[int, ...], deadline: float):
        self.side_masks = side_masks
        self.parity_masks = parity_masks
        self.deadline = deadline
        self.last_good: int | None = None

    def _valid(self, C: int, A: int) -> bool:
        if 2 * A.bit_count() != C.bit_count():
            return False
        for S in self.side_masks:
            m = (C & S).bit_count()
            if m <= 1:
                continue
            a = (A & S).bit_count()
            if not m // 2 <= a <= (m + 1) // 2:
                return False
        return True

    def _splits(self, C: int):
        """Yield valid (A, B) halvings of the class mask C."""
        menu = self.parity_masks
        if self.last_good is not None:
            first = self.last_good
            if self._valid(C, C & first):
                self.last_good = first
                yield C & first, C & ~first
            menu = [v for v in menu if v != first]
        for vphi in menu:
            A = C & vphi
            if self._valid(C, A):
                self.last_good = vphi
                yield A, C & ~A
        yield from self._vertex_splits(C)

    def _vertex_splits(self, C: int):
        """Backtracking fallback enumerating valid halvings element by element."""
        elems = []
        v = 0
        rest = C
        while rest:
            if rest & 1:
                elems.append(v)
            rest >>= 1
            v += 1
        n = len(elems)
        half = n // 2
        local = []
        for S in self.side_masks:
            m = (C & S).bit_count()
            if m > 1:
                local.append((S, (m + 1) // 2))
        member = [
            [i for i, (S, _) in enumerate(local) if (S >> v) & 1] for v in elems
        ]
        caps = [cap for _, cap in local]
        counts = [[0] * len(local), [0] * len(local)]
        totals = [0, 0]
        color = [0] * n

        def backtrack(pos: int):
            if time.monotonic() > self.deadline:
                raise TimeoutError("balance search deadline exceeded")
            if pos == n:
                yield True
                return
            for c in (0,) if pos == 0 else (0, 1):  # first element pinned: color symmetry
                if totals[c] + 1 > half:
                    continue
                if any(counts[c][s] + 1 > caps[s] for s in member[pos]):
                    continue
                totals[c] += 1
                for s in member[pos]:
                    counts[c][s] += 1
                color[pos] = c
                yield from backtrack(pos + 1)
                totals[c] -= 1
                for s in member[pos]:
                    counts[c][s] -= 1

        for _ in backtrack(0):
            A = 0
            for i, v in enumerate(elems):
                if color[i] == 0:
                    A |= 1 << v
            yield A, C & ~A

    def solve(self, C: int, depth: int) -> list[int] | None:
        if depth == 0:
            return [C]
        if time.monotonic() > self.deadline:
            raise TimeoutError("balance search deadline exceeded")
        for A, B in self._splits(C):
            left = self.solve(A, depth - 1)
            if left is None:
                continue
            right = self.solve(B, depth - 1)
            if right is None:
                continue
            return left + right
        return None


def _labeling_from_classes(spec: ProductSpec, cls: list[int], num_classes: int) -> Labeling:
    """Labels within each class ascend by mixed-radix coordinate, so that
    class(label) = (label - 1) mod num_classes."""
    members: list[list[int]] = [[] for _ in range(num_classes)]
    for idx, k in enumerate(cls):
        members[k].append(idx)
    coords: list[Coord | None] = [None] * spec.vertex_count
    for k, idxs in enumerate(members):
        for j, idx in enumerate(idxs):
            coords[k + j * num_classes] = coord_of_index(spec, idx)
    return Labeling(spec, coords)  # type: ignore[arg-type]


def host_labeling_solver(
    spec: ProductSpec,
    log_classes: int,
    cuts: CutFamily | None = None,
    time_limit: float = 60.0,
) -> Labeling:
    """A labeling satisfying the balance contract for 2^log_classes classes.

    Returns the rotation labeling unchanged when it already passes.
    Otherwise searches for a balanced class assignment by recursive even
    splitting and orders labels within classes ascending by coordinate.
    The result is re-verified, never trusted.  Raises InfeasibleBalanceError
    if the exhaustive search proves there is no balanced assignment.
    """
    if not 1 <= log_classes < spec.log_vertex_count:
        raise ValueError(
            f"log_classes must be in 1..{spec.log_vertex_count - 1}, got {log_classes}"
        )
    if cuts is None:
        cuts = build_cut_family(spec)
    rotation = host_labeling_rotation(spec)
    if verify_balance(spec, rotation, log_classes, cuts).passed:
        return rotation
    side_masks = []
    for cut in cuts.cuts:
        m = 0
        for vid in cut.side_a:
            m |= 1 << (vid - 1)
        side_masks.append(m)
    search = _SplitSearch(
        side_masks,
        _parity_masks(spec.log_vertex_count),
        time.monotonic() + time_limit,
    )
    leaves = search.solve((1 << spec.vertex_count) - 1, log_classes)
    if leaves is None:
        raise InfeasibleBalanceError(
            f"no balanced class assignment for {spec.token} with "
            f"2^{log_classes} classes"
        )
    cls = [0] * spec.vertex_count
    for k, leaf in enumerate(leaves):
        idx = 0
        while leaf:
            if leaf & 1:
                cls[idx] = k
            leaf >>= 1
            idx += 1
    labeling = _labeling_from_classes(spec, cls, 1 << log_classes)
    report = verify_balance(spec, labeling, log_classes, cuts)
    if not report.passed:
        raise InfeasibleBalanceError(
            f"solver produced an unbalanced labeling for {spec.token}: "
            f"{report.offending[:3]}"
        )
    return labeling


def make_host_labeling(
    spec: ProductSpec,
    log_classes: int,
    algo: str = ALGO_ROTATION,
    cuts: CutFamily | None = None,
) -> tuple[Labeling, BalanceReport]:
    """Build a host labeling with the chosen algorithm and its balance report."""
    if algo == ALGO_ROTATION:
        labeling = host_labeling_rotation(spec)
    elif algo == ALGO_ROTATION_LITERAL:
        labeling = host_labeling_rotation(spec, literal=True)
    elif algo == ALGO_SOLVER:
        labeling = host_labeling_solver(spec, log_classes, cuts)
    else:
        raise ValueError(f"unknown algorithm {algo!r}; choose from {ALGORITHMS}")
    return labeling, verify_balance(spec, labeling, log_classes, cuts)


# --------------------------------------------------------------------------
# Rendering
# --------------------------------------------------------------------------


def format_guest(gl: GuestLabeling) -> str:
    """One line per part listing its labels ascending."""
    lines = []
    for i, labels in enumerate(gl.parts(), start=1):
        lines.append(f"part {i}: " + " ".join(str(x) for x in labels))
    return "\n".join(lines) + "\n"


def format_guest_machine(gl: GuestLabeling) -> str:
    """Machine format: 'label part' per line."""
    lines = [
        f"{label} {gl.part_of(label)}"
        for label in range(1, gl.spec.num_vertices + 1)
    ]
    return "\n".join(lines) + "\n"


def format_host_table(labeling: Labeling) -> str:
    """2-D slices of labels; blank lines separate slices per outer coordinate."""
    spec = labeling.spec
    sizes = spec.sizes
    width = len(str(spec.vertex_count))
    blocks = []
    outer_sizes = sizes[2:]
    outer_count = 1
    for s in outer_sizes:
        outer_count *= s
    for outer_idx in range(outer_count):
        outer = []
        x = outer_idx
        for s in outer_sizes:
            outer.append(x % s)
            x //= s
        rows = []
        for x1 in range(sizes[0]):
            row = []
            for x2 in range(sizes[1]) if len(sizes) > 1 else [0]:
                coord = (x1, x2, *outer) if len(sizes) > 1 else (x1,)
                row.append(str(labeling.label_at(coord)).rjust(width))
            rows.append(" ".join(row))
        header = []
        if outer_sizes:
            header.append("slice " + ",".join(str(t) for t in outer))
        blocks.append("\n".join(header + rows))
    return "\n\n".join(blocks) + "\n"


def format_host_machine(labeling: Labeling) -> str:
    """Machine format: 'label x_1 x_2 ... x_n' per line."""
    lines = []
    for label in range(1, labeling.spec.vertex_count + 1):
        coord = labeling.place(label)
        lines.append(str(label) + " " + " ".join(str(x) for x in coord))
    return "\n".join(lines) + "\n"
