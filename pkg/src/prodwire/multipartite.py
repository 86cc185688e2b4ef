"""Guest-side combinatorics for equal-part complete multipartite graphs.

The guest family is parameterized by two exponents: 2^log_parts partite
classes, each of size 2^(log_total - log_parts).  Vertex subsets are
summarized by their per-part count vectors; the number of edges inside a
subset depends only on those counts, which makes the maximum-subgraph
objective a small integer program with a balanced-composition optimum.
"""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass


@dataclass(frozen=True)
class MultipartiteSpec:
    """Complete multipartite guest with 2^log_parts parts of size 2^(log_total-log_parts)."""

    log_parts: int
    log_total: int

    def __post_init__(self) -> None:
        if self.log_parts < 1:
            raise ValueError(f"log_parts must be >= 1, got {self.log_parts}")
        if self.log_total <= self.log_parts:
            raise ValueError(
                f"log_total must exceed log_parts (parts of size >= 2); "
                f"got log_parts={self.log_parts}, log_total={self.log_total}"
            )

    @property
    def num_parts(self) -> int:
        return 1 << self.log_parts

    @property
    def part_size(self) -> int:
        return 1 << (self.log_total - self.log_parts)

    @property
    def num_vertices(self) -> int:
        return 1 << self.log_total


def degree(spec: MultipartiteSpec) -> int:
    """Common vertex degree: every vertex misses only its own part."""
    return spec.part_size * (spec.num_parts - 1)


def _validate_counts(spec: MultipartiteSpec, counts: Sequence[int]) -> None:
    if len(counts) != spec.num_parts:
        raise ValueError(
            f"expected {spec.num_parts} counts, got {len(counts)}"
        )
    for c in counts:
        if c < 0 or c > spec.part_size:
            raise ValueError(f"count {c} outside 0..{spec.part_size}")


def internal_edges(spec: MultipartiteSpec, counts: Sequence[int]) -> int:
    """Edges inside any vertex set with the given per-part counts.

    Every cross-part pair is an edge, so the value is
    (m^2 - sum c_t^2) / 2 with m the total count.
    """
    _validate_counts(spec, counts)
    m = sum(counts)
    return (m * m - sum(c * c for c in counts)) // 2


def balanced_counts(num_parts: int, k: int) -> tuple[int, ...]:
    """The most even composition of k into num_parts counts (spread <= 1)."""
    a, b = divmod(k, num_parts)
    return (a + 1,) * b + (a,) * (num_parts - b)


def max_internal_edges(num_parts: int, part_size: int, k: int) -> int:
    """Maximum edges inside a k-vertex subset of the equal-part guest.

    The maximum is attained exactly by the balanced compositions: with the
    total fixed, cross-part edge count (m^2 - sum c^2)/2 grows whenever a
    vertex moves from a larger count to a smaller one.
    """
    if num_parts < 2 or part_size < 2:
        raise ValueError("need num_parts >= 2 and part_size >= 2")
    if not 0 <= k <= num_parts * part_size:
        raise ValueError(f"k={k} outside 0..{num_parts * part_size}")
    counts = balanced_counts(num_parts, k)
    return (k * k - sum(c * c for c in counts)) // 2


def max_internal_edges_piecewise(num_parts: int, part_size: int, k: int) -> int:
    """Branch form of max_internal_edges, kept as a cross-checked equality.

    Splits on whether k is below the part count, a multiple of it, or in
    between; all three branches agree with the balanced-composition value.
    """
    if num_parts < 2 or part_size < 2:
        raise ValueError("need num_parts >= 2 and part_size >= 2")
    if not 0 <= k <= num_parts * part_size:
        raise ValueError(f"k={k} outside 0..{num_parts * part_size}")
    p = num_parts
    if k <= p - 1:
        return k * (k - 1) // 2
    q, j = divmod(k, p)
    if j == 0:
        return q * q * p * (p - 1) // 2
    q += 1  # k = (q-1)p + j with 1 <= j <= p-1
    return (
        (q - 1) * (q - 1) * p * (p - 1) // 2
        + j * (q - 1) * (p - 1)
        + j * (j - 1) // 2
    )


def is_optimal_set(spec: MultipartiteSpec, counts: Sequence[int]) -> bool:
    """True iff a set with these per-part counts has the maximum internal
    edge count among sets of its size (equivalently, spread <= 1)."""
    got = internal_edges(spec, counts)
    best = max_internal_edges(spec.num_parts, spec.part_size, sum(counts))
    return got == best
