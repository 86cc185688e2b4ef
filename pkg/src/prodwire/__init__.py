"""Exact wirelength of complete multipartite guests in products of paths and cycles.

Construction, optimal labelings, and three mutually checking wirelength
routes (distance sums, cut congestion sums, closed formulas), certified by
brute-force oracles at desk scale.
"""

from .graphs import (
    DisconnectedGraphError,
    Graph,
    bfs_distances,
    cartesian_product,
    edge_list_text,
    make_complete_multipartite,
    make_cycle,
    make_path,
)
from .labeling import (
    BalanceReport,
    GuestLabeling,
    InfeasibleBalanceError,
    Labeling,
    guest_labeling,
    host_labeling_rotation,
    host_labeling_solver,
    make_host_labeling,
    verify_balance,
)
from .multipartite import (
    MultipartiteSpec,
    balanced_counts,
    degree,
    internal_edges,
    is_optimal_set,
    max_internal_edges,
    max_internal_edges_piecewise,
)
from .oracle import (
    complement_optimality_check,
    max_internal_edges_exhaustive,
    min_boundary_edges_exhaustive,
    min_wirelength_exhaustive,
)
from .product import (
    CutFamily,
    EdgeCut,
    FactorSpec,
    ProductSpec,
    build_cut_family,
    coord_of_index,
    crossing_cuts,
    index_of_coord,
    parse_product_spec,
    route,
    route_length,
)
from .wirelength import (
    Embedding,
    WirelengthReport,
    cut_congestion_closed_form,
    cut_congestion_formula,
    dilation,
    evaluate_labeling,
    identity_embedding,
    identity_wirelength_by_congestion,
    identity_wirelength_by_distance,
    max_edge_congestion,
    minimum_wirelength_closed_form,
    minimum_wirelength_formula,
    wirelength_by_distance,
    wirelength_lower_bound,
)

__all__ = [
    "BalanceReport",
    "CutFamily",
    "DisconnectedGraphError",
    "EdgeCut",
    "Embedding",
    "FactorSpec",
    "Graph",
    "GuestLabeling",
    "InfeasibleBalanceError",
    "Labeling",
    "MultipartiteSpec",
    "ProductSpec",
    "WirelengthReport",
    "balanced_counts",
    "bfs_distances",
    "build_cut_family",
    "cartesian_product",
    "complement_optimality_check",
    "coord_of_index",
    "crossing_cuts",
    "cut_congestion_closed_form",
    "cut_congestion_formula",
    "degree",
    "dilation",
    "edge_list_text",
    "evaluate_labeling",
    "guest_labeling",
    "host_labeling_rotation",
    "host_labeling_solver",
    "identity_embedding",
    "identity_wirelength_by_congestion",
    "identity_wirelength_by_distance",
    "index_of_coord",
    "internal_edges",
    "is_optimal_set",
    "make_complete_multipartite",
    "make_cycle",
    "make_host_labeling",
    "make_path",
    "max_edge_congestion",
    "max_internal_edges",
    "max_internal_edges_exhaustive",
    "max_internal_edges_piecewise",
    "min_boundary_edges_exhaustive",
    "min_wirelength_exhaustive",
    "minimum_wirelength_closed_form",
    "minimum_wirelength_formula",
    "parse_product_spec",
    "route",
    "route_length",
    "verify_balance",
    "wirelength_by_distance",
    "wirelength_lower_bound",
]

__version__ = "0.1.0"
