"""Unique-neighborhood networks and multipath security simulation."""

from .analysis import UnnVerdict, is_unn_algebraic, is_unn_directed, is_unn_naive
from .connectivity import PathSet, disjoint_paths, is_k_connected, vertex_connectivity
from .graph import (AdjacencyMatrix, Graph, Neighborhood, adjacency_matrix, neighborhood,
                    parse_edge_list, to_dot, to_edge_list)

__version__ = "0.1.0"

__all__ = [
    "AdjacencyMatrix", "Graph", "Neighborhood", "PathSet", "UnnVerdict",
    "adjacency_matrix", "disjoint_paths", "is_k_connected", "is_unn_algebraic",
    "is_unn_directed", "is_unn_naive", "neighborhood", "parse_edge_list", "to_dot",
    "to_edge_list", "vertex_connectivity",
]
