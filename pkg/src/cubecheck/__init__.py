"""Partial cubes, convex cycles and the classification of cubic vertex-transitive partial cubes."""

from .classifier import ClassificationVerdict, census, classify, coxeter_edge_coloring
from .cubic_graphs import enumerate_cubic_graphs, naive_cubic_graphs
from .cycles import (
    CycleRecord,
    enumerate_convex_cycles,
    euler_report,
    find_convex_traverse,
    girth_signature,
    intertwining,
    shortest_convex_cycle_through,
)
from .graph import Graph, GraphError, bfs_distances, build_graph, cartesian_product
from .graph6 import parse_graph6, write_graph6
from .metric import halfspaces, is_convex_subgraph, is_partial_cube, theta_star_classes
from .symmetry import automorphisms, is_isomorphic, is_vertex_transitive

__version__ = "0.1.0"
