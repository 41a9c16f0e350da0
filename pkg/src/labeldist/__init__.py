"""Vertex-labeled exact distance oracles for undirected edge-weighted planar graphs.

The library reduces vertex-to-label distance queries to plain vertex-to-vertex
distance queries: a recursive fundamental-cycle decomposition of the graph is
combined with per-separator point-location structures (incisions, label runs,
additively weighted graph Voronoi diagrams and their centroid decompositions)
so that a query (u, label) is answered exactly with a polylogarithmic number of
probes into a pluggable vertex-to-vertex oracle.
"""

from .weights import Weight
from .planar import (
    EmbeddedGraph,
    GraphError,
    InconsistentAdjacency,
    EulerViolation,
    NegativeWeight,
    UniquenessNotAchieved,
    build_from_rotation,
    parse_graph_text,
    write_graph_text,
    triangulate,
    perturb_for_unique_sp,
    check_unique_sp,
    dual,
    shortest_path_tree,
    emanates_side,
    turn,
    LEFT,
    RIGHT,
    PREFIX,
)
__version__ = "0.1.0"
