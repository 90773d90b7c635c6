"""Symmetric TSP as a constrained group Steiner tree on the triangle-edge
incidence graph: admissible triangle selections, their boundary tours, an
exact disk search, TSP oracles and an LP emitter."""
from .admissibility import (Selection, SoundnessError, Verdict, boundary, check_admissible,
                            decode_tour, induce_selection, vertex_star_euler)
from .complex import (Complex, delaunay_candidates, full_complex, restricted_complex,
                      triangle_edges)
from .encode import fan_encode, fan_triangles
from .ilp import emit_lp, validate_external
from .instance import Instance, edge_length, parse_tsplib, random_euclidean
from .objective import ObjectiveBreakdown, check_boundary_identity, net_weight, tour_length
from .oracle import tsp_oracle_bruteforce, tsp_oracle_held_karp
from .solver import SolveOptions, SolveReport, solve_exact

__version__ = "0.1.0"

__all__ = [
    "Complex", "Instance", "ObjectiveBreakdown", "Selection", "SolveOptions", "SolveReport",
    "SoundnessError", "Verdict", "boundary", "check_admissible", "check_boundary_identity",
    "decode_tour", "delaunay_candidates", "edge_length", "emit_lp", "fan_encode",
    "fan_triangles", "full_complex", "induce_selection", "net_weight", "parse_tsplib",
    "random_euclidean", "restricted_complex", "solve_exact", "tour_length",
    "triangle_edges", "tsp_oracle_bruteforce", "tsp_oracle_held_karp", "validate_external",
    "vertex_star_euler",
]
