from .alternation import AltProfile, Niceness, alt_min, alt_of, alt_sigma, is_nice
from .circular import circular_chromatic_number, pq_coloring
from .coloring import chromatic_number, enumerate_optimal_colorings, sample_proper_colorings
from .hypergraph import cd2, is_2_colorable
from .tristar import TriangleStarPartition, circuit_property, triangle_star_partitions

__all__ = [
    "AltProfile",
    "Niceness",
    "TriangleStarPartition",
    "alt_min",
    "alt_of",
    "alt_sigma",
    "cd2",
    "chromatic_number",
    "circuit_property",
    "circular_chromatic_number",
    "enumerate_optimal_colorings",
    "is_2_colorable",
    "is_nice",
    "pq_coloring",
    "sample_proper_colorings",
    "triangle_star_partitions",
]
