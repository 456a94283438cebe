"""Exact invariants and colorful-subgraph witnesses for general Kneser graphs."""

from .corpus import (
    Coloring,
    Graph,
    Hypergraph,
    categorical_product,
    complete_uniform,
    f_nmk,
    kneser_graph,
    partition_matroid,
)
from .signs import SignVector

__version__ = "0.1.0"

__all__ = [
    "Coloring",
    "Graph",
    "Hypergraph",
    "SignVector",
    "categorical_product",
    "complete_uniform",
    "f_nmk",
    "kneser_graph",
    "partition_matroid",
]
