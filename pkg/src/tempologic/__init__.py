"""Relational encodings of temporal graphs, FO/MSO model checking, width
transfers between decompositions, and brute-force cross-validation."""

from .tgraph import (
    ActivityInterval,
    StaticGraph,
    TemporalEdge,
    TemporalGraph,
    static_graph,
    temporal_graph,
)

__version__ = "0.1.0"

__all__ = [
    "ActivityInterval",
    "StaticGraph",
    "TemporalEdge",
    "TemporalGraph",
    "static_graph",
    "temporal_graph",
]
