"""Polyhedral norms, length spectra and isospectrality for weighted graphs
embedded on the torus."""

from torusnorm.surface import (
    Cycle,
    EmbeddedGraph,
    GeneratorSystem,
    InvalidGraphError,
    ParseError,
    RATIONAL,
    Weight,
    WeightOrderError,
    algebraic_intersection,
    homology_class,
    parse_file,
    parse_graph,
    to_text,
    validate,
)

__all__ = [
    "Cycle",
    "EmbeddedGraph",
    "GeneratorSystem",
    "InvalidGraphError",
    "ParseError",
    "RATIONAL",
    "Weight",
    "WeightOrderError",
    "algebraic_intersection",
    "homology_class",
    "parse_file",
    "parse_graph",
    "to_text",
    "validate",
]
