"""Finite rings and their non-commuting graphs."""

from .families import (
    CensusOptions,
    FamilySpec,
    build_family,
    census,
    enumerate_rings,
    matrix_ring,
    opposite,
    ring_isomorphic,
    row_ring,
    upper_triangular_ring,
    zero_ring,
)
from .graph import (
    NonCommutingGraph,
    build_graph,
    classify,
    dominating_from_generators,
    graph_isomorphic,
    minimum_dominating,
)
from .isoclinism import is_z_isoclinic, verify_isoclinism_theorem
from .probability import bound_suite, commuting_probability, verify_edge_identity
from .ring import AbelianShape, ElementSet, FiniteRing, center, centralizer, validate

__version__ = "0.1.0"
