"""Extremal A_alpha spectral radius of trees and unicyclic graphs with a given degree sequence."""

from ._kernels import BACKEND
from .builders import (
    LayeredConstruction,
    attach_two_paths,
    build_extremal_tree,
    build_extremal_unicyclic,
    extremal_tree_construction,
    extremal_unicyclic_construction,
)
from .graph import (
    BfsOrdering,
    DegreeSequence,
    GraphError,
    SequenceClass,
    SimpleGraph,
    bfs_heights,
    canonical_form,
    check_bfs_ordering,
    classify,
    degree_sequence,
    find_bfs_ordering,
    from_edge_list,
    list_internal_paths,
    validate_degree_sequence,
)
from .spectrum import (
    ConvergenceError,
    SpectralResult,
    build_a_alpha,
    spectral_bounds,
    spectral_radius,
    verify_certificate,
)

__version__ = "0.1.0"
