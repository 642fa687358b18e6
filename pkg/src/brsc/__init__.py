"""Boolean representable simplicial complexes, their truncations and topology."""

from .boolrep import (
    SB,
    BooleanMatrix,
    MooreFamily,
    Verdict,
    br_by_flats,
    closure,
    complex_from_matrix,
    flats,
    independent_sets,
    is_boolean_representable,
    sb_permanent,
    transversals,
)
from .core import (
    LIMITS,
    BRSCError,
    CapExceeded,
    SimplicialComplex,
    VertexUniverse,
    are_isomorphic,
    delete_vertex,
    enumerate_complexes,
    is_matroid,
    join,
    pure_core,
    restriction,
    truncate,
    uniform,
)
from .structure import is_near_matroid, nm_pure_core_flats, nm_truncation_flats, spch_pure_core
from .tbrsc import (
    LineDecomposition,
    b_complex,
    br_decomposition,
    epsilon,
    in_bpav,
    in_tbpav,
    is_tbrsc,
    is_tbrsc_by_truncation,
    largest_paving_tbrsc,
    lines_of,
    s_epsilon,
)
from .topology import betti, boundary_matrix, edge_path_presentation, flat_graph, fung_rank, pi1_rank, torsion
from .report import ComplexReport, analyze

__version__ = "0.1.0"

__all__ = [
    "analyze",
    "are_isomorphic",
    "b_complex",
    "betti",
    "BooleanMatrix",
    "boundary_matrix",
    "br_by_flats",
    "br_decomposition",
    "BRSCError",
    "CapExceeded",
    "closure",
    "complex_from_matrix",
    "ComplexReport",
    "delete_vertex",
    "edge_path_presentation",
    "enumerate_complexes",
    "epsilon",
    "flat_graph",
    "flats",
    "fung_rank",
    "in_bpav",
    "in_tbpav",
    "independent_sets",
    "is_boolean_representable",
    "is_matroid",
    "is_near_matroid",
    "is_tbrsc",
    "is_tbrsc_by_truncation",
    "join",
    "largest_paving_tbrsc",
    "LIMITS",
    "LineDecomposition",
    "lines_of",
    "MooreFamily",
    "nm_pure_core_flats",
    "nm_truncation_flats",
    "pi1_rank",
    "pure_core",
    "restriction",
    "s_epsilon",
    "SB",
    "sb_permanent",
    "SimplicialComplex",
    "spch_pure_core",
    "torsion",
    "transversals",
    "truncate",
    "uniform",
    "Verdict",
    "VertexUniverse",
]
