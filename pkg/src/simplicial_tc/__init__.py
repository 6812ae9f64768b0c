"""Discrete topological complexity and simplicial LS-category, with certificates.

Finite abstract simplicial complexes are stored by facets over dense vertex
ids.  Contiguity classes of simplicial maps are decided by exact search over
the implicit contiguity graph; TC and scat are minimum covers by certified
admissible subcomplexes of the categorical square (resp. the complex itself).
Every positive verdict carries a witness that verify_certificate() re-checks
from scratch.
"""

from .collapse import (
    CollapseSequence,
    add_cone_facet,
    contraction_witness,
    core,
    dominated_vertices,
    is_strongly_collapsible,
    replay,
)
from .complexes import (
    Complex,
    build_complex,
    edge_path,
    embedding_ids,
    is_edge_path_connected,
    is_simplex,
    is_subcomplex,
    parse_complex,
    serialize_complex,
    subcomplex,
)
from .errors import (
    DomainMismatch,
    InvalidInput,
    NotSimplicial,
    ParseError,
    SimplicialTCError,
)
from .invariants import (
    AdmissibleSet,
    InvariantResult,
    MotionPlan,
    Status,
    is_categorical,
    is_farber,
    maximal_admissible_sets,
    min_cover,
    motion_plan,
    scat,
    tc,
    validate_motion_plan,
)
from .maps import (
    DEFAULT_BUDGET,
    ContiguityResult,
    ContiguityWitness,
    SimplicialMap,
    Verdict,
    are_contiguous,
    class_constant_witness,
    compose,
    constant_map,
    contiguity_component,
    identity_map,
    inclusion_map,
    neighbors,
    restrict,
    restrict_witness,
    same_contiguity_class,
    validate_map,
    witness_between_constants,
)
from .product import (
    ProductComplex,
    categorical_square,
    diagonal,
    preimage_subcomplex,
    projection,
    square_map,
    square_witness,
)
from .certificates import (
    dumps,
    emit_core,
    emit_membership,
    emit_plan,
    emit_scat,
    emit_tc,
    verify_certificate,
)

__version__ = "0.1.0"
