"""Exact-arithmetic workbench for integer lattices carrying a prime-order
automorphism, the canonical presentations they generate, and the K-theory
of the directed graphs assembled from those presentations.
"""

from .cyclo_ring import (
    PrimeIdentities,
    RingElt,
    check_twist_power_identity,
    const,
    decompose_prime,
    generator,
    is_prime,
    norm,
    twist,
)
from .errors import (
    CyclatError,
    InternalInvariantError,
    NotNoncyclotomic,
    ParseError,
    PreconditionError,
    SearchExhausted,
)
from .graphkit import (
    INWARD,
    OUTWARD,
    AutomorphismReport,
    GadgetGraph,
    GroupGraphSpec,
    RayFamily,
    build_group_graph,
    build_strand_graph,
    delete_strand,
    is_irreducible,
    to_dot,
    validate_automorphism,
)
from .intlinalg import (
    IntMatrix,
    Lattice,
    QuotientInvariants,
    SnfResult,
    charpoly,
    column_rank,
    det,
    hnf,
    inv_unimodular,
    kernel_basis,
    quotient_invariants,
    snf,
    solve_columns,
)
from .ktheory import (
    BoundaryMatrix,
    GroupVerification,
    KResult,
    PropertyCheck,
    TruncationReport,
    boundary_matrix,
    compute_k,
    core_class_relations,
    induced_action,
    stabilization_check,
    verify_group_graph,
)
from .lattice_props import (
    DiagramReport,
    InclusionDiagram,
    InclusionPair,
    IntersectionReport,
    PurityVerdict,
    check_t_condition,
    check_t_intersection,
    find_equivariant_projection,
    find_impurity_witness,
    inclusion_diagram,
    is_noncyclotomic,
    purity_witness,
)
from .presentation import (
    AugPresentation,
    EquivariantLattice,
    InvariantBasis,
    StabilizedPresentation,
    assemble_direct_sum,
    build_aug,
    cyclic_r_basis,
    cyclic_trivial_basis,
    find_invariant_basis,
    free_r_xi_window,
    stabilize_presentation,
)
from .zmod import (
    CyclicR,
    DirectSum,
    FinMod,
    FreeR,
    Submodule,
    TrivCyclic,
    TrivFree,
    build,
    direct_sum,
    parse_modspec,
    random_module,
)

__version__ = "0.1.0"

__all__ = [
    "AugPresentation",
    "AutomorphismReport",
    "BoundaryMatrix",
    "CyclatError",
    "CyclicR",
    "DiagramReport",
    "DirectSum",
    "EquivariantLattice",
    "FinMod",
    "FreeR",
    "GadgetGraph",
    "GroupGraphSpec",
    "GroupVerification",
    "INWARD",
    "InclusionDiagram",
    "InclusionPair",
    "IntMatrix",
    "InternalInvariantError",
    "IntersectionReport",
    "InvariantBasis",
    "KResult",
    "Lattice",
    "NotNoncyclotomic",
    "OUTWARD",
    "ParseError",
    "PreconditionError",
    "PrimeIdentities",
    "PropertyCheck",
    "PurityVerdict",
    "QuotientInvariants",
    "RayFamily",
    "RingElt",
    "SearchExhausted",
    "SnfResult",
    "StabilizedPresentation",
    "Submodule",
    "TrivCyclic",
    "TrivFree",
    "TruncationReport",
    "assemble_direct_sum",
    "boundary_matrix",
    "build",
    "build_aug",
    "build_group_graph",
    "build_strand_graph",
    "charpoly",
    "check_t_condition",
    "check_t_intersection",
    "check_twist_power_identity",
    "column_rank",
    "compute_k",
    "const",
    "core_class_relations",
    "cyclic_r_basis",
    "cyclic_trivial_basis",
    "decompose_prime",
    "delete_strand",
    "det",
    "direct_sum",
    "find_equivariant_projection",
    "find_impurity_witness",
    "find_invariant_basis",
    "free_r_xi_window",
    "generator",
    "hnf",
    "induced_action",
    "inclusion_diagram",
    "inv_unimodular",
    "is_irreducible",
    "is_noncyclotomic",
    "is_prime",
    "kernel_basis",
    "norm",
    "parse_modspec",
    "purity_witness",
    "quotient_invariants",
    "random_module",
    "snf",
    "solve_columns",
    "stabilization_check",
    "stabilize_presentation",
    "to_dot",
    "twist",
    "validate_automorphism",
    "verify_group_graph",
]
