"""Exact cycles, multiplicities and sign calculus for multigraded monomial complexes."""

from .builders import (
    BigDiagram,
    MappingCone,
    ResolutionDefectError,
    big_diagram,
    koszul,
    koszul_D_contraction,
    lift_morphism,
    mapping_cone,
    taylor_resolution,
)
from .homology import (
    INFINITE,
    Cycle,
    complex_cycle,
    cycle_additivity_check,
    koszul_binomial_check,
    local_length,
    localize,
    module_cycle,
    restricted_cycle,
    strand_homology_rank,
)
from .monomial import (
    MonomialIdeal,
    PrimeSupport,
    check_filtration,
    colength,
    geometric_multiplicity,
    hilbert_samuel_multiplicity,
    irreducible_decomposition,
    minimal_primes,
    newton_covolume,
    prime_filtration,
)
from .parsing import ParseError, parse_ideal_expr, parse_term_list
from .poly import DifferentialForm, Polynomial, Term, exterior_d, wedge
from .residue import JetFunctional, ch_product_functional, disputation_consistency, pl_verify
from .supercomplex import (
    ChainMap,
    Complex,
    FormEndomorphism,
    FreeModule,
    GradedMatrix,
    Slot,
    compose,
    connection_D,
    dal_identity_check,
    epsilon,
    epsilon_inv,
    graded_trace,
    sniken_decomposition,
    tilde,
    tilde_and_epsilon,
)

__version__ = "0.1.0"

__all__ = [
    "BigDiagram",
    "MappingCone",
    "ResolutionDefectError",
    "big_diagram",
    "koszul",
    "koszul_D_contraction",
    "lift_morphism",
    "mapping_cone",
    "taylor_resolution",
    "INFINITE",
    "Cycle",
    "complex_cycle",
    "cycle_additivity_check",
    "koszul_binomial_check",
    "local_length",
    "localize",
    "module_cycle",
    "restricted_cycle",
    "strand_homology_rank",
    "MonomialIdeal",
    "PrimeSupport",
    "check_filtration",
    "colength",
    "geometric_multiplicity",
    "hilbert_samuel_multiplicity",
    "irreducible_decomposition",
    "minimal_primes",
    "newton_covolume",
    "prime_filtration",
    "ParseError",
    "parse_ideal_expr",
    "parse_term_list",
    "DifferentialForm",
    "Polynomial",
    "Term",
    "exterior_d",
    "wedge",
    "JetFunctional",
    "ch_product_functional",
    "disputation_consistency",
    "pl_verify",
    "ChainMap",
    "Complex",
    "FormEndomorphism",
    "FreeModule",
    "GradedMatrix",
    "Slot",
    "compose",
    "connection_D",
    "dal_identity_check",
    "epsilon",
    "epsilon_inv",
    "graded_trace",
    "sniken_decomposition",
    "tilde",
    "tilde_and_epsilon",
]
