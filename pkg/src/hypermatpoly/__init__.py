"""Numerical toolkit for hyperbolic and weakly hyperbolic matrix polynomials."""
from .config import DEFAULT_ALPHA_GRID, DEFAULT_T_GRID, DEFAULT_TOLERANCES, Tolerances
from .errors import (
    ConvergenceError,
    HyperbolicError,
    MixedSignError,
    MultipleRootError,
    NonRealRootError,
    NotCoprimeError,
    NotMonicError,
    PreconditionError,
    ShapeError,
    VerificationError,
)
from .polycore import (
    MatrixPolynomial,
    ScalarPolynomial,
    affine_combine,
    companion,
    det_poly,
    evaluate,
    gen_eigs,
    poly_roots,
    real_root_classify,
    sym_eigh,
    sym_eigs,
)
from .hyperbolicity import (
    condition_star,
    degeneration_check,
    derivative_pencil_check,
    direction_poly,
    is_hyperbolic,
    is_weakly_hyperbolic,
    scalar_section,
    verify_coincidence,
)
from .interlacing import (
    build_diagonal_pencil_pair,
    build_symmetric_pair,
    obreschkoff_report,
    residues,
    roots_interlace,
)
from .sdpcheck import feasibility_realization, feasibility_symmetrizer, minimal_realization
from .zones import convex_combination_hyperbolic, section_roots, zone_estimates, zones_consistent
from .horn import HornTriple, bar, d_vector, empirical_triple_filter, horn_triples, verify_theorem24

__version__ = "0.1.0"
