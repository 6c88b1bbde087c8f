"""Exact-arithmetic engine for lagrangian deformation spaces.

Computes LT^1 and LT^2 of weighted-homogeneous involutive ideals in a
symplectic coordinate space, together with the residue eigenvalues of the
induced connection on the singular locus.
"""

from .fields import GAUSSIAN, RATIONAL, GaussianRational
from .ring import (
    Inhomogeneous,
    ParseError,
    Polynomial,
    RingError,
    WeightedRing,
    is_quasi_homogeneous,
    parse_polynomial,
    partial_derivative,
    weighted_degree,
    z_substitution,
)
from .orders import BlockElimination, WGrevLex
from .groebner import (
    Certificate,
    GroebnerBasis,
    buchberger,
    eliminate,
    graded_quotient_basis,
    ideal_quotient,
    ideal_square,
    intersect,
    krull_dimension,
    saturate,
    saturate_by_iteration,
    schreyer_syzygies,
    syzygies,
    syzygies_degreewise,
)
from .symplectic import LagrangianVariety, PoissonStructure, SymplecticError
from .complexes import ComplexEngine, ComplexError, ConormalPresentation, GradedMap
from .pipeline import (
    ConnectionData,
    LTReport,
    PipelineError,
    StratumReport,
    TorsionFreeSplit,
    check_first_order,
    choose_t,
    connection_kernel_cokernel,
    decomposition_oracle,
    extract_connection,
    lt_report,
    milnor_number,
    obstruction,
    perversity_check,
    split_torsion_free,
    stratify,
)
from .families import (
    FamilyError,
    conormal_variety,
    open_swallowtail,
    plane_curve_variety,
    product_with_line,
    resonance_system,
    swallowtail_normalization,
)
from .manifest import Manifest, ManifestError, parse_manifest
from .report import Report, report_from_lt

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
