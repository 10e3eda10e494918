"""Rational inner functions as unitary colligations.

Three equivalent descriptions of a finite Blaschke product are kept in
lockstep: the zero set, the Schur parameter sequence, and the unitary
(n+1) x (n+1) colligation matrix whose characteristic function the
product is.  The package converts between them, runs the Schur
recursion both on coefficients and directly on colligation matrices,
couples systems in feedback, reduces matrices to the special lower
Hessenberg normal form, and builds the kernel-space model realization.
"""

from .colligation import (
    MinimalityReport,
    SpectralIdentityReport,
    UnitaryColligation,
    apply_state_gauge,
    characteristic_function,
    find_equivalence,
    inner_sampling_report,
    intertwining_residual,
    is_minimal,
    is_simple,
    markov_parameters,
    minimality_report,
    simulate_time_domain,
    unitarity_residual,
    verify_spectral_identities,
)
from .errors import (
    DegreeDropFailure,
    DimensionMismatch,
    DiscViolation,
    FeedbackSingular,
    InternalInconsistency,
    NearPole,
    NormMismatch,
    NotMinimal,
    NotNormalized,
    NotPositiveDefinite,
    NotSimple,
    NotUnitary,
    SchurColError,
    Terminal,
    UnitViolation,
    ZerosTooClose,
    ZeroVector,
)
from .hessenberg import (
    HessenbergCertificate,
    hessenberg_minimality,
    is_hl_nonsingular,
    is_hu_nonsingular,
    is_special_lower_hessenberg,
    is_special_upper_hessenberg,
    match_rows,
    normalize_first_row,
    reduce_to_special_lower_hessenberg,
    reduce_to_special_upper_hessenberg,
)
from .rational import (
    BlaschkeProduct,
    InnerSamplingReport,
    RationalInner,
    SchurParameterSequence,
    blaschke_to_rational,
    evaluate,
    from_schur_parameters,
    inverse_schur_transform,
    is_inner_sampled,
    rational_to_blaschke,
    schur_parameters,
    schur_transform,
)
from .realization import (
    KernelBasis,
    RealizationReport,
    UniquenessReport,
    kernel_basis,
    model_colligation,
    realization_uniqueness_check,
    verify_realization,
)
from .redheffer import (
    GaugeFamilyReport,
    PartitionedColligation,
    SchurSection,
    characteristic_matrix,
    elementary_schur_section,
    inverse_schur_colligation,
    redheffer_product,
    redheffer_transform,
    verify_gauge_family,
)
from .schur_state import (
    SchurStateTrace,
    closed_form_matrix,
    colligation_from_schur_parameters,
    denominator_chain,
    normalize_B_row,
    product_form_matrix,
    schur_algorithm_state_space,
    schur_step,
)

__version__ = "0.1.0"
