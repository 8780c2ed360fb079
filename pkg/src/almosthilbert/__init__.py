"""Finite-truncation models of a separable Banach space sitting inside a
Hilbert space, with weighted-metric adjoints, Schatten-type norm checks,
a square-summing dual-functional space, and singular convolution operators.

The package is organized bottom-up:

- numerics: dense linear-algebra kernels with explicit validation
- spaces: grid functions, Lp norms, the duality map, trigonometric bases
- embedding: the weighted inner product induced by a basis and its duals
- operators: adjoints, polar/spectral decompositions, Courant-Fischer
- schatten: singular values and trace-ideal norm inequalities
- ks2: the square-summing functional space built on a cube enumeration
- integrals: Hilbert-transform and Riesz-potential discretizations
- suites / cli: named check registry and the command-line runner
"""

__version__ = "0.1.0"

from . import numerics  # noqa: F401
from .spaces import (  # noqa: F401
    GridFunction,
    SchauderBasis,
    coefficients,
    duality_map,
    fourier_sbasis,
    from_callable,
    load_grid_function,
    lp_norm,
    pairing,
    reconstruct,
    save_grid_function,
)
from .embedding import (  # noqa: F401
    DualFunctional,
    EmbeddingSpace,
    dyadic_weights,
    embedding_space,
    gram_matrix,
    gram_schmidt_biorthonormal,
    h_inner,
    h_norm,
    jb_apply,
    jb_norm_bound,
)
from .operators import (  # noqa: F401
    BOperator,
    SpectralDecomposition,
    adjoint,
    adjoint_algebra_check,
    apply_op,
    b_opnorm_estimate,
    finite_difference_operator,
    from_h_matrix,
    h_matrix,
    h_opnorm,
    identity_operator,
    is_naturally_selfadjoint,
    is_normal,
    is_unitary,
    lax_check,
    minmax_eigenvalue,
    norm_inequality_report,
    orthogonal_subspaces,
    polar_decompose,
    rayleigh_compare,
    self_conjugacy_check,
    spectral_decompose,
)
from .report import CheckResult, VerificationReport, check_result, emit_report, measured  # noqa: F401
from .schatten import (  # noqa: F401
    SingularSpectrum,
    approximation_numbers,
    horn_check,
    lalesco_check,
    lidskii_check,
    nuclear_norm_upper,
    pietsch_cp,
    schatten_norm,
    schatten_norm_paths,
    singular_spectrum,
    singular_values,
    weyl_check,
)
from .ks2 import (  # noqa: F401
    Cube,
    CubeSystem,
    cube_rows,
    cube_system,
    embedding_bound_check,
    functional_Fk,
    functional_values,
    inverse_pairing,
    ks2_inner,
    ks2_norm,
    pairing_order,
    rational_center,
    tail_bound,
    weak_strong_demo,
)
from .integrals import (  # noqa: F401
    PeriodicSignal,
    adjoint_relation_check,
    hilbert_multiplier,
    hilbert_pv,
    hls_bound_report,
    lp_bound_report,
    odd_kernel_operator,
    random_bandlimited,
    riesz_potential,
    signal_from_callable,
    signal_inner,
    signal_lp_norm,
)
from .suites import SUITE_NAMES, SuiteParams, list_checks, run_suite  # noqa: F401
