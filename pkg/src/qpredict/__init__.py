"""Predictability of spin outcomes in two-qubit states."""

from .channels import AffineChannel, adc_state, amplitude_damping, apply_to_bell
from .correlations import (
    CorrelationReport,
    correlation_report,
    f2_cjwr,
    f3_cjwr,
    f_haar,
    f_haar_applicable,
    horodecki_m,
    is_bd_separable,
    partial_transpose,
    ppt_min_eigenvalue,
)
from .errors import (
    DegenerateB,
    DomainError,
    InvalidRotation,
    NonPhysical,
    NoSignChange,
    NotOrthogonal,
    QPredictError,
    ZeroProbabilityBranch,
)
from .haar import (
    AverageResult,
    avg_min_bayes_risk,
    avg_min_bayes_risk_local,
    avg_min_inference_variance,
    avg_min_inference_variance_local,
    sphere_quadrature,
)
from .predictability import (
    PredictabilityResult,
    bayes_risk,
    brute_force_min,
    conditional_expectation,
    conditional_quadratic_entropy,
    conditional_state,
    fibonacci_sphere,
    inference_variance,
    joint_prob,
    min_bayes_risk,
    min_inference_variance,
    qber,
    steering_ellipsoid_center,
)
from .qkd import KeyRateReport, binary_entropy, k_bb84, k_star, k_star_opt, security_threshold
from .state import (
    FanoState,
    ValidityReport,
    bell_diagonal,
    bell_state,
    classical_quantum,
    density_matrix,
    from_density_matrix,
    local_rotate,
    maximally_mixed,
    positivity_conditions,
    random_state,
    singular_values,
    validate,
)
from .carlson import carlson_rd, carlson_rf, carlson_rg
from .ttbar import (
    HelicityCorr,
    PhasePoint,
    cpm_eigen,
    integrated_state,
    mixture_corr,
    process_corr,
    ttbar_state,
)

__version__ = "0.1.0"
