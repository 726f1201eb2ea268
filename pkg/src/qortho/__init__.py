"""Numerical library for big q-Laguerre and q-Meixner polynomials, the
associated Jacobi-matrix representation operators, and verification of
their orthogonality, duality, biorthogonality and classical-limit
identities."""

from qortho.qseries import (
    DenominatorZeroError,
    DomainError,
    NonConvergenceError,
    QParams,
    QSeriesError,
    SeriesDivergenceError,
    TailError,
    Truncation,
    jackson_Eq,
    phi_2_1,
    phi_3_2,
    q_number,
    q_pochhammer,
    q_pochhammer_inf,
)
from qortho.polynomials import (
    Family,
    Method,
    PolyEval,
    big_q_laguerre,
    big_q_laguerre_phi21,
    big_q_laguerre_recurrence,
    classical_laguerre,
    dual_f,
    dual_g,
    generating_closed,
    generating_series,
    poly_eval,
    q_inverse_meixner_relation,
    q_meixner,
    spectral_sequence,
)
from qortho.operators import (
    CoefficientVector,
    SpectralPoints,
    Tridiagonal,
    XiBasis,
    build_A,
    build_A1_A2,
    build_generator_matrices,
    eig_tridiagonal,
    eigen_coefficients,
    normalization_c,
    normalization_cprime,
    psi_phi_coefficients,
    qJ0_inverse_action,
    spectrum_points,
)
from qortho.orthogonality import (
    DualPair,
    RowCol,
    VerificationReport,
    run_identity_checks,
    verify_Eq_zero_identity,
    verify_big_laguerre_orthogonality,
    verify_biorthogonality,
    verify_dual_orthogonality,
    verify_identity_3637,
    verify_meixner_orthogonality,
    verify_negative_b_meixner_orthogonality,
    verify_unitarity,
)
from qortho.climit import (
    LimitSweep,
    classical_eigenfunction,
    classical_operator_check,
    limit_operator_entries_check,
    limit_polynomial_check,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # parameters and policies
    "QParams",
    "Truncation",
    # exceptions
    "QSeriesError",
    "DomainError",
    "NonConvergenceError",
    "SeriesDivergenceError",
    "DenominatorZeroError",
    "TailError",
    # q-series kernels
    "q_pochhammer",
    "q_pochhammer_inf",
    "q_number",
    "phi_2_1",
    "phi_3_2",
    "jackson_Eq",
    # polynomial families
    "Family",
    "Method",
    "PolyEval",
    "poly_eval",
    "big_q_laguerre",
    "big_q_laguerre_phi21",
    "big_q_laguerre_recurrence",
    "spectral_sequence",
    "q_meixner",
    "dual_f",
    "dual_g",
    "generating_series",
    "generating_closed",
    "q_inverse_meixner_relation",
    "classical_laguerre",
    # operators
    "Tridiagonal",
    "CoefficientVector",
    "SpectralPoints",
    "XiBasis",
    "build_generator_matrices",
    "build_A",
    "build_A1_A2",
    "eigen_coefficients",
    "psi_phi_coefficients",
    "normalization_c",
    "normalization_cprime",
    "spectrum_points",
    "eig_tridiagonal",
    "qJ0_inverse_action",
    # verification
    "VerificationReport",
    "RowCol",
    "DualPair",
    "run_identity_checks",
    "verify_big_laguerre_orthogonality",
    "verify_identity_3637",
    "verify_unitarity",
    "verify_dual_orthogonality",
    "verify_meixner_orthogonality",
    "verify_negative_b_meixner_orthogonality",
    "verify_Eq_zero_identity",
    "verify_biorthogonality",
    # classical limit
    "LimitSweep",
    "limit_polynomial_check",
    "classical_eigenfunction",
    "classical_operator_check",
    "limit_operator_entries_check",
]
