//! Conditionally negative definite 3×3 matrices and randomized metric verification.

pub mod cnd;
pub mod report;
pub mod suites;

pub use cnd::{
    check_cnd_theorem, cm_transform_check, cm_transform_from_traces, cnd_predicates, d_to_m,
    divergence_is_cnd, divergence_matrix, hollow, is_cnd_3x3, mat3_from_hermitian, sqrt_triangle,
    CmTransformCheck, CndPredicates, CndTheoremCheck, Mat3, TripleTraces,
};
pub use report::{TrialRecord, VerificationReport, CSV_HEADER};
pub use suites::{
    axioms_suite, cm_transform_suite, cnd_theorem_suite, integral_suite, limit_check, limit_suite,
    optimality_suite, reduction_suite, triangle_outcome, triangle_suite, Centroid, IntegralRep,
    SuiteConfig, TriangleOutcome,
};
