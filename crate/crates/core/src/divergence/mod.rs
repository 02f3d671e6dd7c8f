//! Divergences between Hermitian positive definite matrices, evaluated spectrally.

pub mod bregman;
pub mod jensen;
pub mod quantum;
pub mod spec;
pub mod tsallis;

pub use bregman::{bregman_matrix, bregman_scalar};
pub use jensen::{jensen, jensen_objective, jensen_via_bregman, s_divergence};
pub use quantum::{is_unit_trace, qjrd_alpha, qjsd, qjsd_alpha, UNIT_TRACE_TOL};
pub use spec::DivergenceSpec;
pub use tsallis::{
    js_tsallis_reduced, js_tsallis_relative, tsallis_centroid_objective, tsallis_relative,
};
