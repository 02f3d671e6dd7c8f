//! Improper-integral quadrature and integral representations of Jensen divergences.

pub mod quadrature;
pub mod renyi;
pub mod representation;

pub use quadrature::{
    quad_improper, quad_improper_with_tail, quad_interval, QuadratureConfig, QuadratureResult,
};
pub use renyi::{qjrd_via_integral, renyi_delta_t, RenyiIntegral, RenyiTraceData};
pub use representation::{
    delta_f_convex_via_sdiv, delta_f_convex_via_sdiv_detailed, delta_f_via_sdiv,
    delta_f_via_sdiv_detailed, log_rep, power_rep_high, power_rep_low, Density, Measure,
    RepresentationI, RepresentationII, ShiftedSdivKernel,
};
