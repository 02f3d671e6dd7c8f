//! Symmetric divergences on Hermitian positive definite matrices.
//!
//! - [`hpd`]: Hermitian matrices, a cyclic Jacobi eigensolver, matrix functions,
//!   von Neumann / Tsallis / Rényi entropies and seeded random HPD matrices.
//! - [`divergence`]: Bregman and Jensen divergences, the S-divergence, the quantum
//!   Jensen-Shannon family (including its Tsallis and Rényi variants) and the
//!   Jensen-Shannon Tsallis relative entropy.
//! - [`integral`]: adaptive Gauss-Kronrod quadrature on `[0, ∞)` and the integral
//!   representations that write these divergences as superpositions of S-divergences.
//! - [`metric`]: 3×3 conditionally negative definite matrices and randomized
//!   verification suites for the metric axioms.

#![forbid(unsafe_code)]

pub mod divergence;
pub mod error;
pub mod hpd;
pub mod integral;
pub mod metric;
pub mod numfmt;

pub use error::{Error, Result};
