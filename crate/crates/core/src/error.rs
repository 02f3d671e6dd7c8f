use thiserror::Error;

/// Errors raised by matrix, divergence and quadrature routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed input: shapes, non-finite entries, asymmetric data.
    #[error("invalid input: {0}")]
    Input(String),

    #[error("dimension mismatch: {0}x{0} vs {1}x{1}")]
    DimensionMismatch(usize, usize),

    /// A parameter (usually an order α) outside its admissible range.
    #[error("parameter out of range: {0}")]
    Parameter(String),

    /// A scalar function evaluated outside its domain, or a matrix outside the HPD cone.
    #[error("domain error: {0}")]
    Domain(String),

    #[error(
        "eigensolver did not converge after {sweeps} sweeps (off-diagonal residual {residual:e})"
    )]
    NoConvergence { sweeps: usize, residual: f64 },

    /// Adaptive quadrature ran out of subdivisions; carries the best estimate obtained.
    #[error("quadrature did not reach tolerance: estimate {estimate:e}, error {error:e} after {subdivisions} subdivisions")]
    Quadrature {
        estimate: f64,
        error: f64,
        subdivisions: usize,
    },
}

impl Error {
    /// True for failures of a numerical procedure rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NoConvergence { .. } | Error::Quadrature { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
