//! Quantum Jensen-Shannon divergence and its Tsallis and Rényi generalizations.

use crate::error::{Error, Result};
use crate::hpd::entropy::{
    check_tsallis_order, power_trace_of, renyi_of, tsallis_of, von_neumann_of,
};
use crate::hpd::functions::pd_spectrum;
use crate::hpd::matrix::{ensure_same_dim, HermitianMatrix};

/// Trace tolerance for treating an input as a density matrix.
pub const UNIT_TRACE_TOL: f64 = 1e-8;

pub fn is_unit_trace(x: &HermitianMatrix) -> bool {
    (x.trace() - 1.0).abs() <= UNIT_TRACE_TOL
}

/// Eigenvalues of `X`, `Y` and `(X+Y)/2`, each validated as positive definite.
pub(crate) struct PairSpectra {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub mid: Vec<f64>,
}

impl PairSpectra {
    pub fn new(x: &HermitianMatrix, y: &HermitianMatrix) -> Result<Self> {
        ensure_same_dim(x, y)?;
        Ok(Self {
            x: pd_spectrum(x)?.eigenvalues,
            y: pd_spectrum(y)?.eigenvalues,
            mid: pd_spectrum(&x.midpoint(y)?)?.eigenvalues,
        })
    }

    /// Eigenvalues of `(X+Y)/2` alone.
    pub fn midpoint_spectrum(x: &HermitianMatrix, y: &HermitianMatrix) -> Result<Vec<f64>> {
        ensure_same_dim(x, y)?;
        Ok(pd_spectrum(&x.midpoint(y)?)?.eigenvalues)
    }

    /// `h(mid) - ½h(X) - ½h(Y)` for a spectral functional `h`.
    pub fn concave_gap(&self, h: impl Fn(&[f64]) -> f64) -> f64 {
        h(&self.mid) - 0.5 * h(&self.x) - 0.5 * h(&self.y)
    }
}

/// `S((X+Y)/2) - ½(S(X) + S(Y))` with the von Neumann entropy `S`.
pub fn qjsd(x: &HermitianMatrix, y: &HermitianMatrix) -> Result<f64> {
    Ok(PairSpectra::new(x, y)?.concave_gap(von_neumann_of))
}

/// Tsallis version for `α ∈ [0,2]`; `α = 1` is [`qjsd`].
pub fn qjsd_alpha(x: &HermitianMatrix, y: &HermitianMatrix, alpha: f64) -> Result<f64> {
    check_tsallis_order(alpha)?;
    if alpha == 1.0 {
        return qjsd(x, y);
    }
    Ok(PairSpectra::new(x, y)?.concave_gap(|e| tsallis_of(e, alpha)))
}

pub(crate) fn check_renyi_divergence_order(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::Parameter(format!(
            "Jensen-Rényi divergence needs α in (0,1), got {alpha}"
        )))
    }
}

/// `H_α((X+Y)/2) - ½H_α(X) - ½H_α(Y)` with the Rényi entropy `H_α`, `α ∈ (0,1)`.
///
/// Evaluated literally for any traces; nonnegativity is only guaranteed for
/// density matrices (see [`is_unit_trace`]).
pub fn qjrd_alpha(x: &HermitianMatrix, y: &HermitianMatrix, alpha: f64) -> Result<f64> {
    check_renyi_divergence_order(alpha)?;
    Ok(PairSpectra::new(x, y)?.concave_gap(|e| renyi_of(e, alpha)))
}

/// `tr X^α`, `tr Y^α`, `tr((X+Y)/2)^α`.
pub(crate) fn power_traces(
    x: &HermitianMatrix,
    y: &HermitianMatrix,
    alpha: f64,
) -> Result<(f64, f64, f64)> {
    let s = PairSpectra::new(x, y)?;
    Ok((
        power_trace_of(&s.x, alpha),
        power_trace_of(&s.y, alpha),
        power_trace_of(&s.mid, alpha),
    ))
}
