//! Tsallis relative entropy and its Jensen-Shannon symmetrization.

use crate::error::{Error, Result};
use crate::hpd::entropy::power_mean;
use crate::hpd::functions::{apply_to_spectrum, pd_spectrum};
use crate::hpd::matrix::{ensure_same_dim, HermitianMatrix};

fn check_relative_order(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha.is_finite() && alpha != 1.0 {
        Ok(())
    } else {
        Err(Error::Parameter(format!(
            "Tsallis relative entropy needs α in (0,∞) without 1, got {alpha}"
        )))
    }
}

/// `tr(X^a Y^b)` through two spectral decompositions and one dense product.
fn trace_of_powers(x: &HermitianMatrix, a: f64, y: &HermitianMatrix, b: f64) -> Result<f64> {
    let xa = apply_to_spectrum(&pd_spectrum(x)?, |l| l.powf(a))?;
    let yb = apply_to_spectrum(&pd_spectrum(y)?, |l| l.powf(b))?;
    Ok((xa.as_matrix() * yb.as_matrix()).trace().re)
}

/// `(α tr X + (1-α) tr Y - tr X^α Y^{1-α}) / (1-α)`.
pub fn tsallis_relative(x: &HermitianMatrix, y: &HermitianMatrix, alpha: f64) -> Result<f64> {
    check_relative_order(alpha)?;
    ensure_same_dim(x, y)?;
    let cross = trace_of_powers(x, alpha, y, 1.0 - alpha)?;
    Ok((alpha * x.trace() + (1.0 - alpha) * y.trace() - cross) / (1.0 - alpha))
}

/// `S_α(X, Z) + S_α(Y, Z)`, the objective minimized by the power mean.
pub fn tsallis_centroid_objective(
    x: &HermitianMatrix,
    y: &HermitianMatrix,
    z: &HermitianMatrix,
    alpha: f64,
) -> Result<f64> {
    Ok(tsallis_relative(x, z, alpha)? + tsallis_relative(y, z, alpha)?)
}

/// Jensen-Shannon Tsallis divergence `S_α(X, M) + S_α(Y, M)` with `M` the α-power mean.
pub fn js_tsallis_relative(x: &HermitianMatrix, y: &HermitianMatrix, alpha: f64) -> Result<f64> {
    check_relative_order(alpha)?;
    ensure_same_dim(x, y)?;
    let m = power_mean(x, y, alpha)?;
    tsallis_centroid_objective(x, y, &m, alpha)
}

/// Closed reduction of [`js_tsallis_relative`]:
/// `α/(1-α) · [tr(A^t + B^t) - 2 tr((A+B)/2)^t]` with `A = X^α`, `B = Y^α`, `t = 1/α`.
pub fn js_tsallis_reduced(x: &HermitianMatrix, y: &HermitianMatrix, alpha: f64) -> Result<f64> {
    check_relative_order(alpha)?;
    ensure_same_dim(x, y)?;
    let t = 1.0 / alpha;
    let a = apply_to_spectrum(&pd_spectrum(x)?, |l| l.powf(alpha))?;
    let b = apply_to_spectrum(&pd_spectrum(y)?, |l| l.powf(alpha))?;
    let power_trace = |m: &HermitianMatrix| -> Result<f64> {
        Ok(pd_spectrum(m)?.eigenvalues.iter().map(|l| l.powf(t)).sum())
    };
    let ends = power_trace(&a)? + power_trace(&b)?;
    let mid = power_trace(&a.midpoint(&b)?)?;
    Ok(alpha / (1.0 - alpha) * (ends - 2.0 * mid))
}
