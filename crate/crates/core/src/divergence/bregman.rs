//! Bregman divergences on scalars and Hermitian matrices.

use crate::error::{Error, Result};
use crate::hpd::functions::{apply_to_spectrum, pd_spectrum, trace_of_spectrum, FunctionKind};
use crate::hpd::matrix::{ensure_same_dim, HermitianMatrix};
use crate::hpd::spectral::{spectral_decompose, SpectralDecomposition};

/// `D_f(x, y) = f(x) - f(y) - f'(y)(x - y)` for the convex orientation of `f`.
pub fn bregman_scalar(f: FunctionKind, x: f64, y: f64) -> Result<f64> {
    let f = f.validate()?;
    if f.needs_positive() && !(x > 0.0 && y > 0.0) {
        return Err(Error::Domain(format!(
            "{} Bregman divergence needs positive arguments, got ({x}, {y})",
            f.name()
        )));
    }
    Ok(match f {
        FunctionKind::Square => 0.5 * (x - y) * (x - y),
        FunctionKind::XLogX => x * (x / y).ln() - x + y,
        FunctionKind::NegLog => (y / x).ln() + x / y - 1.0,
        _ => f.convex_value(x) - f.convex_value(y) - f.convex_derivative(y) * (x - y),
    })
}

pub(crate) fn generator_spectrum(
    f: FunctionKind,
    x: &HermitianMatrix,
) -> Result<SpectralDecomposition> {
    if f.needs_positive() {
        pd_spectrum(x)
    } else {
        spectral_decompose(x)
    }
}

/// `tr g(X) - tr g(Y) - <g'(Y), X - Y>` where `g` is the convex orientation of `f`.
pub fn bregman_matrix(f: FunctionKind, x: &HermitianMatrix, y: &HermitianMatrix) -> Result<f64> {
    let f = f.validate()?;
    ensure_same_dim(x, y)?;
    let sx = generator_spectrum(f, x)?;
    let sy = generator_spectrum(f, y)?;
    bregman_from_spectra(f, x, &sx, y, &sy)
}

pub(crate) fn bregman_from_spectra(
    f: FunctionKind,
    x: &HermitianMatrix,
    sx: &SpectralDecomposition,
    y: &HermitianMatrix,
    sy: &SpectralDecomposition,
) -> Result<f64> {
    let tx = trace_of_spectrum(sx, |l| f.convex_value(l))?;
    let ty = trace_of_spectrum(sy, |l| f.convex_value(l))?;
    let grad = apply_to_spectrum(sy, |l| f.convex_derivative(l))?;
    Ok(tx - ty - grad.inner_product(&(x - y)))
}
