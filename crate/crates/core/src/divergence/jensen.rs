//! Jensen divergences and the S-divergence.

use super::bregman::{bregman_from_spectra, generator_spectrum};
use crate::error::Result;
use crate::hpd::entropy::logdet_of;
use crate::hpd::functions::{pd_spectrum, trace_of_spectrum, FunctionKind};
use crate::hpd::matrix::{ensure_same_dim, HermitianMatrix};

/// `½[tr g(X) + tr g(Y)] - tr g((X+Y)/2)` for the convex orientation `g` of `f`.
///
/// For concave generators this is the midpoint term minus the average, so the
/// result is nonnegative for every [`FunctionKind`].
pub fn jensen(f: FunctionKind, x: &HermitianMatrix, y: &HermitianMatrix) -> Result<f64> {
    let f = f.validate()?;
    ensure_same_dim(x, y)?;
    let g = |l: f64| f.convex_value(l);
    let tx = trace_of_spectrum(&generator_spectrum(f, x)?, g)?;
    let ty = trace_of_spectrum(&generator_spectrum(f, y)?, g)?;
    let tm = trace_of_spectrum(&generator_spectrum(f, &x.midpoint(y)?)?, g)?;
    Ok(0.5 * (tx + ty) - tm)
}

/// The same divergence written as averaged Bregman divergences to the midpoint.
pub fn jensen_via_bregman(
    f: FunctionKind,
    x: &HermitianMatrix,
    y: &HermitianMatrix,
) -> Result<f64> {
    let f = f.validate()?;
    ensure_same_dim(x, y)?;
    let m = x.midpoint(y)?;
    let sx = generator_spectrum(f, x)?;
    let sy = generator_spectrum(f, y)?;
    let sm = generator_spectrum(f, &m)?;
    let dx = bregman_from_spectra(f, x, &sx, &m, &sm)?;
    let dy = bregman_from_spectra(f, y, &sy, &m, &sm)?;
    Ok(0.5 * (dx + dy))
}

/// `½[D_f(X, Z) + D_f(Y, Z)]`, the objective minimized by the midpoint.
pub fn jensen_objective(
    f: FunctionKind,
    x: &HermitianMatrix,
    y: &HermitianMatrix,
    z: &HermitianMatrix,
) -> Result<f64> {
    let f = f.validate()?;
    let sz = generator_spectrum(f, z)?;
    let dx = bregman_from_spectra(f, x, &generator_spectrum(f, x)?, z, &sz)?;
    let dy = bregman_from_spectra(f, y, &generator_spectrum(f, y)?, z, &sz)?;
    Ok(0.5 * (dx + dy))
}

/// S-divergence `log det((X+Y)/2) - ½ log det X - ½ log det Y`.
pub fn s_divergence(x: &HermitianMatrix, y: &HermitianMatrix) -> Result<f64> {
    ensure_same_dim(x, y)?;
    let lx = logdet_of(&pd_spectrum(x)?.eigenvalues);
    let ly = logdet_of(&pd_spectrum(y)?.eigenvalues);
    let lm = logdet_of(&pd_spectrum(&x.midpoint(y)?)?.eigenvalues);
    Ok(lm - 0.5 * lx - 0.5 * ly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divergence::bregman::bregman_matrix;
    use crate::hpd::random::{random_hpd, HpdGenConfig};
    use approx::assert_relative_eq;

    fn pair(seed: u64, dim: usize) -> (HermitianMatrix, HermitianMatrix) {
        (
            random_hpd(&HpdGenConfig::new(dim, seed)).unwrap(),
            random_hpd(&HpdGenConfig::new(dim, seed ^ 0xABCD)).unwrap(),
        )
    }

    #[test]
    fn square_kind_is_an_eighth_of_squared_frobenius() {
        // With g = x²/2 the Jensen gap is ‖X−Y‖²/8, i.e. a quarter of the Bregman value ½‖X−Y‖².
        let (x, y) = pair(3, 3);
        let j = jensen(FunctionKind::Square, &x, &y).unwrap();
        let b = bregman_matrix(FunctionKind::Square, &x, &y).unwrap();
        assert_relative_eq!(
            j,
            0.125 * (&x - &y).frobenius_norm().powi(2),
            max_relative = 1e-10
        );
        assert_relative_eq!(j, 0.25 * b, max_relative = 1e-10);
    }

    #[test]
    fn zero_on_equal_inputs() {
        let (x, _) = pair(1, 4);
        for f in [
            FunctionKind::Square,
            FunctionKind::XLogX,
            FunctionKind::NegLog,
            FunctionKind::PowerLow(0.3),
            FunctionKind::PowerHigh(1.4),
        ] {
            assert!(jensen(f, &x, &x).unwrap().abs() < 1e-12);
        }
        assert!(s_divergence(&x, &x).unwrap().abs() < 1e-12);
    }

    #[test]
    fn neglog_scalar_example() {
        let a = HermitianMatrix::diagonal(&[4.0]).unwrap();
        let b = HermitianMatrix::diagonal(&[1.0]).unwrap();
        let expected = 2.5f64.ln() - 0.5 * 4f64.ln();
        assert_relative_eq!(
            jensen(FunctionKind::NegLog, &a, &b).unwrap(),
            expected,
            epsilon = 1e-15
        );
        assert!((expected - 0.223144).abs() < 1e-6);
    }

    #[test]
    fn s_divergence_examples() {
        let a = HermitianMatrix::diagonal(&[4.0]).unwrap();
        let b = HermitianMatrix::diagonal(&[1.0]).unwrap();
        assert_relative_eq!(s_divergence(&a, &b).unwrap(), 1.25f64.ln(), epsilon = 1e-15);
        let a = HermitianMatrix::diagonal(&[1.0, 4.0]).unwrap();
        let b = HermitianMatrix::diagonal(&[4.0, 1.0]).unwrap();
        assert_relative_eq!(
            s_divergence(&a, &b).unwrap(),
            2.0 * 1.25f64.ln(),
            epsilon = 1e-14
        );
    }

    #[test]
    fn the_two_jensen_forms_agree() {
        for seed in 0..20 {
            let (x, y) = pair(seed, 2 + (seed as usize % 4));
            for f in [
                FunctionKind::Square,
                FunctionKind::XLogX,
                FunctionKind::NegLog,
                FunctionKind::PowerLow(0.6),
                FunctionKind::PowerHigh(1.5),
            ] {
                let a = jensen(f, &x, &y).unwrap();
                let b = jensen_via_bregman(f, &x, &y).unwrap();
                assert_relative_eq!(a, b, max_relative = 1e-10);
                assert!(a > 0.0);
            }
        }
    }

    #[test]
    fn neglog_jensen_is_the_s_divergence() {
        let (x, y) = pair(8, 5);
        assert_relative_eq!(
            jensen(FunctionKind::NegLog, &x, &y).unwrap(),
            s_divergence(&x, &y).unwrap(),
            max_relative = 1e-12
        );
    }
}
