//! Matrix entropies, log-determinant and the α-power mean.

use super::functions::{apply_to_spectrum, pd_spectrum};
use super::matrix::{ensure_same_dim, HermitianMatrix};
use crate::error::{Error, Result};

pub(crate) fn von_neumann_of(eigs: &[f64]) -> f64 {
    -eigs.iter().map(|&l| l * l.ln()).sum::<f64>()
}

pub(crate) fn power_trace_of(eigs: &[f64], alpha: f64) -> f64 {
    eigs.iter().map(|&l| l.powf(alpha)).sum()
}

pub(crate) fn tsallis_of(eigs: &[f64], alpha: f64) -> f64 {
    if alpha == 1.0 {
        return von_neumann_of(eigs);
    }
    let tr: f64 = eigs.iter().sum();
    (power_trace_of(eigs, alpha) - tr) / (1.0 - alpha)
}

pub(crate) fn renyi_of(eigs: &[f64], alpha: f64) -> f64 {
    let tr: f64 = eigs.iter().sum();
    (power_trace_of(eigs, alpha) / tr).ln() / (1.0 - alpha)
}

pub(crate) fn logdet_of(eigs: &[f64]) -> f64 {
    eigs.iter().map(|l| l.ln()).sum()
}

pub(crate) fn check_tsallis_order(alpha: f64) -> Result<()> {
    if (0.0..=2.0).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::Parameter(format!(
            "Tsallis order must lie in [0,2], got {alpha}"
        )))
    }
}

/// von Neumann entropy `-tr(X log X)`.
pub fn entropy_von_neumann(x: &HermitianMatrix) -> Result<f64> {
    Ok(von_neumann_of(&pd_spectrum(x)?.eigenvalues))
}

/// Tsallis entropy `(tr X^α - tr X)/(1-α)` for `α ∈ [0,2]`; `α = 1` is the von Neumann limit.
pub fn entropy_tsallis(x: &HermitianMatrix, alpha: f64) -> Result<f64> {
    check_tsallis_order(alpha)?;
    Ok(tsallis_of(&pd_spectrum(x)?.eigenvalues, alpha))
}

/// Rényi entropy `log(tr X^α / tr X)/(1-α)` for `α ≥ 0`, `α ≠ 1`.
pub fn entropy_renyi(x: &HermitianMatrix, alpha: f64) -> Result<f64> {
    if alpha == 1.0 {
        return Err(Error::Parameter(
            "Rényi entropy at α = 1 is a limit; use the von Neumann entropy".into(),
        ));
    }
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(Error::Parameter(format!(
            "Rényi order must be ≥ 0, got {alpha}"
        )));
    }
    Ok(renyi_of(&pd_spectrum(x)?.eigenvalues, alpha))
}

/// `log det X`.
pub fn logdet(x: &HermitianMatrix) -> Result<f64> {
    Ok(logdet_of(&pd_spectrum(x)?.eigenvalues))
}

/// `((X^α + Y^α)/2)^{1/α}`; the arithmetic mean when `α = 1`.
pub fn power_mean(x: &HermitianMatrix, y: &HermitianMatrix, alpha: f64) -> Result<HermitianMatrix> {
    ensure_same_dim(x, y)?;
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::Parameter(format!(
            "power mean needs α > 0, got {alpha}"
        )));
    }
    let sx = pd_spectrum(x)?;
    let sy = pd_spectrum(y)?;
    if alpha == 1.0 {
        return x.midpoint(y);
    }
    let xa = apply_to_spectrum(&sx, |l| l.powf(alpha))?;
    let ya = apply_to_spectrum(&sy, |l| l.powf(alpha))?;
    let mid = xa.midpoint(&ya)?;
    apply_to_spectrum(&pd_spectrum(&mid)?, |l| l.powf(1.0 / alpha))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn binary_entropy(p: f64) -> f64 {
        -(p * p.ln() + (1.0 - p) * (1.0 - p).ln())
    }

    #[test]
    fn von_neumann_examples() {
        let one = HermitianMatrix::diagonal(&[1.0]).unwrap();
        assert_eq!(entropy_von_neumann(&one).unwrap(), 0.0);
        let half = HermitianMatrix::diagonal(&[0.5, 0.5]).unwrap();
        assert_relative_eq!(
            entropy_von_neumann(&half).unwrap(),
            2f64.ln(),
            epsilon = 1e-15
        );
        let skew = HermitianMatrix::diagonal(&[0.9, 0.1]).unwrap();
        let v = entropy_von_neumann(&skew).unwrap();
        assert_relative_eq!(v, binary_entropy(0.9), epsilon = 1e-15);
        assert!((v - 0.325083).abs() < 1e-6);
    }

    #[test]
    fn von_neumann_rejects_singular() {
        let x = HermitianMatrix::diagonal(&[1.0, 0.0]).unwrap();
        assert!(matches!(entropy_von_neumann(&x), Err(Error::Domain(_))));
    }

    #[test]
    fn tsallis_examples() {
        let x = HermitianMatrix::from_real_rows(&[&[0.6, 0.1], &[0.1, 0.4]]).unwrap();
        assert_eq!(
            entropy_tsallis(&x, 1.0).unwrap(),
            entropy_von_neumann(&x).unwrap()
        );
        let one = HermitianMatrix::diagonal(&[1.0]).unwrap();
        for a in [0.0, 0.3, 1.7, 2.0] {
            assert_eq!(entropy_tsallis(&one, a).unwrap(), 0.0);
        }
        let half = HermitianMatrix::diagonal(&[0.5, 0.5]).unwrap();
        let v = entropy_tsallis(&half, 0.5).unwrap();
        assert_relative_eq!(v, (2f64.sqrt() - 1.0) / 0.5, epsilon = 1e-14);
        assert!((v - 0.828427).abs() < 1e-6);
        assert!(matches!(
            entropy_tsallis(&half, 2.5),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            entropy_tsallis(&half, -0.1),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn renyi_examples() {
        for d in 1..=5 {
            let u = HermitianMatrix::diagonal(&vec![1.0 / d as f64; d]).unwrap();
            for a in [0.0, 0.25, 0.5, 3.0] {
                assert_relative_eq!(
                    entropy_renyi(&u, a).unwrap(),
                    (d as f64).ln(),
                    epsilon = 1e-14
                );
            }
        }
        let one = HermitianMatrix::diagonal(&[1.0]).unwrap();
        assert_eq!(entropy_renyi(&one, 0.5).unwrap(), 0.0);
        let skew = HermitianMatrix::diagonal(&[0.9, 0.1]).unwrap();
        let v = entropy_renyi(&skew, 0.5).unwrap();
        assert_relative_eq!(
            v,
            2.0 * (0.9f64.sqrt() + 0.1f64.sqrt()).ln(),
            epsilon = 1e-14
        );
        assert!((v - 0.470004).abs() < 1e-6);
        assert!(matches!(
            entropy_renyi(&skew, 1.0),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn logdet_examples() {
        assert_eq!(logdet(&HermitianMatrix::identity(4)).unwrap(), 0.0);
        let d = HermitianMatrix::diagonal(&[4.0, 1.0]).unwrap();
        assert_relative_eq!(logdet(&d).unwrap(), 4f64.ln(), epsilon = 1e-15);
        let x = HermitianMatrix::from_real_rows(&[&[2.0, 1.0], &[1.0, 2.0]]).unwrap();
        assert_relative_eq!(logdet(&x).unwrap(), 3f64.ln(), epsilon = 1e-14);
    }

    #[test]
    fn power_mean_examples() {
        let x = HermitianMatrix::from_real_rows(&[&[2.0, 0.5], &[0.5, 1.0]]).unwrap();
        let y = HermitianMatrix::from_real_rows(&[&[1.0, -0.2], &[-0.2, 3.0]]).unwrap();
        let same = power_mean(&x, &x, 0.7).unwrap();
        assert!((&same - &x).frobenius_norm() < 1e-10);
        let m = power_mean(
            &HermitianMatrix::diagonal(&[4.0]).unwrap(),
            &HermitianMatrix::diagonal(&[16.0]).unwrap(),
            0.5,
        )
        .unwrap();
        assert_relative_eq!(m.get(0, 0).re, 9.0, epsilon = 1e-14);
        let arith = power_mean(&x, &y, 1.0).unwrap();
        assert_eq!(arith, x.midpoint(&y).unwrap());
        assert!(matches!(power_mean(&x, &y, 0.0), Err(Error::Parameter(_))));
        assert!(matches!(power_mean(&x, &y, -1.0), Err(Error::Parameter(_))));
    }
}
