//! Cyclic Jacobi eigensolver for complex Hermitian matrices.

use num_complex::Complex64;

use super::matrix::{HermitianMatrix, SquareMatrix};
use crate::error::{Error, Result};

/// Sweep cap for the cyclic Jacobi iteration.
pub const MAX_SWEEPS: usize = 100;
/// Convergence threshold on the off-diagonal Frobenius norm, relative to `‖X‖_F`.
pub const OFF_DIAGONAL_TOL: f64 = 1e-14;

/// Eigenvalues in ascending order and the unitary whose columns are the matching eigenvectors.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: SquareMatrix,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }

    /// `Q diag(λ) Q*`.
    pub fn reconstruct(&self) -> HermitianMatrix {
        HermitianMatrix::from_spectrum(&self.eigenvectors, &self.eigenvalues)
    }

    /// `Q diag(values) Q*` for replacement eigenvalues.
    pub fn with_eigenvalues(&self, values: &[f64]) -> HermitianMatrix {
        HermitianMatrix::from_spectrum(&self.eigenvectors, values)
    }
}

fn off_diagonal_norm(a: &SquareMatrix) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            acc += 2.0 * a[(i, j)].norm_sqr();
        }
    }
    acc.sqrt()
}

/// Diagonalizes `X = Q diag(λ) Q*` with λ ascending.
pub fn spectral_decompose(x: &HermitianMatrix) -> Result<SpectralDecomposition> {
    let n = x.dim();
    let mut a = x.as_matrix().clone();
    let mut v = SquareMatrix::identity(n);
    let norm = x.frobenius_norm();
    let threshold = OFF_DIAGONAL_TOL * norm;
    let element_tol = threshold / n as f64;

    let mut converged = off_diagonal_norm(&a) <= threshold;
    let mut sweeps = 0;
    while !converged && sweeps < MAX_SWEEPS {
        sweeps += 1;
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                // Below the per-element share of the threshold, or too small to move the
                // diagonal at working precision.
                if mag <= element_tol || mag <= f64::EPSILON * (app * aqq).abs().sqrt() {
                    a[(p, q)] = Complex64::new(0.0, 0.0);
                    a[(q, p)] = Complex64::new(0.0, 0.0);
                    continue;
                }
                rotated = true;
                let phase = apq / mag;
                let theta = (aqq - app) / (2.0 * mag);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // U restricted to (p, q): [[c, s·e], [-s·ē, c]], A <- U* A U.
                let upq = phase * s;
                let uqp = -phase.conj() * s;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * c + akq * uqp;
                    a[(k, q)] = akp * upq + akq * c;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = apk * c + aqk * uqp.conj();
                    a[(q, k)] = apk * upq.conj() + aqk * c;
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)] = Complex64::new(app - t * mag, 0.0);
                a[(q, q)] = Complex64::new(aqq + t * mag, 0.0);
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * c + vkq * uqp;
                    v[(k, q)] = vkp * upq + vkq * c;
                }
            }
        }
        converged = !rotated || off_diagonal_norm(&a) <= threshold;
    }
    if !converged {
        return Err(Error::NoConvergence {
            sweeps,
            residual: off_diagonal_norm(&a),
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let eigenvectors = SquareMatrix::from_fn(n, |r, c| v[(r, order[c])]);
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    })
}
