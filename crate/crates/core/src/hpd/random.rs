//! Seeded generation of random unitaries, Hermitian directions and HPD matrices.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::matrix::{HermitianMatrix, SquareMatrix};
use crate::error::{Error, Result};

/// Parameters for [`random_hpd`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HpdGenConfig {
    pub dim: usize,
    pub seed: u64,
    /// Natural log of the smallest allowed eigenvalue.
    pub log_eig_min: f64,
    /// Natural log of the largest allowed eigenvalue.
    pub log_eig_max: f64,
    /// Rescale the result to unit trace.
    pub unit_trace: bool,
}

impl HpdGenConfig {
    pub fn new(dim: usize, seed: u64) -> Self {
        Self {
            dim,
            seed,
            log_eig_min: -2.0,
            log_eig_max: 2.0,
            unit_trace: false,
        }
    }

    pub fn with_log_range(mut self, lo: f64, hi: f64) -> Self {
        self.log_eig_min = lo;
        self.log_eig_max = hi;
        self
    }

    pub fn with_unit_trace(mut self, unit_trace: bool) -> Self {
        self.unit_trace = unit_trace;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::Parameter("dimension must be positive".into()));
        }
        if !(self.log_eig_min.is_finite() && self.log_eig_max.is_finite()) {
            return Err(Error::Parameter("eigenvalue bounds must be finite".into()));
        }
        if self.log_eig_min > self.log_eig_max {
            return Err(Error::Parameter(format!(
                "log_eig_min {} exceeds log_eig_max {}",
                self.log_eig_min, self.log_eig_max
            )));
        }
        Ok(())
    }
}

/// SplitMix64 finalizer.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Independent seed for stream `index` under a base seed: `seed ⊕ hash(index)`.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    seed ^ splitmix64(index)
}

pub fn rng_from_seed(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix with a positive real R diagonal.
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> SquareMatrix {
    let g = SquareMatrix::from_fn(dim, |_, _| complex_gaussian(rng));
    let mut cols: Vec<Vec<Complex64>> = (0..dim)
        .map(|j| (0..dim).map(|i| g[(i, j)]).collect())
        .collect();
    // Modified Gram-Schmidt, applied twice for orthogonality at working precision.
    // Normalizing by the positive norm is exactly the positive-R-diagonal phase convention.
    for j in 0..dim {
        for _ in 0..2 {
            for k in 0..j {
                let proj: Complex64 = cols[k]
                    .iter()
                    .zip(&cols[j])
                    .map(|(q, v)| q.conj() * v)
                    .sum();
                let qk = cols[k].clone();
                for (v, q) in cols[j].iter_mut().zip(&qk) {
                    *v -= proj * q;
                }
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for v in cols[j].iter_mut() {
            *v /= norm;
        }
    }
    SquareMatrix::from_fn(dim, |i, j| cols[j][i])
}

/// Gaussian Hermitian direction scaled to unit Frobenius norm.
pub fn random_hermitian_direction<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> HermitianMatrix {
    let g = SquareMatrix::from_fn(dim, |_, _| complex_gaussian(rng));
    let h = HermitianMatrix::hermitian_part(&g);
    let n = h.frobenius_norm();
    h.scale(1.0 / n)
}

/// `Q diag(λ) Q*` with Haar `Q` and log-uniform eigenvalues; deterministic in the config.
pub fn random_hpd(cfg: &HpdGenConfig) -> Result<HermitianMatrix> {
    cfg.validate()?;
    let mut rng = rng_from_seed(cfg.seed);
    let q = random_unitary(cfg.dim, &mut rng);
    let eigs: Vec<f64> = (0..cfg.dim)
        .map(|_| {
            let u: f64 = rng.gen();
            (cfg.log_eig_min + u * (cfg.log_eig_max - cfg.log_eig_min)).exp()
        })
        .collect();
    let x = HermitianMatrix::from_spectrum(&q, &eigs);
    if cfg.unit_trace {
        let tr = x.trace();
        Ok(x.scale(1.0 / tr))
    } else {
        Ok(x)
    }
}
