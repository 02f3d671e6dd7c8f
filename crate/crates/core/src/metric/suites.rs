//! Randomized verification suites.
//!
//! Every suite draws its random inputs from per-trial streams
//! `derive_seed(seed, trial)`, runs trials in parallel and assembles rows in trial
//! order, so reports are identical for any number of threads. Failures are
//! recorded and the suite carries on.
//!
//! Column usage by suite (`d_xy, d_yz, d_xz`):
//!
//! | suite         | d_xy                | d_yz                  | d_xz                 | slack                        |
//! |---------------|---------------------|-----------------------|----------------------|------------------------------|
//! | triangle      | √D(X,Y)             | √D(Y,Z)               | √D(X,Z)              | worst triangle slack         |
//! | axioms        | D(X,Y)              | D(Y,X)                | D(X,X)               | smallest axiom margin        |
//! | limit         | \|QJSD₁₊ε − QJSD\|  | \|QJSD₁₋ε − QJSD\|    | ε                    | bound − larger difference    |
//! | integral      | integral value      | reference value       | relative error       | tolerance − relative error   |
//! | reduction     | path via centroid   | reduced closed form   | relative difference  | tolerance − relative diff    |
//! | cnd-theorem   | α = M₁₂             | β = M₁₃               | γ = M₂₃              | 0 if consistent, else −1     |
//! | cm-transform  | δ_t²(X,Y)           | δ_t²(X,Z)             | δ_t²(Y,Z)            | smallest δ_t²                |
//! | optimality    | objective at centre | smallest perturbed    | step ε of that value | smallest increase            |

use rand::Rng;
use rayon::prelude::*;

use super::cnd::{check_cnd_theorem, divergence_is_cnd, hollow, is_cnd_3x3, sqrt_triangle, Mat3};
use super::report::{TrialRecord, VerificationReport};
use crate::divergence::{
    jensen_objective, js_tsallis_reduced, js_tsallis_relative, qjrd_alpha, qjsd, qjsd_alpha,
    tsallis_centroid_objective, DivergenceSpec,
};
use crate::error::{Error, Result};
use crate::hpd::entropy::power_mean;
use crate::hpd::functions::FunctionKind;
use crate::hpd::matrix::HermitianMatrix;
use crate::hpd::random::{
    derive_seed, random_hermitian_direction, random_hpd, rng_from_seed, HpdGenConfig,
};
use crate::integral::quadrature::QuadratureConfig;
use crate::integral::renyi::{qjrd_via_integral, RenyiTraceData};
use crate::integral::representation::{
    delta_f_convex_via_sdiv, delta_f_via_sdiv, log_rep, power_rep_high, power_rep_low,
    RepresentationI, RepresentationII,
};
use crate::metric::cnd::{cm_transform_check, CmTransformCheck};

/// Shared settings for the randomized suites.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub dims: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    /// Suite tolerance; its meaning (relative slack, relative error) depends on the suite.
    pub tol: f64,
    pub log_eig_min: f64,
    pub log_eig_max: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            dims: (2..=6).collect(),
            trials: 1000,
            seed: 42,
            tol: 1e-9,
            log_eig_min: -2.0,
            log_eig_max: 2.0,
        }
    }
}

impl SuiteConfig {
    pub fn new(dims: Vec<usize>, trials: usize, seed: u64) -> Self {
        Self {
            dims,
            trials,
            seed,
            ..Self::default()
        }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.dims.is_empty() || self.dims.contains(&0) {
            return Err(Error::Parameter(
                "dims must be a nonempty list of positive sizes".into(),
            ));
        }
        if !(self.tol >= 0.0 && self.tol.is_finite()) {
            return Err(Error::Parameter(format!(
                "tolerance must be ≥ 0, got {}",
                self.tol
            )));
        }
        HpdGenConfig::new(1, 0)
            .with_log_range(self.log_eig_min, self.log_eig_max)
            .validate()
    }

    pub fn dim_for(&self, trial: usize) -> usize {
        self.dims[trial % self.dims.len()]
    }

    /// The `k`-th random HPD matrix of a trial.
    pub fn draw(&self, trial: usize, k: u64, unit_trace: bool) -> Result<HermitianMatrix> {
        let seed = derive_seed(derive_seed(self.seed, trial as u64), k);
        random_hpd(
            &HpdGenConfig::new(self.dim_for(trial), seed)
                .with_log_range(self.log_eig_min, self.log_eig_max)
                .with_unit_trace(unit_trace),
        )
    }

    fn trial_rng(&self, trial: usize) -> rand_chacha::ChaCha20Rng {
        rng_from_seed(derive_seed(derive_seed(self.seed, trial as u64), u64::MAX))
    }
}

/// Runs `f` for every trial in parallel; rows come back in trial order.
fn run_trials<F>(cfg: &SuiteConfig, f: F) -> Vec<TrialRecord>
where
    F: Fn(usize, usize) -> Result<Vec<TrialRecord>> + Sync,
{
    let per_trial: Vec<Vec<TrialRecord>> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| {
            let dim = cfg.dim_for(i);
            f(i, dim).unwrap_or_else(|e| vec![TrialRecord::failed(i, dim, e.to_string())])
        })
        .collect();
    per_trial.into_iter().flatten().collect()
}

fn rel_err(value: f64, reference: f64) -> f64 {
    if value == reference {
        0.0
    } else {
        (value - reference).abs() / reference.abs().max(f64::MIN_POSITIVE)
    }
}

fn max_column(records: &[TrialRecord], col: impl Fn(&TrialRecord) -> f64) -> f64 {
    records
        .iter()
        .map(col)
        .filter(|v| !v.is_nan())
        .fold(0.0, f64::max)
}

// ---------------------------------------------------------------------------------------------
// Triangle inequality

/// Pairwise distances and worst triangle slack of one triple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleOutcome {
    /// `√D` for `(xy, yz, xz)`.
    pub distances: [f64; 3],
    /// Smallest of the three slacks `a + b − c` over the labelings.
    pub slack: f64,
    pub pass: bool,
}

/// Square-root distances of a triple; passes iff the worst slack is at least
/// `-tol·(1 + √D(X,Z))`.
pub fn triangle_outcome(
    spec: &DivergenceSpec,
    x: &HermitianMatrix,
    y: &HermitianMatrix,
    z: &HermitianMatrix,
    tol: f64,
) -> Result<TriangleOutcome> {
    let d = |a: &HermitianMatrix, b: &HermitianMatrix| -> Result<f64> {
        Ok(spec.evaluate(a, b)?.max(0.0).sqrt())
    };
    let (xy, yz, xz) = (d(x, y)?, d(y, z)?, d(x, z)?);
    let slack = (xy + yz - xz).min(xy + xz - yz).min(yz + xz - xy);
    Ok(TriangleOutcome {
        distances: [xy, yz, xz],
        slack,
        pass: slack >= -tol * (1.0 + xz),
    })
}

/// Checks `√D(X,Z) ≤ √D(X,Y) + √D(Y,Z)` (all labelings) on random triples. Also counts
/// triples whose hollow matrix of divergence values fails to be cnd (`cndFailures`).
pub fn triangle_suite(spec: &DivergenceSpec, cfg: &SuiteConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let spec = spec.validate()?;
    let unit = spec.requires_unit_trace();
    let per_trial: Vec<(TrialRecord, bool)> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| {
            let dim = cfg.dim_for(i);
            let run = || -> Result<(TrialRecord, bool)> {
                let (x, y, z) = (
                    cfg.draw(i, 0, unit)?,
                    cfg.draw(i, 1, unit)?,
                    cfg.draw(i, 2, unit)?,
                );
                let t = triangle_outcome(&spec, &x, &y, &z, cfg.tol)?;
                let cnd = divergence_is_cnd(&spec, &x, &y, &z, 1e-10)?;
                Ok((TrialRecord::new(i, dim, t.distances, t.slack, t.pass), cnd))
            };
            run().unwrap_or_else(|e| (TrialRecord::failed(i, dim, e.to_string()), true))
        })
        .collect();
    let cnd_failures = per_trial.iter().filter(|(_, cnd)| !cnd).count();
    let rows = per_trial.into_iter().map(|(r, _)| r).collect();
    Ok(VerificationReport::new(
        "triangle",
        spec.label(),
        cfg.dims.clone(),
        cfg.seed,
        cfg.tol,
        rows,
    )
    .with_unit_trace(unit)
    .with_extra("cndFailures", cnd_failures as f64))
}

// ---------------------------------------------------------------------------------------------
// Remaining axioms

const NONNEG_TOL: f64 = 1e-10;
const SELF_TOL: f64 = 1e-12;
const SYMMETRY_TOL: f64 = 1e-12;
const SEPARATION_GAP: f64 = 1e-8;

/// Nonnegativity, `D(X,X) = 0`, symmetry and separation on random pairs.
///
/// Asymmetric divergences (the Bregman kinds) are not failed for asymmetry; the
/// number of visibly asymmetric pairs is reported as `asymmetricPairs`.
pub fn axioms_suite(spec: &DivergenceSpec, cfg: &SuiteConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let spec = spec.validate()?;
    let unit = spec.requires_unit_trace();
    let separates = !matches!(spec, DivergenceSpec::QjsdAlpha(a) if a == 0.0);
    let rows = run_trials(cfg, |i, dim| {
        let (x, y) = (cfg.draw(i, 0, unit)?, cfg.draw(i, 1, unit)?);
        let dxy = spec.evaluate(&x, &y)?;
        let dyx = spec.evaluate(&y, &x)?;
        let dxx = spec.evaluate(&x, &x)?;
        let mut margins = vec![
            dxy + NONNEG_TOL * (1.0 + dxy.abs()),
            dyx + NONNEG_TOL * (1.0 + dyx.abs()),
            SELF_TOL * x.trace().max(1.0) - dxx.abs(),
        ];
        if spec.is_symmetric() {
            margins.push(SYMMETRY_TOL * dxy.abs().max(dyx.abs()) - (dxy - dyx).abs());
        }
        if separates && (&x - &y).frobenius_norm() > 1e-3 * x.frobenius_norm() {
            margins.push(dxy - SEPARATION_GAP);
        }
        let slack = margins.iter().copied().fold(f64::INFINITY, f64::min);
        Ok(vec![TrialRecord::new(
            i,
            dim,
            [dxy, dyx, dxx],
            slack,
            slack >= 0.0,
        )])
    });
    let asymmetric = rows
        .iter()
        .filter(|r| (r.d_xy - r.d_yz).abs() > SYMMETRY_TOL * r.d_xy.abs().max(r.d_yz.abs()))
        .count();
    Ok(VerificationReport::new(
        "axioms",
        spec.label(),
        cfg.dims.clone(),
        cfg.seed,
        cfg.tol,
        rows,
    )
    .with_unit_trace(unit)
    .with_extra("asymmetricPairs", asymmetric as f64))
}

// ---------------------------------------------------------------------------------------------
// α → 1 limit

/// `(ε, |QJSD_{1+ε} − QJSD|, |QJSD_{1−ε} − QJSD|)` for each ε.
pub fn limit_check(
    x: &HermitianMatrix,
    y: &HermitianMatrix,
    eps: &[f64],
) -> Result<Vec<(f64, f64, f64)>> {
    let base = qjsd(x, y)?;
    eps.iter()
        .map(|&e| {
            Ok((
                e,
                (qjsd_alpha(x, y, 1.0 + e)? - base).abs(),
                (qjsd_alpha(x, y, 1.0 - e)? - base).abs(),
            ))
        })
        .collect()
}

pub const DEFAULT_LIMIT_EPS: [f64; 4] = [1e-3, 1e-4, 1e-5, 1e-6];

/// `QJSD_{1±ε} → QJSD`: passes iff both differences are at most `10·ε·(1 + QJSD)`.
/// Pairs are density matrices, where the von Neumann entropy is the natural limit.
pub fn limit_suite(eps: &[f64], cfg: &SuiteConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    if eps.iter().any(|&e| !(e > 0.0 && e <= 1e-3)) {
        return Err(Error::Parameter(
            "limit steps ε must lie in (0, 1e-3]".into(),
        ));
    }
    let rows = run_trials(cfg, |i, dim| {
        let (x, y) = (cfg.draw(i, 0, true)?, cfg.draw(i, 1, true)?);
        let base = qjsd(&x, &y)?;
        Ok(limit_check(&x, &y, eps)?
            .into_iter()
            .enumerate()
            .map(|(k, (e, plus, minus))| {
                let slack = 10.0 * e * (1.0 + base) - plus.max(minus);
                TrialRecord::new(
                    i * eps.len() + k,
                    dim,
                    [plus, minus, e],
                    slack,
                    slack >= 0.0,
                )
            })
            .collect())
    });
    Ok(VerificationReport::new(
        "limit",
        "qjsd-alpha(1±ε)",
        cfg.dims.clone(),
        cfg.seed,
        cfg.tol,
        rows,
    )
    .with_unit_trace(true))
}

// ---------------------------------------------------------------------------------------------
// Integral representations

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegralRep {
    /// `x^α`, `α ∈ (0,1)`, via the log-kernel integral.
    PowerLow,
    /// `x^α`, `α ∈ (1,2)`, via the `tx − log(1+tx)` kernel.
    PowerHigh,
    Log,
    /// Jensen gap of `x^α` as an integral of shifted S-divergences.
    Decomposition,
    /// Jensen-Rényi divergence as `∫ δ_t² dt`.
    Renyi,
}

impl IntegralRep {
    pub fn name(self) -> &'static str {
        match self {
            Self::PowerLow => "power-low",
            Self::PowerHigh => "power-high",
            Self::Log => "log",
            Self::Decomposition => "decomposition",
            Self::Renyi => "renyi",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Ok(match name {
            "power-low" => Self::PowerLow,
            "power-high" => Self::PowerHigh,
            "log" => Self::Log,
            "decomposition" => Self::Decomposition,
            "renyi" => Self::Renyi,
            other => {
                return Err(Error::Parameter(format!(
                    "unknown representation '{other}'"
                )))
            }
        })
    }

    pub fn default_alphas(self) -> Vec<f64> {
        match self {
            Self::PowerLow => (1..=9).map(|k| k as f64 / 10.0).collect(),
            Self::PowerHigh => (11..=19).map(|k| k as f64 / 10.0).collect(),
            Self::Log => vec![],
            Self::Decomposition => vec![0.1, 0.3, 0.5, 0.7, 0.9, 1.25, 1.5, 1.75],
            Self::Renyi => vec![0.25, 0.5, 0.75],
        }
    }
}

/// 20-point logarithmic grid on `[1e-2, 1e2]`.
pub fn log_grid() -> Vec<f64> {
    (0..20)
        .map(|k| 10f64.powf(-2.0 + 4.0 * k as f64 / 19.0))
        .collect()
}

fn integral_row(
    trial: usize,
    dim: usize,
    value: f64,
    reference: f64,
    err: f64,
    tol: f64,
) -> TrialRecord {
    TrialRecord::new(trial, dim, [value, reference, err], tol - err, err <= tol)
}

/// Compares each integral representation against direct evaluation; `tol` is the
/// allowed relative error (1e-6 is the intended setting).
///
/// Scalar representations run over [`log_grid`] × `alphas` and ignore `trials`;
/// the matrix representations draw `trials` random pairs per α.
pub fn integral_suite(
    rep: IntegralRep,
    alphas: &[f64],
    cfg: &SuiteConfig,
    quad: &QuadratureConfig,
) -> Result<VerificationReport> {
    cfg.validate()?;
    quad.validate()?;
    let tol = cfg.tol;
    let alphas: Vec<f64> = if alphas.is_empty() {
        rep.default_alphas()
    } else {
        alphas.to_vec()
    };
    let grid = log_grid();
    let mut unit = false;
    let rows: Vec<TrialRecord> = match rep {
        IntegralRep::PowerLow | IntegralRep::PowerHigh | IntegralRep::Log => {
            let cases: Vec<(f64, f64)> = if rep == IntegralRep::Log {
                grid.iter().map(|&x| (x, f64::NAN)).collect()
            } else {
                alphas
                    .iter()
                    .flat_map(|&a| grid.iter().map(move |&x| (x, a)))
                    .collect()
            };
            cases
                .par_iter()
                .enumerate()
                .map(|(i, &(x, a))| {
                    let outcome = match rep {
                        IntegralRep::PowerLow => power_rep_low(x, a, quad).map(|v| (v, x.powf(a))),
                        IntegralRep::PowerHigh => {
                            power_rep_high(x, a, quad).map(|v| (v, x.powf(a)))
                        }
                        _ => log_rep(x, quad).map(|v| (v, x.ln())),
                    };
                    match outcome {
                        Ok((v, r)) => {
                            let err = if rep == IntegralRep::Log {
                                (v - r).abs() / r.abs().max(1.0)
                            } else {
                                rel_err(v, r)
                            };
                            integral_row(i, 1, v, r, err, tol)
                        }
                        Err(e) => TrialRecord::failed(i, 1, e.to_string()),
                    }
                })
                .collect()
        }
        IntegralRep::Decomposition => {
            for &a in &alphas {
                if !(a > 0.0 && a < 2.0 && a != 1.0) {
                    return Err(Error::Parameter(format!(
                        "decomposition needs α in (0,1) or (1,2), got {a}"
                    )));
                }
            }
            run_trials(cfg, |i, dim| {
                let (x, y) = (cfg.draw(i, 0, false)?, cfg.draw(i, 1, false)?);
                alphas
                    .iter()
                    .enumerate()
                    .map(|(k, &a)| {
                        let (v, r) = if a < 1.0 {
                            let rep = RepresentationI::power(a)?;
                            (
                                delta_f_via_sdiv(&x, &y, &rep, quad)?,
                                (1.0 - a) * qjsd_alpha(&x, &y, a)?,
                            )
                        } else {
                            let rep = RepresentationII::power(a)?;
                            (
                                delta_f_convex_via_sdiv(&x, &y, &rep, quad)?,
                                (a - 1.0) * qjsd_alpha(&x, &y, a)?,
                            )
                        };
                        Ok(integral_row(
                            i * alphas.len() + k,
                            dim,
                            v,
                            r,
                            rel_err(v, r),
                            tol,
                        ))
                    })
                    .collect()
            })
        }
        IntegralRep::Renyi => {
            unit = true;
            run_trials(cfg, |i, dim| {
                let (x, y) = (cfg.draw(i, 0, true)?, cfg.draw(i, 1, true)?);
                alphas
                    .iter()
                    .enumerate()
                    .map(|(k, &a)| {
                        let integral = qjrd_via_integral(&x, &y, a, quad)?;
                        let direct = (1.0 - a) * qjrd_alpha(&x, &y, a)?;
                        let closed = RenyiTraceData::from_matrices(&x, &y, a)?.log_gap();
                        let err = rel_err(integral.raw, direct).max(rel_err(integral.raw, closed));
                        Ok(integral_row(
                            i * alphas.len() + k,
                            dim,
                            integral.raw,
                            direct,
                            err,
                            tol,
                        ))
                    })
                    .collect()
            })
        }
    };
    let max_err = max_column(&rows, |r| r.d_xz);
    let dims = match rep {
        IntegralRep::Decomposition | IntegralRep::Renyi => cfg.dims.clone(),
        _ => vec![1],
    };
    Ok(
        VerificationReport::new("integral", rep.name(), dims, cfg.seed, tol, rows)
            .with_unit_trace(unit)
            .with_extra("maxRelError", max_err),
    )
}

// ---------------------------------------------------------------------------------------------
// Two evaluation paths of the Jensen-Shannon Tsallis divergence

/// Centroid path versus the reduced closed form; passes iff the relative difference is at most `tol`.
pub fn reduction_suite(alphas: &[f64], cfg: &SuiteConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let alphas: Vec<f64> = if alphas.is_empty() {
        vec![0.5, 0.75, 1.5, 2.0]
    } else {
        alphas.to_vec()
    };
    for &a in &alphas {
        DivergenceSpec::DeltaAlpha(a).validate()?;
    }
    let rows = run_trials(cfg, |i, dim| {
        let (x, y) = (cfg.draw(i, 0, false)?, cfg.draw(i, 1, false)?);
        alphas
            .iter()
            .enumerate()
            .map(|(k, &a)| {
                let direct = js_tsallis_relative(&x, &y, a)?;
                let reduced = js_tsallis_reduced(&x, &y, a)?;
                let err = rel_err(direct, reduced);
                Ok(TrialRecord::new(
                    i * alphas.len() + k,
                    dim,
                    [direct, reduced, err],
                    cfg.tol - err,
                    err <= cfg.tol,
                ))
            })
            .collect()
    });
    let max_err = max_column(&rows, |r| r.d_xz);
    Ok(VerificationReport::new(
        "reduction",
        "delta-alpha",
        cfg.dims.clone(),
        cfg.seed,
        cfg.tol,
        rows,
    )
    .with_extra("maxRelDiff", max_err))
}

// ---------------------------------------------------------------------------------------------
// 3×3 cnd theorem

fn consistency_row(trial: usize, m: &Mat3, ok: bool) -> TrialRecord {
    TrialRecord::new(
        trial,
        3,
        [m[0][1], m[0][2], m[1][2]],
        if ok { 0.0 } else { -1.0 },
        ok,
    )
}

/// Exhaustive grid `(α, β, γ) ∈ {0, 0.1, …, 4}³`: `is_cnd_3x3 ⇔ sqrt_triangle`.
pub fn cnd_grid_rows(tol: f64) -> Vec<TrialRecord> {
    let n = 41;
    (0..n * n * n)
        .into_par_iter()
        .map(|idx| {
            let v = |k: usize| k as f64 / 10.0;
            let m = hollow(v(idx / (n * n)), v((idx / n) % n), v(idx % n));
            let ok = is_cnd_3x3(&m, tol)
                .map(|c| c == sqrt_triangle(&m, tol))
                .unwrap_or(false);
            consistency_row(idx, &m, ok)
        })
        .collect()
}

/// Random elementwise-nonnegative PSD `D = GᵀG`, `G` a `k×3` matrix with `k ∈ {1,…,4}`;
/// `k < 3` gives the rank-deficient edge class.
pub fn random_psd_d<R: Rng + ?Sized>(rng: &mut R) -> (Mat3, usize) {
    let k = rng.gen_range(1..=4);
    let g: Vec<[f64; 3]> = (0..k).map(|_| [rng.gen(), rng.gen(), rng.gen()]).collect();
    let mut d = [[0.0; 3]; 3];
    for (i, row) in d.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = g.iter().map(|r| r[i] * r[j]).sum();
        }
    }
    (d, k)
}

/// Random planar triple: the hollow matrix of squared distances, and the Gram matrix of the
/// points translated into the positive quadrant (whose `d_to_m` is half the squared distances).
pub fn random_euclidean<R: Rng + ?Sized>(rng: &mut R) -> (Mat3, Mat3) {
    let pts: Vec<[f64; 2]> = (0..3)
        .map(|_| [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)])
        .collect();
    let d2 = |i: usize, j: usize| (pts[i][0] - pts[j][0]).powi(2) + (pts[i][1] - pts[j][1]).powi(2);
    let hollow_sq = hollow(d2(0, 1), d2(0, 2), d2(1, 2));
    let shifted: Vec<[f64; 2]> = pts.iter().map(|p| [p[0] + 2.0, p[1] + 2.0]).collect();
    let mut gram = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            gram[i][j] = shifted[i][0] * shifted[j][0] + shifted[i][1] * shifted[j][1];
        }
    }
    (hollow_sq, gram)
}

/// Grid equivalence, `trials` random PSD instances and `trials` Euclidean configurations.
pub fn cnd_theorem_suite(cfg: &SuiteConfig) -> Result<VerificationReport> {
    let tol = cfg.tol;
    let mut rows = cnd_grid_rows(tol);
    let grid_len = rows.len();
    let grid_bad = rows.iter().filter(|r| !r.pass).count();

    let psd: Vec<(TrialRecord, bool)> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = cfg.trial_rng(i);
            let (d, rank) = random_psd_d(&mut rng);
            let m = super::cnd::d_to_m(&d);
            let ok = check_cnd_theorem(&d, tol)
                .map(|c| c.psd_d && c.cnd_m && c.nonneg_m && c.implications_hold)
                .unwrap_or(false);
            (consistency_row(grid_len + i, &m, ok), rank < 3)
        })
        .collect();
    let psd_bad = psd.iter().filter(|(r, _)| !r.pass).count();
    let rank_deficient = psd.iter().filter(|(_, low)| *low).count();
    rows.extend(psd.into_iter().map(|(r, _)| r));

    let euclid: Vec<TrialRecord> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = cfg.trial_rng(cfg.trials + i);
            let (sq, gram) = random_euclidean(&mut rng);
            let direct = is_cnd_3x3(&sq, tol).unwrap_or(false) && sqrt_triangle(&sq, tol);
            let via_gram = check_cnd_theorem(&gram, tol)
                .map(|c| c.cnd_m && c.sqrt_triangle && c.implications_hold)
                .unwrap_or(false);
            consistency_row(grid_len + cfg.trials + i, &sq, direct && via_gram)
        })
        .collect();
    let euclid_bad = euclid.iter().filter(|r| !r.pass).count();
    rows.extend(euclid);

    Ok(VerificationReport::new(
        "cnd-theorem",
        "3x3 cnd theorem",
        vec![3],
        cfg.seed,
        tol,
        rows,
    )
    .with_extra("gridInstances", grid_len as f64)
    .with_extra("gridDiscrepancies", grid_bad as f64)
    .with_extra("psdInstances", cfg.trials as f64)
    .with_extra("psdFailures", psd_bad as f64)
    .with_extra("rankDeficientInstances", rank_deficient as f64)
    .with_extra("euclideanInstances", cfg.trials as f64)
    .with_extra("euclideanFailures", euclid_bad as f64))
}

// ---------------------------------------------------------------------------------------------
// Completely monotone transform

pub const DEFAULT_CM_TS: [f64; 5] = [0.0, 0.1, 1.0, 10.0, 100.0];

/// `cm_transform_check` on random unit-trace triples for every `α × t`.
pub fn cm_transform_suite(
    alphas: &[f64],
    ts: &[f64],
    cfg: &SuiteConfig,
) -> Result<VerificationReport> {
    cfg.validate()?;
    let alphas: Vec<f64> = if alphas.is_empty() {
        vec![0.25, 0.5, 0.75]
    } else {
        alphas.to_vec()
    };
    let ts: Vec<f64> = if ts.is_empty() {
        DEFAULT_CM_TS.to_vec()
    } else {
        ts.to_vec()
    };
    let per = alphas.len() * ts.len();
    let rows = run_trials(cfg, |i, dim| {
        let (x, y, z) = (
            cfg.draw(i, 0, true)?,
            cfg.draw(i, 1, true)?,
            cfg.draw(i, 2, true)?,
        );
        let mut out = Vec::with_capacity(per);
        for (ka, &a) in alphas.iter().enumerate() {
            for (kt, &t) in ts.iter().enumerate() {
                let c: CmTransformCheck = cm_transform_check(&x, &y, &z, a, t, cfg.tol)?;
                let slack = c.delta_t.iter().copied().fold(f64::INFINITY, f64::min);
                out.push(TrialRecord::new(
                    i * per + ka * ts.len() + kt,
                    dim,
                    c.delta_t,
                    slack,
                    c.all(),
                ));
            }
        }
        Ok(out)
    });
    Ok(VerificationReport::new(
        "cm-transform",
        "renyi δ_t",
        cfg.dims.clone(),
        cfg.seed,
        cfg.tol,
        rows,
    )
    .with_unit_trace(true))
}

// ---------------------------------------------------------------------------------------------
// Centroid optimality

/// Centre whose optimality is checked: the midpoint for averaged Bregman divergences,
/// the power mean for averaged Tsallis relative entropies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Centroid {
    Midpoint(FunctionKind),
    PowerMean(f64),
}

impl Centroid {
    pub fn label(&self) -> String {
        match self {
            Self::Midpoint(f) => format!("midpoint({f})"),
            Self::PowerMean(a) => format!("power-mean({a})"),
        }
    }

    fn centre(&self, x: &HermitianMatrix, y: &HermitianMatrix) -> Result<HermitianMatrix> {
        match *self {
            Self::Midpoint(_) => x.midpoint(y),
            Self::PowerMean(a) => power_mean(x, y, a),
        }
    }

    fn objective(
        &self,
        x: &HermitianMatrix,
        y: &HermitianMatrix,
        z: &HermitianMatrix,
    ) -> Result<f64> {
        match *self {
            Self::Midpoint(f) => jensen_objective(f, x, y, z),
            Self::PowerMean(a) => tsallis_centroid_objective(x, y, z, a),
        }
    }
}

pub const OPTIMALITY_STEPS: [f64; 2] = [1e-2, 1e-3];
pub const OPTIMALITY_SLACK: f64 = 1e-10;

/// Perturbs the centre along `perturbations` random unit Hermitian directions at each step
/// size and records the smallest objective increase; passes iff it is ≥ −1e-10.
pub fn optimality_suite(
    centroid: Centroid,
    perturbations: usize,
    cfg: &SuiteConfig,
) -> Result<VerificationReport> {
    cfg.validate()?;
    let rows = run_trials(cfg, |i, dim| {
        let (x, y) = (cfg.draw(i, 0, false)?, cfg.draw(i, 1, false)?);
        let z = centroid.centre(&x, &y)?;
        let base = centroid.objective(&x, &y, &z)?;
        let mut rng = cfg.trial_rng(i);
        let mut worst = (f64::INFINITY, f64::NAN, f64::NAN);
        for _ in 0..perturbations {
            let h = random_hermitian_direction(dim, &mut rng);
            for &eps in &OPTIMALITY_STEPS {
                let value = centroid.objective(&x, &y, &(&z + &h.scale(eps)))?;
                if value - base < worst.0 {
                    worst = (value - base, value, eps);
                }
            }
        }
        let slack = worst.0;
        Ok(vec![TrialRecord::new(
            i,
            dim,
            [base, worst.1, worst.2],
            slack,
            slack >= -OPTIMALITY_SLACK,
        )])
    });
    Ok(VerificationReport::new(
        "optimality",
        centroid.label(),
        cfg.dims.clone(),
        cfg.seed,
        OPTIMALITY_SLACK,
        rows,
    ))
}
