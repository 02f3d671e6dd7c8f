//! 3×3 conditionally negative definite matrices and their link to three-point metrics.

use serde::Serialize;

use crate::divergence::quantum::{check_renyi_divergence_order, is_unit_trace, PairSpectra};
use crate::divergence::DivergenceSpec;
use crate::error::{Error, Result};
use crate::hpd::entropy::power_trace_of;
use crate::hpd::functions::pd_spectrum;
use crate::hpd::matrix::{ensure_same_dim, HermitianMatrix};
use crate::hpd::spectral::spectral_decompose;
use crate::integral::renyi::{renyi_delta_t, RenyiTraceData};

pub type Mat3 = [[f64; 3]; 3];

const SYMMETRY_TOL: f64 = 1e-12;

fn frobenius(m: &Mat3) -> f64 {
    m.iter().flatten().map(|v| v * v).sum::<f64>().sqrt()
}

#[allow(clippy::needless_range_loop)]
fn check_symmetric(m: &Mat3) -> Result<()> {
    if m.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::Input("3×3 matrix has non-finite entries".into()));
    }
    let scale = m.iter().flatten().fold(0.0f64, |a, v| a.max(v.abs()));
    for i in 0..3 {
        for j in 0..i {
            if (m[i][j] - m[j][i]).abs() > SYMMETRY_TOL * scale.max(1.0) {
                return Err(Error::Input(format!(
                    "3×3 matrix is not symmetric: entry ({i},{j}) = {} vs {}",
                    m[i][j], m[j][i]
                )));
            }
        }
    }
    Ok(())
}

/// Converts a real 3×3 [`HermitianMatrix`] (e.g. read from a file).
pub fn mat3_from_hermitian(m: &HermitianMatrix) -> Result<Mat3> {
    if m.dim() != 3 {
        return Err(Error::Input(format!(
            "expected a 3×3 matrix, got {}×{}",
            m.dim(),
            m.dim()
        )));
    }
    if !m.is_real() {
        return Err(Error::Input("expected a real matrix".into()));
    }
    let mut out = [[0.0; 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = m.get(i, j).re;
        }
    }
    Ok(out)
}

/// Eigenvalues of the quadratic form of `M` restricted to `{v : vᵀ1 = 0}`, ascending.
pub fn projected_eigenvalues(m: &Mat3) -> [f64; 2] {
    let s2 = std::f64::consts::FRAC_1_SQRT_2;
    let s6 = 1.0 / 6f64.sqrt();
    let p = [[s2, -s2, 0.0], [s6, s6, -2.0 * s6]];
    let form = |a: &[f64; 3], b: &[f64; 3]| -> f64 {
        (0..3)
            .map(|i| (0..3).map(|j| a[i] * m[i][j] * b[j]).sum::<f64>())
            .sum()
    };
    let (a, b, c) = (form(&p[0], &p[0]), form(&p[0], &p[1]), form(&p[1], &p[1]));
    let mean = 0.5 * (a + c);
    let radius = (0.25 * (a - c) * (a - c) + b * b).sqrt();
    [mean - radius, mean + radius]
}

/// `vᵀMv ≤ 0` for every `v ⊥ 1`, up to `tol·‖M‖_F`.
pub fn is_cnd_3x3(m: &Mat3, tol: f64) -> Result<bool> {
    check_symmetric(m)?;
    Ok(projected_eigenvalues(m)[1] <= tol * frobenius(m))
}

/// `-½ xᵀMx` at `x = [-s-t, s, t]`: `α s² + st(α + β - γ) + β t²`.
pub fn quadratic_form_st(m: &Mat3, s: f64, t: f64) -> f64 {
    let (alpha, beta, gamma) = off_diagonals(m);
    alpha * s * s + s * t * (alpha + beta - gamma) + beta * t * t
}

/// `(α, β, γ) = (M₁₂, M₁₃, M₂₃)`.
pub fn off_diagonals(m: &Mat3) -> (f64, f64, f64) {
    (m[0][1], m[0][2], m[1][2])
}

/// Hollow symmetric matrix with off-diagonals `(α, β, γ) = (M₁₂, M₁₃, M₂₃)`.
pub fn hollow(alpha: f64, beta: f64, gamma: f64) -> Mat3 {
    [[0.0, alpha, beta], [alpha, 0.0, gamma], [beta, gamma, 0.0]]
}

/// `M = θ1ᵀ + 1θᵀ − D` with `θ = ½ diag(D)`.
pub fn d_to_m(d: &Mat3) -> Mat3 {
    let theta = [0.5 * d[0][0], 0.5 * d[1][1], 0.5 * d[2][2]];
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = if i == j {
                0.0
            } else {
                theta[i] + theta[j] - d[i][j]
            };
        }
    }
    m
}

fn off_diagonals_nonnegative(m: &Mat3, tol: f64) -> bool {
    let (a, b, c) = off_diagonals(m);
    let floor = -tol * frobenius(m);
    a >= floor && b >= floor && c >= floor
}

/// The three inequalities `√α ≤ √β + √γ` (and permutations) on nonnegative off-diagonals.
pub fn sqrt_triangle(m: &Mat3, tol: f64) -> bool {
    if !off_diagonals_nonnegative(m, tol) {
        return false;
    }
    let (a, b, c) = off_diagonals(m);
    let (a, b, c) = (a.max(0.0).sqrt(), b.max(0.0).sqrt(), c.max(0.0).sqrt());
    let slack = tol * (a + b + c);
    a <= b + c + slack && b <= a + c + slack && c <= a + b + slack
}

/// Predicates reported for a hollow matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CndPredicates {
    pub cnd: bool,
    pub nonneg: bool,
    pub sqrt_triangle: bool,
}

pub fn cnd_predicates(m: &Mat3, tol: f64) -> Result<CndPredicates> {
    Ok(CndPredicates {
        cnd: is_cnd_3x3(m, tol)?,
        nonneg: off_diagonals_nonnegative(m, tol),
        sqrt_triangle: sqrt_triangle(m, tol),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CndTheoremCheck {
    pub psd_d: bool,
    pub cnd_m: bool,
    pub nonneg_m: bool,
    pub sqrt_triangle: bool,
    /// `psdD ⇒ (cndM ∧ nonnegM)` and `(cndM ∧ nonnegM) ⇔ sqrtTriangle`.
    pub implications_hold: bool,
}

fn min_eigenvalue(m: &Mat3) -> Result<f64> {
    let rows: Vec<&[f64]> = m.iter().map(|r| r.as_slice()).collect();
    let h = HermitianMatrix::from_real_rows(&rows)?;
    Ok(spectral_decompose(&h)?.min_eigenvalue())
}

/// Evaluates each statement of the 3×3 theorem independently for `D`.
pub fn check_cnd_theorem(d: &Mat3, tol: f64) -> Result<CndTheoremCheck> {
    check_symmetric(d)?;
    if d.iter().flatten().any(|&v| v < 0.0) {
        return Err(Error::Input("D must be elementwise nonnegative".into()));
    }
    let psd_d = min_eigenvalue(d)? >= -tol * frobenius(d);
    let m = d_to_m(d);
    let cnd_m = is_cnd_3x3(&m, tol)?;
    let nonneg_m = off_diagonals_nonnegative(&m, tol);
    let tri = sqrt_triangle(&m, tol);
    let ii = cnd_m && nonneg_m;
    Ok(CndTheoremCheck {
        psd_d,
        cnd_m,
        nonneg_m,
        sqrt_triangle: tri,
        implications_hold: (!psd_d || ii) && (ii == tri),
    })
}

/// Hollow matrix of pairwise divergence values of a triple, ordered `(xy, xz, yz)`.
pub fn divergence_matrix(
    spec: &DivergenceSpec,
    x: &HermitianMatrix,
    y: &HermitianMatrix,
    z: &HermitianMatrix,
) -> Result<Mat3> {
    Ok(hollow(
        spec.evaluate(x, y)?,
        spec.evaluate(x, z)?,
        spec.evaluate(y, z)?,
    ))
}

/// Whether the divergence values of a triple form a cnd matrix, i.e. whether their
/// square roots satisfy every triangle inequality on that triple.
pub fn divergence_is_cnd(
    spec: &DivergenceSpec,
    x: &HermitianMatrix,
    y: &HermitianMatrix,
    z: &HermitianMatrix,
    tol: f64,
) -> Result<bool> {
    is_cnd_3x3(&divergence_matrix(spec, x, y, z)?, tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CmTransformCheck {
    pub m_prime_psd: bool,
    pub eta_cnd: bool,
    pub delta_t_nonneg: bool,
    /// `δ_t²` for the pairs `(xy, xz, yz)`.
    pub delta_t: [f64; 3],
}

impl CmTransformCheck {
    pub fn all(&self) -> bool {
        self.m_prime_psd && self.eta_cnd && self.delta_t_nonneg
    }
}

/// Traces `tr(·)^α` of a triple and of its three midpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TripleTraces {
    pub d: [f64; 3],
    /// `(xy, xz, yz)`.
    pub mid: [f64; 3],
}

impl TripleTraces {
    pub fn new(
        x: &HermitianMatrix,
        y: &HermitianMatrix,
        z: &HermitianMatrix,
        alpha: f64,
    ) -> Result<Self> {
        ensure_same_dim(x, y)?;
        ensure_same_dim(x, z)?;
        let tr = |m: &HermitianMatrix| -> Result<f64> {
            Ok(power_trace_of(&pd_spectrum(m)?.eigenvalues, alpha))
        };
        let mid = |a: &HermitianMatrix, b: &HermitianMatrix| -> Result<f64> {
            Ok(power_trace_of(
                &PairSpectra::midpoint_spectrum(a, b)?,
                alpha,
            ))
        };
        Ok(Self {
            d: [tr(x)?, tr(y)?, tr(z)?],
            mid: [mid(x, y)?, mid(x, z)?, mid(y, z)?],
        })
    }

    fn pair(&self, i: usize, j: usize) -> f64 {
        match (i.min(j), i.max(j)) {
            (0, 1) => self.mid[0],
            (0, 2) => self.mid[1],
            (1, 2) => self.mid[2],
            _ => self.d[i],
        }
    }
}

/// Builds `M′ = [1/(t + d_ij)]`, checks it is PSD, then checks that
/// `η1ᵀ + 1ηᵀ − M′` with `η = ½ diag(M′)` is cnd, and that each pairwise `δ_t²` is nonnegative.
pub fn cm_transform_check(
    x: &HermitianMatrix,
    y: &HermitianMatrix,
    z: &HermitianMatrix,
    alpha: f64,
    t: f64,
    tol: f64,
) -> Result<CmTransformCheck> {
    check_renyi_divergence_order(alpha)?;
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::Parameter(format!("t must be ≥ 0, got {t}")));
    }
    for (name, m) in [("X", x), ("Y", y), ("Z", z)] {
        if !is_unit_trace(m) {
            return Err(Error::Domain(format!(
                "{name} must have unit trace, got {}",
                m.trace()
            )));
        }
    }
    let traces = TripleTraces::new(x, y, z, alpha)?;
    Ok(cm_transform_from_traces(&traces, t, tol))
}

pub fn cm_transform_from_traces(traces: &TripleTraces, t: f64, tol: f64) -> CmTransformCheck {
    let mut mp = [[0.0; 3]; 3];
    for (i, row) in mp.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = 1.0 / (t + traces.pair(i, j));
        }
    }
    let m_prime_psd = min_eigenvalue(&mp)
        .map(|l| l >= -tol * frobenius(&mp))
        .unwrap_or(false);
    let eta = [0.5 * mp[0][0], 0.5 * mp[1][1], 0.5 * mp[2][2]];
    let mut n = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            n[i][j] = eta[i] + eta[j] - mp[i][j];
        }
    }
    let eta_cnd = is_cnd_3x3(&n, tol).unwrap_or(false);
    let delta = |i: usize, j: usize, k: usize| RenyiTraceData {
        d_x: traces.d[i],
        d_y: traces.d[j],
        d_xy: traces.mid[k],
    };
    let delta_t = [
        renyi_delta_t(&delta(0, 1, 0), t),
        renyi_delta_t(&delta(0, 2, 1), t),
        renyi_delta_t(&delta(1, 2, 2), t),
    ];
    CmTransformCheck {
        m_prime_psd,
        eta_cnd,
        delta_t_nonneg: delta_t.iter().all(|&v| v >= -tol),
        delta_t,
    }
}
