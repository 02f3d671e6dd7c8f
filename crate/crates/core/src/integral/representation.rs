//! Integral representations of scalar functions and the matching Jensen divergences
//! written as superpositions of S-divergences of shifted matrices.
//!
//! Two families are supported, both with a measure made of atoms plus a density:
//!
//! - [`RepresentationI`] (concave): `f(x) = a + bx + c log x + ∫ log((t+x)/(1+t)) dμ(t)`, and
//!   `Δ_f(X,Y) = c δ_S²(X,Y) + ∫ δ_S²(tI+X, tI+Y) dμ(t)`.
//! - [`RepresentationII`] (convex): `f(x) = a + bx - c log x + ∫ (tx - log(1+tx)) dμ(t)`, and
//!   `Δ_f(X,Y) = c δ_S²(X,Y) + ∫ δ_S²(I+tX, I+tY) dμ(t)`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use super::quadrature::{
    quad_improper, quad_improper_with_tail, QuadratureConfig, QuadratureResult,
};
use crate::divergence::quantum::PairSpectra;
use crate::error::{Error, Result};
use crate::hpd::matrix::HermitianMatrix;

/// `y - log(1 + y)` without cancellation for small `y`.
pub(crate) fn log1p_gap(y: f64) -> f64 {
    if y.abs() < 0.1 {
        // Σ_{k≥2} (-1)^k y^k / k
        let mut term = y * y;
        let mut sum = 0.0;
        for k in 2..24 {
            let contrib = term / k as f64;
            sum += if k % 2 == 0 { contrib } else { -contrib };
            term *= y;
        }
        sum
    } else {
        y - y.ln_1p()
    }
}

/// `t ↦ δ_S²(tI + X, tI + Y)` evaluated from eigenvalues computed once.
///
/// Shifting commutes with the spectral map, so the kernel only needs the
/// spectra of `X`, `Y` and `(X+Y)/2`. For `t > 1` it is written in `s = 1/t` as
/// `½Σg(sλ) + ½Σg(sν) − Σg(sμ)` with `g(y) = y − log(1+y)`; the linear terms
/// cancel exactly because `tr (X+Y)/2 = ½(tr X + tr Y)`.
#[derive(Debug, Clone)]
pub struct ShiftedSdivKernel {
    x: Vec<f64>,
    y: Vec<f64>,
    mid: Vec<f64>,
}

impl ShiftedSdivKernel {
    pub fn new(x: &HermitianMatrix, y: &HermitianMatrix) -> Result<Self> {
        let s = PairSpectra::new(x, y)?;
        Ok(Self {
            x: s.x,
            y: s.y,
            mid: s.mid,
        })
    }

    /// `δ_S²(tI + X, tI + Y)` for `t ≥ 0`.
    pub fn eval(&self, t: f64) -> f64 {
        if t <= 1.0 {
            let l = |v: &[f64]| v.iter().map(|e| (t + e).ln()).sum::<f64>();
            l(&self.mid) - 0.5 * l(&self.x) - 0.5 * l(&self.y)
        } else {
            self.eval_inverse(1.0 / t)
        }
    }

    /// `δ_S²(I + sX, I + sY)`, which equals `δ_S²(tI + X, tI + Y)` at `t = 1/s`.
    pub fn eval_inverse(&self, s: f64) -> f64 {
        if s > 1.0 {
            return self.eval(1.0 / s);
        }
        let g = |v: &[f64]| v.iter().map(|e| log1p_gap(s * e)).sum::<f64>();
        0.5 * g(&self.x) + 0.5 * g(&self.y) - g(&self.mid)
    }
}

/// Nonnegative density `w(t)` on `(0, ∞)` with its power-law behaviour at both ends:
/// `w(t) ~ t^{origin_exponent}` as `t → 0⁺` and `w(t) ~ t^{tail_exponent}` as `t → ∞`.
#[derive(Clone)]
pub struct Density {
    weight: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub origin_exponent: f64,
    pub tail_exponent: f64,
    pub label: String,
}

impl Density {
    pub fn new(
        weight: impl Fn(f64) -> f64 + Send + Sync + 'static,
        origin_exponent: f64,
        tail_exponent: f64,
        label: impl Into<String>,
    ) -> Self {
        Self {
            weight: Arc::new(weight),
            origin_exponent,
            tail_exponent,
            label: label.into(),
        }
    }

    /// `coeff · t^exponent`.
    pub fn power(coeff: f64, exponent: f64) -> Self {
        Self::new(
            move |t| coeff * t.powf(exponent),
            exponent,
            exponent,
            format!("{coeff}·t^{exponent}"),
        )
    }

    pub fn weight(&self, t: f64) -> f64 {
        (self.weight)(t)
    }

    fn check_nonnegative(&self) -> Result<()> {
        for k in -60..=60 {
            let t = 10f64.powf(k as f64 / 10.0);
            let w = self.weight(t);
            if w.is_nan() || w < 0.0 {
                return Err(Error::Parameter(format!(
                    "density {} is negative or undefined at t = {t:e} ({w})",
                    self.label
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Density")
            .field("label", &self.label)
            .field("origin_exponent", &self.origin_exponent)
            .field("tail_exponent", &self.tail_exponent)
            .finish()
    }
}

/// Coefficients and measure shared by both representation families.
#[derive(Debug, Clone)]
pub struct Measure {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// Point masses `(t_j, w_j)`.
    pub atoms: Vec<(f64, f64)>,
    pub density: Option<Density>,
}

impl Measure {
    fn validate(&self) -> Result<()> {
        if !(self.a.is_finite() && self.b.is_finite()) {
            return Err(Error::Parameter("coefficients a, b must be finite".into()));
        }
        if !(self.c >= 0.0 && self.c.is_finite()) {
            return Err(Error::Parameter(format!(
                "coefficient c must be ≥ 0, got {}",
                self.c
            )));
        }
        for &(t, w) in &self.atoms {
            if !(t > 0.0 && t.is_finite() && w >= 0.0 && w.is_finite()) {
                return Err(Error::Parameter(format!(
                    "atoms need t > 0 and weight ≥ 0, got ({t}, {w})"
                )));
            }
        }
        if let Some(d) = &self.density {
            d.check_nonnegative()?;
        }
        Ok(())
    }
}

/// Concave family: `f(x) = a + bx + c log x + ∫ log((t+x)/(1+t)) dμ(t)`.
#[derive(Debug, Clone)]
pub struct RepresentationI(pub Measure);

/// Convex family: `f(x) = a + bx - c log x + ∫ (tx - log(1+tx)) dμ(t)`.
#[derive(Debug, Clone)]
pub struct RepresentationII(pub Measure);

fn check_alpha(alpha: f64, lo: f64, hi: f64) -> Result<()> {
    if alpha > lo && alpha < hi {
        Ok(())
    } else {
        Err(Error::Parameter(format!(
            "α must lie in ({lo}, {hi}), got {alpha}"
        )))
    }
}

fn check_positive(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "representation evaluated at non-positive x = {x}"
        )))
    }
}

impl RepresentationI {
    pub fn new(measure: Measure) -> Result<Self> {
        measure.validate()?;
        Ok(Self(measure))
    }

    /// `x^α`, `α ∈ (0,1)`: `a = 1`, density `(α sin απ / π) t^{α-1}`.
    pub fn power(alpha: f64) -> Result<Self> {
        check_alpha(alpha, 0.0, 1.0)?;
        let coeff = alpha * (alpha * PI).sin() / PI;
        Self::new(Measure {
            a: 1.0,
            b: 0.0,
            c: 0.0,
            atoms: vec![],
            density: Some(Density::power(coeff, alpha - 1.0)),
        })
    }

    /// `log x`: `c = 1`, no measure.
    pub fn log() -> Self {
        Self(Measure {
            a: 0.0,
            b: 0.0,
            c: 1.0,
            atoms: vec![],
            density: None,
        })
    }

    pub fn measure(&self) -> &Measure {
        &self.0
    }

    /// `f(x)` from the representation, integrating the density numerically.
    pub fn scalar_value(&self, x: f64, cfg: &QuadratureConfig) -> Result<f64> {
        check_positive(x)?;
        let m = &self.0;
        // log((t+x)/(1+t)) = log1p((x-1)/(1+t))
        let kernel = |t: f64| ((x - 1.0) / (1.0 + t)).ln_1p();
        let mut v = m.a + m.b * x + m.c * x.ln();
        v += m.atoms.iter().map(|&(t, w)| w * kernel(t)).sum::<f64>();
        if let Some(d) = &m.density {
            let r = quad_improper_with_tail(
                |t| d.weight(t) * kernel(t),
                cfg,
                d.origin_exponent,
                1.0 - d.tail_exponent,
            )?;
            v += r.value;
        }
        Ok(v)
    }
}

impl RepresentationII {
    pub fn new(measure: Measure) -> Result<Self> {
        measure.validate()?;
        Ok(Self(measure))
    }

    /// `x^α`, `α ∈ (1,2)`: density `(|α sin απ| / π) t^{-α-1}`.
    pub fn power(alpha: f64) -> Result<Self> {
        check_alpha(alpha, 1.0, 2.0)?;
        let coeff = (alpha * (alpha * PI).sin()).abs() / PI;
        Self::new(Measure {
            a: 0.0,
            b: 0.0,
            c: 0.0,
            atoms: vec![],
            density: Some(Density::power(coeff, -alpha - 1.0)),
        })
    }

    /// `-log x`: `c = 1`, no measure.
    pub fn neg_log() -> Self {
        Self(Measure {
            a: 0.0,
            b: 0.0,
            c: 1.0,
            atoms: vec![],
            density: None,
        })
    }

    pub fn measure(&self) -> &Measure {
        &self.0
    }

    pub fn scalar_value(&self, x: f64, cfg: &QuadratureConfig) -> Result<f64> {
        check_positive(x)?;
        let m = &self.0;
        let mut v = m.a + m.b * x - m.c * x.ln();
        v += m
            .atoms
            .iter()
            .map(|&(t, w)| w * log1p_gap(t * x))
            .sum::<f64>();
        if let Some(d) = &m.density {
            // tx - log(1+tx) ~ (tx)²/2 at 0 and ~ tx at ∞.
            let r = quad_improper_with_tail(
                |t| d.weight(t) * log1p_gap(t * x),
                cfg,
                d.origin_exponent + 2.0,
                -1.0 - d.tail_exponent,
            )?;
            v += r.value;
        }
        Ok(v)
    }
}

/// `x^α` for `α ∈ (0,1)` as `(α sin απ/π) ∫₀^∞ log((t+x)/t) t^{α-1} dt`.
pub fn power_rep_low(x: f64, alpha: f64, cfg: &QuadratureConfig) -> Result<f64> {
    check_positive(x)?;
    check_alpha(alpha, 0.0, 1.0)?;
    let coeff = alpha * (alpha * PI).sin() / PI;
    let r = quad_improper_with_tail(
        |t| (x / t).ln_1p() * t.powf(alpha - 1.0),
        cfg,
        alpha - 1.0,
        2.0 - alpha,
    )?;
    Ok(coeff * r.value)
}

/// `x^α` for `α ∈ (1,2)` as `(|α sin απ|/π) ∫₀^∞ (tx - log(1+tx)) t^{-α-1} dt`.
pub fn power_rep_high(x: f64, alpha: f64, cfg: &QuadratureConfig) -> Result<f64> {
    check_positive(x)?;
    check_alpha(alpha, 1.0, 2.0)?;
    let coeff = (alpha * (alpha * PI).sin()).abs() / PI;
    let r = quad_improper_with_tail(
        |t| log1p_gap(t * x) * t.powf(-alpha - 1.0),
        cfg,
        1.0 - alpha,
        alpha,
    )?;
    Ok(coeff * r.value)
}

/// `log x = -∫₀^∞ (1/(t+x) - t/(1+t²)) dt`.
pub fn log_rep(x: f64, cfg: &QuadratureConfig) -> Result<f64> {
    check_positive(x)?;
    // The two fractions combined, so the integrand does not cancel for large t.
    let r = quad_improper(|t| (1.0 - t * x) / ((t + x) * (1.0 + t * t)), cfg, 0.0)?;
    Ok(-r.value)
}

/// `Δ_f(X,Y)` for a concave `f` given by [`RepresentationI`], with the quadrature error
/// of the density part (zero when there is no density).
pub fn delta_f_via_sdiv_detailed(
    x: &HermitianMatrix,
    y: &HermitianMatrix,
    rep: &RepresentationI,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult> {
    let kernel = ShiftedSdivKernel::new(x, y)?;
    let m = &rep.0;
    let discrete = m.c * kernel.eval(0.0)
        + m.atoms
            .iter()
            .map(|&(t, w)| w * kernel.eval(t))
            .sum::<f64>();
    let density = match &m.density {
        // δ_S²(tI+X, tI+Y) = O(t⁻²) as t → ∞.
        Some(d) => quad_improper_with_tail(
            |t| d.weight(t) * kernel.eval(t),
            cfg,
            d.origin_exponent,
            2.0 - d.tail_exponent,
        )?,
        None => zero_result(),
    };
    Ok(QuadratureResult {
        value: discrete + density.value,
        ..density
    })
}

pub fn delta_f_via_sdiv(
    x: &HermitianMatrix,
    y: &HermitianMatrix,
    rep: &RepresentationI,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    Ok(delta_f_via_sdiv_detailed(x, y, rep, cfg)?.value)
}

/// `Δ_f(X,Y)` for a convex `f` given by [`RepresentationII`].
pub fn delta_f_convex_via_sdiv_detailed(
    x: &HermitianMatrix,
    y: &HermitianMatrix,
    rep: &RepresentationII,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult> {
    let kernel = ShiftedSdivKernel::new(x, y)?;
    let m = &rep.0;
    let discrete = m.c * kernel.eval(0.0)
        + m.atoms
            .iter()
            .map(|&(t, w)| w * kernel.eval_inverse(t))
            .sum::<f64>();
    let density = match &m.density {
        // δ_S²(I+tX, I+tY) = O(t²) at 0 and tends to δ_S²(X,Y) at ∞.
        Some(d) => quad_improper_with_tail(
            |t| d.weight(t) * kernel.eval_inverse(t),
            cfg,
            d.origin_exponent + 2.0,
            -d.tail_exponent,
        )?,
        None => zero_result(),
    };
    Ok(QuadratureResult {
        value: discrete + density.value,
        ..density
    })
}

pub fn delta_f_convex_via_sdiv(
    x: &HermitianMatrix,
    y: &HermitianMatrix,
    rep: &RepresentationII,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    Ok(delta_f_convex_via_sdiv_detailed(x, y, rep, cfg)?.value)
}

fn zero_result() -> QuadratureResult {
    QuadratureResult {
        value: 0.0,
        error_estimate: 0.0,
        subdivisions: 0,
        evaluations: 0,
    }
}
