//! Adaptive 15-point Gauss–Kronrod quadrature, including integrals over `[0, ∞)`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::Serialize;

use crate::error::{Error, Result};

// Kronrod abscissae on [-1, 1], largest first; odd indices are the 7-point Gauss nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for XGK[1], XGK[3], XGK[5] and the centre.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Error estimates below `ROUNDOFF_FLOOR · ∫|f|` are accepted: they cannot be
/// resolved in double precision.
const ROUNDOFF_FLOOR: f64 = 100.0 * f64::EPSILON;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    /// Where `[0, ∞)` is split into a finite and an infinite piece.
    pub split_point: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            max_subdivisions: 2000,
            split_point: 1.0,
        }
    }
}

impl QuadratureConfig {
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-2) {
            return Err(Error::Parameter(format!(
                "quadrature relative tolerance must lie in (0, 1e-2], got {}",
                self.rel_tol
            )));
        }
        if self.max_subdivisions < 10 {
            return Err(Error::Parameter(format!(
                "need at least 10 subdivisions, got {}",
                self.max_subdivisions
            )));
        }
        if !(self.split_point > 0.0 && self.split_point.is_finite()) {
            return Err(Error::Parameter(format!(
                "split point must be positive and finite, got {}",
                self.split_point
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    /// Number of bisections performed.
    pub subdivisions: usize,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    piece: usize,
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    abs_value: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut err = err.abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    err
}

fn gk15(f: &dyn Fn(f64) -> f64, piece: usize, a: f64, b: f64) -> Result<Segment> {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let eval = |x: f64| -> Result<f64> {
        let v = f(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Domain(format!(
                "integrand is not finite ({v}) at node {x:e}"
            )))
        }
    };

    let fc = eval(centre)?;
    let mut res_k = WGK[7] * fc;
    let mut res_g = WG[3] * fc;
    let mut res_abs = res_k.abs();
    let mut pairs = [(0.0, 0.0); 7];
    for (j, pair) in pairs.iter_mut().enumerate() {
        let dx = half * XGK[j];
        let (f1, f2) = (eval(centre - dx)?, eval(centre + dx)?);
        *pair = (f1, f2);
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for (j, (f1, f2)) in pairs.iter().enumerate() {
        res_asc += WGK[j] * ((f1 - mean).abs() + (f2 - mean).abs());
    }
    let scale = half.abs();
    let (res_abs, res_asc) = (res_abs * scale, res_asc * scale);
    Ok(Segment {
        piece,
        a,
        b,
        value: res_k * half,
        error: rescale_error((res_k - res_g) * half, res_abs, res_asc),
        abs_value: res_abs,
    })
}

/// An integrand together with its interval.
type Piece<'a> = (&'a dyn Fn(f64) -> f64, f64, f64);

/// Globally adaptive integration of several integrands, each over its own interval,
/// sharing one subdivision budget; returns the sum of the integrals.
fn integrate_pieces(
    pieces: &[Piece<'_>],
    rel_tol: f64,
    max_subdivisions: usize,
) -> Result<QuadratureResult> {
    let mut heap = BinaryHeap::new();
    for (i, &(f, a, b)) in pieces.iter().enumerate() {
        heap.push(gk15(f, i, a, b)?);
    }
    let mut subdivisions = 0;
    loop {
        let (value, error, abs_value) = heap.iter().fold((0.0, 0.0, 0.0), |acc, s| {
            (acc.0 + s.value, acc.1 + s.error, acc.2 + s.abs_value)
        });
        let tolerance = (rel_tol * value.abs()).max(ROUNDOFF_FLOOR * abs_value);
        let evaluations = 15 * (pieces.len() + 2 * subdivisions);
        if error <= tolerance {
            return Ok(QuadratureResult {
                value,
                error_estimate: error,
                subdivisions,
                evaluations,
            });
        }
        let worst = heap.pop().expect("at least one segment");
        let mid = 0.5 * (worst.a + worst.b);
        if subdivisions >= max_subdivisions || !(worst.a < mid && mid < worst.b) {
            return Err(Error::Quadrature {
                estimate: value,
                error,
                subdivisions,
            });
        }
        let f = pieces[worst.piece].0;
        heap.push(gk15(f, worst.piece, worst.a, mid)?);
        heap.push(gk15(f, worst.piece, mid, worst.b)?);
        subdivisions += 1;
    }
}

/// Adaptive integration of `f` over the finite interval `[a, b]`.
pub fn quad_interval(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult> {
    cfg.validate()?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Parameter(format!(
            "interval [{a}, {b}] must be finite"
        )));
    }
    integrate_pieces(&[(&f, a, b)], cfg.rel_tol, cfg.max_subdivisions)
}

/// `∫₀^∞ f(t) dt` for an integrand behaving like `t^σ` near zero
/// (`σ = singularity_exponent > -1`) and decaying at least like `t^{-2}`.
///
/// See [`quad_improper_with_tail`] for slower tails.
pub fn quad_improper(
    f: impl Fn(f64) -> f64,
    cfg: &QuadratureConfig,
    singularity_exponent: f64,
) -> Result<QuadratureResult> {
    quad_improper_with_tail(f, cfg, singularity_exponent, 2.0)
}

/// `∫₀^∞ f(t) dt` where `f(t) ~ t^σ` as `t → 0⁺` and `f(t) ~ t^{-p}` as `t → ∞`.
///
/// With `s` the split point, `[0, s]` is mapped through `t = s·v^{1/(1+σ)}` and
/// `[s, ∞)` through `t = s·u^{-1/(p-1)}`, so both pieces become bounded and
/// smooth at their former endpoints. For `p = 2` the tail map is `t = s/u`.
pub fn quad_improper_with_tail(
    f: impl Fn(f64) -> f64,
    cfg: &QuadratureConfig,
    singularity_exponent: f64,
    tail_decay: f64,
) -> Result<QuadratureResult> {
    cfg.validate()?;
    if !(singularity_exponent > -1.0 && singularity_exponent.is_finite()) {
        return Err(Error::Parameter(format!(
            "singularity exponent must exceed -1, got {singularity_exponent}"
        )));
    }
    if !(tail_decay > 1.0 && tail_decay.is_finite()) {
        return Err(Error::Parameter(format!(
            "tail decay exponent must exceed 1, got {tail_decay}"
        )));
    }
    let s = cfg.split_point;
    let k = 1.0 / (1.0 + singularity_exponent);
    let m = 1.0 / (tail_decay - 1.0);

    let head = |v: f64| {
        if v <= 0.0 {
            return 0.0;
        }
        let t = s * v.powf(k);
        // dt = k·t/v dv
        let g = f(t);
        if g == 0.0 {
            0.0
        } else {
            g * k * (t / v)
        }
    };
    let tail = |u: f64| {
        if u <= 0.0 {
            return 0.0;
        }
        let t = s * u.powf(-m);
        if !t.is_finite() {
            return 0.0;
        }
        // |dt| = m·t/u du
        let g = f(t);
        if g == 0.0 {
            0.0
        } else {
            g * m * (t / u)
        }
    };
    integrate_pieces(
        &[(&head, 0.0, 1.0), (&tail, 0.0, 1.0)],
        cfg.rel_tol,
        cfg.max_subdivisions,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn finite_interval_polynomials_are_exact() {
        let r = quad_interval(|x| x.powi(5) - 3.0 * x * x, -1.0, 2.0, &cfg()).unwrap();
        assert_relative_eq!(r.value, 64.0 / 6.0 - 1.0 / 6.0 - 9.0, max_relative = 1e-14);
        assert_eq!(r.subdivisions, 0);
    }

    #[test]
    fn improper_examples() {
        let r = quad_improper(|t| (-t).exp(), &cfg(), 0.0).unwrap();
        assert_relative_eq!(r.value, 1.0, max_relative = 1e-8);
        assert!(r.error_estimate <= 1e-8 * r.value.abs());

        let r = quad_improper(|t| (-t).exp() / t.sqrt(), &cfg(), -0.5).unwrap();
        assert_relative_eq!(r.value, PI.sqrt(), max_relative = 1e-8);
        assert!((r.value - 1.772454).abs() < 1e-6);

        let r = quad_improper(|t| 1.0 / (1.0 + t * t), &cfg(), 0.0).unwrap();
        assert_relative_eq!(r.value, PI / 2.0, max_relative = 1e-8);
    }

    #[test]
    fn slow_tails_need_the_decay_exponent() {
        // ∫ t^{-1/2}/(1+t) = π
        let f = |t: f64| 1.0 / (t.sqrt() * (1.0 + t));
        let r = quad_improper_with_tail(f, &cfg(), -0.5, 1.5).unwrap();
        assert_relative_eq!(r.value, PI, max_relative = 1e-8);
    }

    #[test]
    fn strong_endpoint_singularity() {
        // ∫ t^{-0.9} e^{-t} = Γ(0.1)
        let gamma_tenth = 9.513_507_698_668_732;
        let r = quad_improper(|t| t.powf(-0.9) * (-t).exp(), &cfg(), -0.9).unwrap();
        assert_relative_eq!(r.value, gamma_tenth, max_relative = 1e-8);
    }

    #[test]
    fn zero_integrand() {
        let r = quad_improper(|_| 0.0, &cfg(), 0.0).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.error_estimate, 0.0);
    }

    #[test]
    fn cancelling_integrand_uses_roundoff_floor() {
        // ∫ (1 - t)/((1 + t)(1 + t²)) dt = 0
        let r = quad_improper(|t| (1.0 - t) / ((1.0 + t) * (1.0 + t * t)), &cfg(), 0.0).unwrap();
        assert!(r.value.abs() < 1e-14);
    }

    #[test]
    fn budget_exhaustion_reports_best_estimate() {
        let tight = QuadratureConfig {
            rel_tol: 1e-12,
            max_subdivisions: 10,
            split_point: 1.0,
        };
        let err = quad_improper(|t| (t.ln()).abs().sqrt() * (-t).exp(), &tight, 0.0).unwrap_err();
        match err {
            Error::Quadrature {
                estimate,
                subdivisions,
                ..
            } => {
                assert!(estimate.is_finite());
                assert_eq!(subdivisions, 10);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(err.is_numerical());
    }

    #[test]
    fn config_and_parameter_validation() {
        let bad = QuadratureConfig::default().with_rel_tol(0.1);
        assert!(matches!(
            quad_improper(|t| t, &bad, 0.0),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            quad_improper(|t| t, &cfg(), -1.0),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            quad_improper_with_tail(|t| t, &cfg(), 0.0, 1.0),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            quad_improper(|_| f64::NAN, &cfg(), 0.0),
            Err(Error::Domain(_))
        ));
    }
}
